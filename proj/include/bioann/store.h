// Copyright 2026 The bioann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// PMID-keyed annotation cache backed by an append-only log.
//
// File layout:
//
//   "BANN1"
//   repeated: u32 LE payload length | u32 LE CRC-32 of payload | payload
//
// where payload is the compact JSON of a CacheRecord. An in-memory
// pmid -> offset index is rebuilt at open. Records failing their checksum
// are skipped with a warning; a torn tail is cut off.

#ifndef BIOANN_STORE_H_
#define BIOANN_STORE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace bioann {

struct CacheRecord {
  std::string pmid;
  std::string payload;  // canonical AnnotationResult JSON, no elapsed_ms
  std::string pipeline_version;
  std::string stored_at;  // UTC, ISO 8601

  bool operator==(const CacheRecord&) const = default;
};

std::string record_to_json(const CacheRecord& record);
// Throws InvalidInput.
CacheRecord record_from_json(std::string_view json);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct StoreOptions {
  bool sync = true;              // fdatasync before put() returns
  bool validate_payload = true;  // reject payloads that are not valid results
};

struct CompactStats {
  std::size_t records_kept = 0;
  std::uint64_t bytes_reclaimed = 0;
};

class AnnotationStore {
 public:
  // Opens or creates the log. Throws StoreCorrupt on a foreign file and
  // IoFailure when the file cannot be opened.
  explicit AnnotationStore(std::filesystem::path path, StoreOptions options = {});
  ~AnnotationStore();

  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  std::optional<CacheRecord> get(std::string_view pmid) const;

  // Durable when it returns (with options.sync). Throws InvalidInput for a
  // bad record, IoFailure on write errors.
  void put(const CacheRecord& record);

  // Rewrites the log keeping only the latest record per PMID. The new log
  // is written beside the old one and renamed over it; `before_rename` runs
  // in between, and if anything throws the original log is left untouched.
  CompactStats compact(
      const std::function<void(const std::filesystem::path&)>& before_rename = {});

  std::size_t size() const;
  std::uint64_t file_size() const;
  std::vector<std::string> warnings() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  struct Slot {
    std::uint64_t offset;  // start of the record header
    std::uint32_t length;  // payload bytes
  };

  void open_and_scan();
  std::string read_payload(const Slot& slot) const;

  std::filesystem::path path_;
  StoreOptions options_;
  int fd_ = -1;
  std::uint64_t end_ = 0;
  std::map<std::string, Slot, std::less<>> index_;
  std::vector<std::string> warnings_;
  mutable std::shared_mutex mu_;
};

}  // namespace bioann

#endif  // BIOANN_STORE_H_
