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

#include "bioann/store.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <iostream>

#include <json.hpp>

#include "bioann/error.h"
#include "bioann/result_json.h"
#include "bioann/types.h"

namespace bioann {
namespace {

constexpr char kMagic[] = {'B', 'A', 'N', 'N', '1'};
constexpr std::uint64_t kMagicSize = sizeof(kMagic);
constexpr std::uint64_t kHeaderSize = 8;

std::string errno_text() { return std::strerror(errno); }

void encode_u32(char* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint32_t decode_u32(const char* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  }
  return v;
}

std::uint32_t crc32_of(std::string_view data) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size())));
}

// Reads exactly n bytes at offset; false on a short read.
bool read_at(int fd, char* buf, std::size_t n, std::uint64_t offset) {
  std::size_t done = 0;
  while (done < n) {
    const ssize_t r = ::pread(fd, buf + done, n - done, static_cast<off_t>(offset + done));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    done += static_cast<std::size_t>(r);
  }
  return true;
}

void write_at(int fd, const char* buf, std::size_t n, std::uint64_t offset) {
  std::size_t done = 0;
  while (done < n) {
    const ssize_t w = ::pwrite(fd, buf + done, n - done, static_cast<off_t>(offset + done));
    if (w < 0 && errno == EINTR) continue;
    if (w < 0) throw IoFailure("write failed: " + errno_text());
    done += static_cast<std::size_t>(w);
  }
}

std::string frame(std::string_view payload) {
  std::string out(kHeaderSize + payload.size(), '\0');
  encode_u32(out.data(), static_cast<std::uint32_t>(payload.size()));
  encode_u32(out.data() + 4, crc32_of(payload));
  std::memcpy(out.data() + kHeaderSize, payload.data(), payload.size());
  return out;
}

void sync_dir(const std::filesystem::path& dir) {
  const int dfd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

}  // namespace

std::string record_to_json(const CacheRecord& record) {
  return nlohmann::json{{"pmid", record.pmid},
                        {"payload", record.payload},
                        {"pipeline_version", record.pipeline_version},
                        {"stored_at", record.stored_at}}
      .dump();
}

CacheRecord record_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InvalidInput("record is not a JSON object");
  CacheRecord r;
  for (auto [key, dest] : {std::pair{"pmid", &r.pmid}, std::pair{"payload", &r.payload},
                           std::pair{"pipeline_version", &r.pipeline_version},
                           std::pair{"stored_at", &r.stored_at}}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw InvalidInput(std::string("record field '") + key + "' missing");
    }
    *dest = j[key].get<std::string>();
  }
  return r;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

AnnotationStore::AnnotationStore(std::filesystem::path path, StoreOptions options)
    : path_(std::move(path)), options_(options) {
  open_and_scan();
}

AnnotationStore::~AnnotationStore() {
  if (fd_ >= 0) ::close(fd_);
}

void AnnotationStore::open_and_scan() {
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoFailure("cannot open store " + path_.string() + ": " + errno_text());

  struct stat st {};
  if (::fstat(fd_, &st) != 0) throw IoFailure("cannot stat store: " + errno_text());
  const auto size = static_cast<std::uint64_t>(st.st_size);

  if (size < kMagicSize) {
    char head[kMagicSize] = {};
    if (size > 0 && (!read_at(fd_, head, size, 0) ||
                     std::memcmp(head, kMagic, size) != 0)) {
      throw StoreCorrupt(path_.string() + ": not an annotation store");
    }
    if (size > 0) warnings_.push_back("torn header rewritten");
    if (::ftruncate(fd_, 0) != 0) throw IoFailure("truncate failed: " + errno_text());
    write_at(fd_, kMagic, kMagicSize, 0);
    if (options_.sync) ::fdatasync(fd_);
    end_ = kMagicSize;
    return;
  }

  char head[kMagicSize];
  if (!read_at(fd_, head, kMagicSize, 0) || std::memcmp(head, kMagic, kMagicSize) != 0) {
    throw StoreCorrupt(path_.string() + ": bad magic");
  }

  std::uint64_t offset = kMagicSize;
  std::string payload;
  while (offset < size) {
    char header[kHeaderSize];
    if (size - offset < kHeaderSize || !read_at(fd_, header, kHeaderSize, offset)) break;
    const std::uint32_t length = decode_u32(header);
    const std::uint32_t crc = decode_u32(header + 4);
    if (size - offset - kHeaderSize < length) break;

    payload.resize(length);
    if (!read_at(fd_, payload.data(), length, offset + kHeaderSize)) break;
    const std::uint64_t next = offset + kHeaderSize + length;
    if (crc32_of(payload) != crc) {
      warnings_.push_back("checksum mismatch at offset " + std::to_string(offset) +
                          "; record skipped");
      offset = next;
      continue;
    }
    try {
      const CacheRecord record = record_from_json(payload);
      if (!is_pmid(record.pmid)) throw InvalidInput("bad pmid");
      index_[record.pmid] = Slot{offset, length};
    } catch (const Error& e) {
      warnings_.push_back("unreadable record at offset " + std::to_string(offset) +
                          ": " + e.what());
    }
    offset = next;
  }

  if (offset < size) {
    warnings_.push_back("torn tail of " + std::to_string(size - offset) +
                        " bytes discarded");
    if (::ftruncate(fd_, static_cast<off_t>(offset)) != 0) {
      throw IoFailure("truncate failed: " + errno_text());
    }
    if (options_.sync) ::fdatasync(fd_);
  }
  end_ = offset;
  for (const auto& w : warnings_) std::cerr << "store " << path_.string() << ": " << w << "\n";
}

std::string AnnotationStore::read_payload(const Slot& slot) const {
  char header[kHeaderSize];
  std::string payload(slot.length, '\0');
  if (!read_at(fd_, header, kHeaderSize, slot.offset) ||
      !read_at(fd_, payload.data(), slot.length, slot.offset + kHeaderSize) ||
      decode_u32(header) != slot.length || crc32_of(payload) != decode_u32(header + 4)) {
    throw StoreCorrupt("record at offset " + std::to_string(slot.offset) +
                       " is unreadable");
  }
  return payload;
}

std::optional<CacheRecord> AnnotationStore::get(std::string_view pmid) const {
  std::shared_lock lock(mu_);
  auto it = index_.find(pmid);
  if (it == index_.end()) return std::nullopt;
  try {
    return record_from_json(read_payload(it->second));
  } catch (const InvalidInput& e) {
    throw StoreCorrupt(e.what());
  }
}

void AnnotationStore::put(const CacheRecord& record) {
  if (!is_pmid(record.pmid)) throw InvalidInput("invalid pmid '" + record.pmid + "'");
  if (record.pipeline_version.empty()) throw InvalidInput("empty pipeline_version");
  if (options_.validate_payload) {
    const auto result = parse_payload(record.payload);
    const auto violations = validate_result(result);
    if (!violations.empty()) {
      throw InvalidInput("payload violates result invariants: " + violations.front());
    }
  }

  const std::string bytes = frame(record_to_json(record));
  std::unique_lock lock(mu_);
  try {
    write_at(fd_, bytes.data(), bytes.size(), end_);
    if (options_.sync && ::fdatasync(fd_) != 0) {
      throw IoFailure("fdatasync failed: " + errno_text());
    }
  } catch (...) {
    [[maybe_unused]] int rc = ::ftruncate(fd_, static_cast<off_t>(end_));
    throw;
  }
  index_[record.pmid] =
      Slot{end_, static_cast<std::uint32_t>(bytes.size() - kHeaderSize)};
  end_ += bytes.size();
}

CompactStats AnnotationStore::compact(
    const std::function<void(const std::filesystem::path&)>& before_rename) {
  std::unique_lock lock(mu_);
  const std::filesystem::path tmp = path_.string() + ".compact";

  std::vector<std::pair<std::string, Slot>> live(index_.begin(), index_.end());
  std::sort(live.begin(), live.end(),
            [](const auto& a, const auto& b) { return a.second.offset < b.second.offset; });

  const int out = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (out < 0) throw IoFailure("cannot create " + tmp.string() + ": " + errno_text());

  std::map<std::string, Slot, std::less<>> fresh;
  std::uint64_t written = 0;
  try {
    write_at(out, kMagic, kMagicSize, 0);
    written = kMagicSize;
    for (const auto& [pmid, slot] : live) {
      const std::string bytes = frame(read_payload(slot));
      write_at(out, bytes.data(), bytes.size(), written);
      fresh[pmid] = Slot{written, slot.length};
      written += bytes.size();
    }
    if (::fsync(out) != 0) throw IoFailure("fsync failed: " + errno_text());
    ::close(out);
    if (before_rename) before_rename(tmp);
    if (::rename(tmp.c_str(), path_.c_str()) != 0) {
      throw IoFailure("rename failed: " + errno_text());
    }
  } catch (...) {
    ::close(out);  // harmless if already closed
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
  sync_dir(path_.parent_path());

  const std::uint64_t before = end_;
  ::close(fd_);
  fd_ = ::open(path_.c_str(), O_RDWR | O_CLOEXEC);
  if (fd_ < 0) throw IoFailure("cannot reopen store: " + errno_text());
  index_ = std::move(fresh);
  end_ = written;
  return CompactStats{index_.size(), before - written};
}

std::size_t AnnotationStore::size() const {
  std::shared_lock lock(mu_);
  return index_.size();
}

std::uint64_t AnnotationStore::file_size() const {
  std::shared_lock lock(mu_);
  return end_;
}

std::vector<std::string> AnnotationStore::warnings() const {
  std::shared_lock lock(mu_);
  return warnings_;
}

}  // namespace bioann
