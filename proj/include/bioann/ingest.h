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

// Abstract fetching by PMID.
//
// Two upstream shapes are understood:
//   EfetchXml  GET {base}?db=pubmed&id={pmid}&rettype=abstract&retmode=xml
//   StubJson   GET {base}/{pmid}  ->  {"pmid", "title", "abstract"}
// Either way the document text is title + " " + abstract.

#ifndef BIOANN_INGEST_H_
#define BIOANN_INGEST_H_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>

#include "bioann/types.h"

namespace bioann {

enum class FetchMode : std::uint8_t { kEfetchXml, kStubJson };

std::string_view to_string(FetchMode mode);
FetchMode fetch_mode_from_string(std::string_view name);  // throws ConfigError

inline constexpr const char* kFetchUrlEnv = "BIOANN_FETCH_URL";

struct FetcherConfig {
  std::string base_url = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi";
  int timeout_ms = 10000;
  int retries = 2;
  FetchMode mode = FetchMode::kEfetchXml;
  int max_connections = 4;
  int backoff_ms = 100;
  std::string api_key;  // appended as &api_key= when set

  // Throws ConfigError.
  void validate() const;
};

// Replaces base_url with $BIOANN_FETCH_URL when that is set and nonempty.
FetcherConfig with_env_override(FetcherConfig config);

// Delay before retry number `attempt` (0-based): base * 2^attempt, scaled by
// a jitter factor in [0.75, 1.25) chosen by u in [0, 1).
std::chrono::milliseconds backoff_delay(int attempt, int base_ms, double u);

// Parses an efetch PubmedArticleSet. Throws PmidNotFound on an empty set,
// MalformedResponse on truncated or unexpected XML.
Document parse_efetch_xml(std::string_view body, const std::string& pmid);
// Throws MalformedResponse.
Document parse_stub_json(std::string_view body, const std::string& pmid);

// Text with XML entities decoded and child tags dropped; whitespace runs
// collapse to one space.
std::string xml_inner_text(std::string_view fragment);

class AbstractFetcher {
 public:
  virtual ~AbstractFetcher() = default;
  // Throws InvalidInput for a non-digit pmid, PmidNotFound, FetchFailed or
  // MalformedResponse.
  virtual Document fetch(const std::string& pmid) const = 0;
};

class HttpFetcher final : public AbstractFetcher {
 public:
  explicit HttpFetcher(FetcherConfig config);

  Document fetch(const std::string& pmid) const override;

  const FetcherConfig& config() const { return config_; }
  // HTTP attempts made so far, retries included.
  std::size_t attempts() const { return attempts_.load(); }

 private:
  FetcherConfig config_;
  mutable std::counting_semaphore<64> slots_;
  mutable std::atomic<std::size_t> attempts_{0};
};

// Serves documents from memory; handy for benchmarks and tests.
class InMemoryFetcher final : public AbstractFetcher {
 public:
  void add(const std::string& pmid, std::string title, std::string abstract_text);
  Document fetch(const std::string& pmid) const override;
  std::size_t size() const { return docs_.size(); }

 private:
  std::map<std::string, std::string> docs_;
};

}  // namespace bioann

#endif  // BIOANN_INGEST_H_
