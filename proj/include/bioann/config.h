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

// Pipeline configuration and its JSON file form.
//
// {
//   "pipeline_version": "bioann-0.1.0",
//   "overlap_policy": "keep_all" | "longest_wins",
//   "max_len": 256,
//   "max_chars": 100000,
//   "enabled_types": ["gene", "disease", ...],
//   "thresholds": {"default": 0.6, "drug": 0.55},
//   "backend": {"kind": "gazetteer", "gazetteers": [...], "from_lexicons": true}
//            | {"kind": "remote", "url": "...", "timeout_ms": 10000},
//   "encoder": {"kind": "mock", "dim": 256}
//            | {"kind": "remote", "url": "...", "dim": 768, "timeout_ms": 10000},
//   "lexicons": {"gene": "lexicons/gene.tsv" | [...], ...},
//   "indexes": {"drug": "drug.bidx", ...},
//   "abbreviations": "abbreviations.txt",
//   "store": "cache.bann",
//   "fetcher": {"base_url", "mode", "timeout_ms", "retries",
//               "max_connections", "backoff_ms", "api_key"}
// }
//
// Every key is optional. Relative paths resolve against the file's directory.

#ifndef BIOANN_CONFIG_H_
#define BIOANN_CONFIG_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bioann/ingest.h"
#include "bioann/tagger.h"
#include "bioann/types.h"

namespace bioann {

inline constexpr const char* kDefaultPipelineVersion = "bioann-0.1.0";
inline constexpr std::size_t kDefaultMaxChars = 100000;

enum class BackendKind : std::uint8_t { kGazetteer, kRemote };
enum class EncoderKind : std::uint8_t { kMock, kRemote };

std::string_view to_string(BackendKind kind);
std::string_view to_string(EncoderKind kind);

struct PipelineConfig {
  OverlapPolicy overlap_policy = OverlapPolicy::kKeepAll;
  double default_threshold = 0.6;
  std::map<EntityType, double> thresholds;
  std::size_t max_len = 256;
  std::size_t max_chars = kDefaultMaxChars;
  EntityTypeSet enabled_types{kAllEntityTypes.begin(), kAllEntityTypes.end()};
  std::string pipeline_version = kDefaultPipelineVersion;

  BackendKind backend = BackendKind::kGazetteer;
  std::vector<std::string> gazetteer_paths;
  bool gazetteer_from_lexicons = true;
  std::string remote_url;
  int remote_timeout_ms = 10000;

  EncoderKind encoder = EncoderKind::kMock;
  std::string encoder_url;
  int encoder_dim = 256;
  int encoder_timeout_ms = 10000;

  std::map<EntityType, std::vector<std::string>> lexicon_paths;
  std::map<EntityType, std::string> index_paths;
  std::string abbreviations_path;
  std::string store_path;
  FetcherConfig fetcher;

  double threshold_for(EntityType type) const;
  // Throws ConfigError.
  void validate() const;
};

// Throws ConfigError on unknown keys, wrong types or invalid values.
PipelineConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = "");
PipelineConfig load_config(const std::string& path);

}  // namespace bioann

#endif  // BIOANN_CONFIG_H_
