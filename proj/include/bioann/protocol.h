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

// Wire protocols for remote model backends.
//
//   tagger   POST {base}/tag    {"tokens": [str...], "types": [str...]}
//                            -> {"heads": {"<type>": [[pB, pI, pO], ...]}}
//   encoder  POST {base}/embed  {"names": [str...]}
//                            -> {"vectors": [[x...], ...]}

#ifndef BIOANN_PROTOCOL_H_
#define BIOANN_PROTOCOL_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "bioann/tagger.h"

namespace bioann::protocol {

inline constexpr const char* kTagPath = "/tag";
inline constexpr const char* kEmbedPath = "/embed";

nlohmann::json tag_request(std::span<const TokenSpan> tokens,
                           const EntityTypeSet& types);
nlohmann::json tag_request(std::span<const std::string> tokens,
                           const EntityTypeSet& types);
nlohmann::json tag_response(const HeadMap& heads);

// Throws ProtocolViolation when a requested head is missing, a row count
// differs from `n_tokens`, or a row is not a 3-element probability vector.
HeadMap parse_tag_response(const nlohmann::json& body, std::size_t n_tokens,
                           const EntityTypeSet& types);

// Request fields as (tokens, types); throws ProtocolViolation.
std::pair<std::vector<std::string>, EntityTypeSet> parse_tag_request(
    const nlohmann::json& body);

nlohmann::json embed_request(std::span<const std::string> names);
nlohmann::json embed_response(const Eigen::MatrixXd& vectors);

// Throws ProtocolViolation on count or dimension mismatch.
Eigen::MatrixXd parse_embed_response(const nlohmann::json& body,
                                     std::size_t n_names, Eigen::Index dim);
std::vector<std::string> parse_embed_request(const nlohmann::json& body);

// "http://host:port/prefix" -> ("http://host:port", "/prefix").
struct UrlParts {
  std::string origin;
  std::string path;
};
UrlParts split_url(const std::string& url);

}  // namespace bioann::protocol

#endif  // BIOANN_PROTOCOL_H_
