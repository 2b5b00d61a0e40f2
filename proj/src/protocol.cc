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

#include "bioann/protocol.h"

#include "bioann/error.h"

namespace bioann::protocol {

using nlohmann::json;

namespace {

json type_list(const EntityTypeSet& types) {
  json out = json::array();
  for (EntityType t : types) out.push_back(std::string(to_string(t)));
  return out;
}

}  // namespace

json tag_request(std::span<const TokenSpan> tokens, const EntityTypeSet& types) {
  json toks = json::array();
  for (const auto& t : tokens) toks.push_back(t.surface);
  return {{"tokens", std::move(toks)}, {"types", type_list(types)}};
}

json tag_request(std::span<const std::string> tokens, const EntityTypeSet& types) {
  return {{"tokens", json(std::vector<std::string>(tokens.begin(), tokens.end()))},
          {"types", type_list(types)}};
}

json tag_response(const HeadMap& heads) {
  json out = json::object();
  for (const auto& [type, seq] : heads) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < seq.rows.rows(); ++r) {
      rows.push_back({seq.rows(r, 0), seq.rows(r, 1), seq.rows(r, 2)});
    }
    out[std::string(to_string(type))] = std::move(rows);
  }
  return {{"heads", std::move(out)}};
}

HeadMap parse_tag_response(const json& body, std::size_t n_tokens,
                           const EntityTypeSet& types) {
  if (!body.is_object() || !body.contains("heads") || !body["heads"].is_object()) {
    throw ProtocolViolation("tag reply lacks a 'heads' object");
  }
  const json& heads = body["heads"];
  HeadMap out;
  for (EntityType type : types) {
    const std::string name(to_string(type));
    if (!heads.contains(name)) throw ProtocolViolation("missing head '" + name + "'");
    const json& rows = heads[name];
    if (!rows.is_array() || rows.size() != n_tokens) {
      throw ProtocolViolation("head '" + name + "' row count differs from " +
                              std::to_string(n_tokens) + " tokens");
    }
    TagProbSeq seq{type, TagProbs(static_cast<Eigen::Index>(n_tokens), 3)};
    for (std::size_t r = 0; r < n_tokens; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || row.size() != 3) {
        throw ProtocolViolation("head '" + name + "' row " + std::to_string(r) +
                                " is not [pB, pI, pO]");
      }
      for (int c = 0; c < 3; ++c) {
        if (!row[static_cast<std::size_t>(c)].is_number()) {
          throw ProtocolViolation("head '" + name + "' has a non-numeric entry");
        }
        seq.rows(static_cast<Eigen::Index>(r), c) = row[static_cast<std::size_t>(c)].get<double>();
      }
    }
    if (!is_stochastic(seq.rows)) {
      throw ProtocolViolation("head '" + name + "' rows do not sum to 1");
    }
    out.emplace(type, std::move(seq));
  }
  return out;
}

std::pair<std::vector<std::string>, EntityTypeSet> parse_tag_request(const json& body) {
  if (!body.is_object() || !body.contains("tokens") || !body["tokens"].is_array() ||
      !body.contains("types") || !body["types"].is_array()) {
    throw ProtocolViolation("tag request needs 'tokens' and 'types' arrays");
  }
  std::vector<std::string> tokens;
  for (const auto& t : body["tokens"]) {
    if (!t.is_string()) throw ProtocolViolation("tokens must be strings");
    tokens.push_back(t.get<std::string>());
  }
  EntityTypeSet types;
  for (const auto& t : body["types"]) {
    if (!t.is_string()) throw ProtocolViolation("types must be strings");
    const auto type = parse_entity_type(t.get<std::string>());
    if (!type) throw ProtocolViolation("unknown type '" + t.get<std::string>() + "'");
    types.insert(*type);
  }
  return {std::move(tokens), std::move(types)};
}

json embed_request(std::span<const std::string> names) {
  return {{"names", json(std::vector<std::string>(names.begin(), names.end()))}};
}

json embed_response(const Eigen::MatrixXd& vectors) {
  json out = json::array();
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) row.push_back(vectors(r, c));
    out.push_back(std::move(row));
  }
  return {{"vectors", std::move(out)}};
}

Eigen::MatrixXd parse_embed_response(const json& body, std::size_t n_names,
                                     Eigen::Index dim) {
  if (!body.is_object() || !body.contains("vectors") || !body["vectors"].is_array()) {
    throw ProtocolViolation("embed reply lacks a 'vectors' array");
  }
  const json& vectors = body["vectors"];
  if (vectors.size() != n_names) {
    throw ProtocolViolation("embed reply has " + std::to_string(vectors.size()) +
                            " vectors for " + std::to_string(n_names) + " names");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n_names), dim);
  for (std::size_t r = 0; r < n_names; ++r) {
    const json& v = vectors[r];
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != dim) {
      throw ProtocolViolation("embed vector " + std::to_string(r) +
                              " does not have dimension " + std::to_string(dim));
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& x = v[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ProtocolViolation("embed vector has a non-number");
      out(static_cast<Eigen::Index>(r), c) = x.get<double>();
    }
  }
  return out;
}

std::vector<std::string> parse_embed_request(const json& body) {
  if (!body.is_object() || !body.contains("names") || !body["names"].is_array()) {
    throw ProtocolViolation("embed request needs a 'names' array");
  }
  std::vector<std::string> names;
  for (const auto& n : body["names"]) {
    if (!n.is_string()) throw ProtocolViolation("names must be strings");
    names.push_back(n.get<std::string>());
  }
  return names;
}

UrlParts split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("URL lacks a scheme: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  std::string path = url.substr(slash);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {url.substr(0, slash), path};
}

}  // namespace bioann::protocol
