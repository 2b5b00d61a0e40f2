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

// HTTP clients for the remote tagger and encoder protocols.

// Eigen before httplib: <resolv.h> defines a `_res` macro that collides
// with Eigen's product kernels.
#include "bioann/encoder.h"
#include "bioann/error.h"
#include "bioann/protocol.h"
#include "bioann/remote_tagger.h"

#include <httplib.h>

namespace bioann {
namespace {

nlohmann::json post_json(const std::string& base_url, const char* endpoint,
                         const nlohmann::json& body, int timeout_ms) {
  const auto url = protocol::split_url(base_url);
  httplib::Client client(url.origin);
  const auto timeout = std::chrono::milliseconds(timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto res = client.Post(url.path + endpoint, body.dump(), "application/json");
  if (!res) {
    throw BackendUnavailable(base_url + endpoint + ": " +
                             httplib::to_string(res.error()));
  }
  if (res->status == 503) throw BackendUnavailable(base_url + endpoint + ": 503");
  if (res->status != 200) {
    throw ProtocolViolation(base_url + endpoint + ": HTTP " +
                            std::to_string(res->status));
  }
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw ProtocolViolation("reply is not JSON");
  return parsed;
}

}  // namespace

RemoteTagger::RemoteTagger(std::string base_url, int timeout_ms)
    : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {
  protocol::split_url(base_url_);
}

HeadMap RemoteTagger::do_tag(std::span<const TokenSpan> tokens,
                             const EntityTypeSet& types) const {
  const auto reply = post_json(base_url_, protocol::kTagPath,
                               protocol::tag_request(tokens, types), timeout_ms_);
  return protocol::parse_tag_response(reply, tokens.size(), types);
}

bool RemoteTagger::healthy() const {
  try {
    do_tag({}, {EntityType::kGene});
    return true;
  } catch (const Error&) {
    return false;
  }
}

RemoteEncoder::RemoteEncoder(std::string base_url, Eigen::Index dim, int timeout_ms)
    : base_url_(std::move(base_url)), dim_(dim), timeout_ms_(timeout_ms) {
  protocol::split_url(base_url_);
  if (dim_ <= 0) throw ConfigError("encoder dimension must be positive");
}

Eigen::VectorXd RemoteEncoder::do_embed(std::string_view name) const {
  const std::string n(name);
  return do_embed_batch(std::span<const std::string>(&n, 1)).row(0).transpose();
}

Eigen::MatrixXd RemoteEncoder::do_embed_batch(std::span<const std::string> names) const {
  const auto reply = post_json(base_url_, protocol::kEmbedPath,
                               protocol::embed_request(names), timeout_ms_);
  Eigen::MatrixXd vectors = protocol::parse_embed_response(reply, names.size(), dim_);
  for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
    const double norm = vectors.row(r).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ProtocolViolation("embed vector " + std::to_string(r) + " has zero norm");
    }
    vectors.row(r) /= norm;
  }
  return vectors;
}

}  // namespace bioann
