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

#ifndef BIOANN_REMOTE_TAGGER_H_
#define BIOANN_REMOTE_TAGGER_H_

#include <string>

#include "bioann/tagger.h"

namespace bioann {

// Tagger backend speaking the JSON tag protocol over HTTP. Each call opens
// its own connection, so concurrent tag() calls are safe.
class RemoteTagger final : public TaggerBackend {
 public:
  explicit RemoteTagger(std::string base_url, int timeout_ms = 10000);

  std::string_view kind() const override { return "remote"; }
  bool healthy() const override;

 protected:
  // Throws BackendUnavailable on connection failure or 503,
  // ProtocolViolation on any other malformed reply.
  HeadMap do_tag(std::span<const TokenSpan> tokens,
                 const EntityTypeSet& types) const override;

 private:
  std::string base_url_;
  int timeout_ms_;
};

}  // namespace bioann

#endif  // BIOANN_REMOTE_TAGGER_H_
