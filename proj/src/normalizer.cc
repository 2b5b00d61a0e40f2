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

#include "bioann/normalizer.h"

#include "bioann/error.h"

namespace bioann {

Normalization hybrid_normalize(std::string_view mention, EntityType etype,
                               const Lexicon* lexicon, const EmbeddingIndex* index,
                               const Encoder* encoder, double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw InvalidInput("threshold must lie in [-1, 1]");
  }
  if (lexicon != nullptr) {
    if (auto hit = rule_normalize(mention, *lexicon)) {
      return Normalization::rule(std::move(hit->cuis));
    }
  }
  if (has_neural_path(etype) && index != nullptr && encoder != nullptr &&
      !mention.empty()) {
    const auto top = dense_retrieve(mention, *index, *encoder, 1);
    if (!top.empty() && top.front().score >= threshold) {
      return Normalization::neural(top.front().cui, top.front().score);
    }
  }
  return Normalization::unmapped();
}

}  // namespace bioann
