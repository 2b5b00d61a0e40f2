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

// Hybrid normalization: the rule cascade answers first, dense retrieval
// handles what it leaves behind for gene, disease and drug mentions.

#ifndef BIOANN_NORMALIZER_H_
#define BIOANN_NORMALIZER_H_

#include <string_view>

#include "bioann/embedding_index.h"
#include "bioann/encoder.h"
#include "bioann/lexicon.h"
#include "bioann/types.h"

namespace bioann {

inline constexpr double kDefaultThreshold = 0.6;

// Types with a dense-retrieval fallback.
constexpr bool has_neural_path(EntityType type) {
  return type == EntityType::kGene || type == EntityType::kDisease ||
         type == EntityType::kDrug;
}

// Any of lexicon, index, encoder may be null to switch that route off; a
// null index gives rule-only normalization. Throws InvalidInput unless
// threshold is in [-1, 1].
Normalization hybrid_normalize(std::string_view mention, EntityType etype,
                               const Lexicon* lexicon, const EmbeddingIndex* index,
                               const Encoder* encoder,
                               double threshold = kDefaultThreshold);

}  // namespace bioann

#endif  // BIOANN_NORMALIZER_H_
