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

// Domain values shared across the annotation pipeline. Text is stored as
// UTF-8; every begin/end offset counts Unicode scalar values from the start
// of the document text.

#ifndef BIOANN_TYPES_H_
#define BIOANN_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bioann {

// Declaration order doubles as the cross-type priority order used when
// resolving overlapping mentions (Gene highest).
enum class EntityType : std::uint8_t {
  kGene,
  kDisease,
  kDrug,
  kSpecies,
  kMutation,
  kCellLine,
  kCellType,
  kDna,
  kRna,
};

inline constexpr std::array<EntityType, 9> kAllEntityTypes = {
    EntityType::kGene,     EntityType::kDisease,  EntityType::kDrug,
    EntityType::kSpecies,  EntityType::kMutation, EntityType::kCellLine,
    EntityType::kCellType, EntityType::kDna,      EntityType::kRna,
};

using EntityTypeSet = std::set<EntityType>;

// Stable wire names: "gene", "disease", "drug", "species", "mutation",
// "cell_line", "cell_type", "DNA", "RNA".
std::string_view to_string(EntityType type);
std::optional<EntityType> parse_entity_type(std::string_view name);
EntityType entity_type_from_string(std::string_view name);  // throws

inline int priority_rank(EntityType type) { return static_cast<int>(type); }

struct Document {
  std::optional<std::string> doc_id;
  std::string text;

  bool operator==(const Document&) const = default;
};

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;

  bool operator==(const TokenSpan&) const = default;
};

struct Mention {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
  EntityType etype = EntityType::kGene;
  double prob = 0.0;

  bool operator==(const Mention&) const = default;
};

enum class NormSource : std::uint8_t { kRule, kNeural, kUnmapped };

std::string_view to_string(NormSource source);
std::optional<NormSource> parse_norm_source(std::string_view name);

struct Normalization {
  std::vector<std::string> ids;
  NormSource source = NormSource::kUnmapped;
  std::optional<double> score;

  static Normalization unmapped() { return {}; }
  static Normalization rule(std::vector<std::string> ids) {
    return {std::move(ids), NormSource::kRule, std::nullopt};
  }
  static Normalization neural(std::string cui, double score) {
    return {{std::move(cui)}, NormSource::kNeural, score};
  }

  bool operator==(const Normalization&) const = default;
};

struct Annotation {
  Mention mention;
  Normalization norm;

  bool operator==(const Annotation&) const = default;
};

struct AnnotationResult {
  Document doc;
  std::vector<Annotation> annotations;
  double elapsed_ms = 0.0;
  std::string pipeline_version;
};

// `<namespace>:<identifier>`, both parts nonempty.
bool is_valid_cui(std::string_view cui);
// Nonempty string of ASCII digits.
bool is_pmid(std::string_view s);

// Sort key: (begin, end, serialized entity type name).
bool annotation_less(const Mention& a, const Mention& b);
void sort_annotations(std::vector<Annotation>& annotations);
void sort_mentions(std::vector<Mention>& mentions);

// Every broken invariant of `result`, one entry per violation. Each entry
// names the offending field and, for annotations, its index.
std::vector<std::string> validate_result(const AnnotationResult& result);

}  // namespace bioann

#endif  // BIOANN_TYPES_H_
