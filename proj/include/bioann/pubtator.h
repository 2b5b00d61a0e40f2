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

// PubTator interchange format:
//
//   <pmid>|t|<title>
//   <pmid>|a|<abstract>
//   <pmid>\t<begin>\t<end>\t<surface>\t<type>\t<cui[,cui...]>   (zero or more)
//   <blank line>
//
// Offsets are scalar offsets into title + " " + abstract. An unmapped
// mention carries "-" in the CUI field.

#ifndef BIOANN_PUBTATOR_H_
#define BIOANN_PUBTATOR_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bioann/types.h"

namespace bioann {

struct GoldMention {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
  EntityType etype = EntityType::kGene;
  std::vector<std::string> cuis;

  bool operator==(const GoldMention&) const = default;
};

struct GoldDocument {
  std::string doc_id;
  std::string title;
  std::string abstract_text;
  std::vector<GoldMention> gold;

  // title + " " + abstract_text; the offset base for `gold`.
  std::string text() const;

  bool operator==(const GoldDocument&) const = default;
};

// Throws MalformedLine or OffsetMismatch with 1-based line numbers.
std::vector<GoldDocument> parse_pubtator(std::istream& in);
std::vector<GoldDocument> parse_pubtator(std::string_view text);
std::vector<GoldDocument> parse_pubtator_file(const std::string& path);

std::string serialize_pubtator(std::span<const GoldDocument> docs);
void write_pubtator(std::ostream& out, const GoldDocument& doc);

// Accepts the serialized names plus common corpus aliases ("Chemical",
// "CellLine", "DNAMutation", ...).
std::optional<EntityType> parse_pubtator_type(std::string_view name);

}  // namespace bioann

#endif  // BIOANN_PUBTATOR_H_
