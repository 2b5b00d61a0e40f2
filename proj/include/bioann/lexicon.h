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

#ifndef BIOANN_LEXICON_H_
#define BIOANN_LEXICON_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bioann/types.h"

namespace bioann {

// Name -> CUI dictionary for one entity type. Names are keyed by their
// lowercased form; each CUI has a canonical display name.
class Lexicon {
 public:
  explicit Lexicon(EntityType etype = EntityType::kGene) : etype_(etype) {}

  // Lines "<cui>\t<name>\t<0|1>"; a 1 marks the canonical name of the CUI.
  // Throws LexiconFormatError naming the source and line.
  static Lexicon load(std::istream& in, EntityType etype,
                      const std::string& source = "<stream>");
  static Lexicon load_file(const std::string& path, EntityType etype);

  void add(std::string_view cui, std::string_view name, bool canonical);
  void merge(const Lexicon& other);

  EntityType etype() const { return etype_; }
  bool empty() const { return entries_.empty(); }
  std::size_t pair_count() const;

  const std::vector<std::string>* lookup(std::string_view key) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }
  const std::map<std::string, std::string>& canonical() const { return canonical_; }

  // Every (name key, CUI) pair, sorted.
  std::vector<std::pair<std::string, std::string>> pairs() const;

 private:
  EntityType etype_;
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
  std::map<std::string, std::string> canonical_;
  std::set<std::string> explicit_canonical_;
};

// Lookup keys for a mention, most specific first, deduplicated. Each stage
// builds on the previous one: lowercase; strip outer punctuation; collapse
// whitespace and hyphen runs to one space; drop a plural "s" from a last
// word longer than three; spell out Greek letters. Throws InvalidInput on
// an empty name.
std::vector<std::string> normalize_keys(std::string_view name);

struct RuleMatch {
  std::vector<std::string> cuis;
  std::string key;
};

// CUIs of the first cascade key present in the lexicon.
std::optional<RuleMatch> rule_normalize(std::string_view mention,
                                        const Lexicon& lexicon);

}  // namespace bioann

#endif  // BIOANN_LEXICON_H_
