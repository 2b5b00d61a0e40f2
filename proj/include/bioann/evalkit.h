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

// Entity-level NER precision/recall/F1 (exact span match) and top-1 NEN
// accuracy.

#ifndef BIOANN_EVALKIT_H_
#define BIOANN_EVALKIT_H_

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bioann/pubtator.h"
#include "bioann/types.h"

namespace bioann {

struct SpanKey {
  std::string doc_id;
  std::size_t begin = 0;
  std::size_t end = 0;
  EntityType etype = EntityType::kGene;

  auto operator<=>(const SpanKey&) const = default;
  bool operator==(const SpanKey&) const = default;
};

struct PrfCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  // Zero whenever the denominator is zero.
  double precision() const;
  double recall() const;
  double f1() const;
};

struct NerScore {
  std::map<EntityType, PrfCounts> per_type;
  PrfCounts overall;  // micro-averaged
};

// A prediction is a true positive when an as-yet unmatched gold item with
// identical (doc, begin, end, etype) exists; both lists are walked in
// sorted order.
NerScore ner_f1(std::span<const SpanKey> gold, std::span<const SpanKey> pred);

std::vector<SpanKey> span_keys(std::span<const GoldDocument> docs);

struct NenItem {
  std::vector<std::string> gold;       // acceptable CUIs
  std::vector<std::string> predicted;  // empty when unmapped
};

// Lowercases the namespace part of "ns:ID", leaving the ID as is.
std::string fold_cui(std::string_view cui);

// Fraction of items whose prediction shares at least one CUI with the gold
// set. Throws EmptyEvaluation for no items.
double nen_accuracy(std::span<const NenItem> items);

// One item per gold mention carrying CUIs; the prediction is the CUIs of
// the exactly matching predicted mention, or nothing.
std::vector<NenItem> nen_items(std::span<const GoldDocument> gold,
                               std::span<const GoldDocument> pred);

}  // namespace bioann

#endif  // BIOANN_EVALKIT_H_
