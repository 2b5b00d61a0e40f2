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

#include "bioann/evalkit.h"

#include <algorithm>
#include <set>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double PrfCounts::precision() const { return ratio(tp, tp + fp); }
double PrfCounts::recall() const { return ratio(tp, tp + fn); }

double PrfCounts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

NerScore ner_f1(std::span<const SpanKey> gold, std::span<const SpanKey> pred) {
  std::vector<SpanKey> g(gold.begin(), gold.end());
  std::vector<SpanKey> p(pred.begin(), pred.end());
  std::sort(g.begin(), g.end());
  std::sort(p.begin(), p.end());

  NerScore score;
  for (EntityType t : kAllEntityTypes) score.per_type[t];
  // merge walk: equal keys pair off one to one
  std::size_t i = 0, j = 0;
  while (i < g.size() || j < p.size()) {
    if (j == p.size() || (i < g.size() && g[i] < p[j])) {
      ++score.per_type[g[i++].etype].fn;
    } else if (i == g.size() || p[j] < g[i]) {
      ++score.per_type[p[j++].etype].fp;
    } else {
      ++score.per_type[g[i].etype].tp;
      ++i;
      ++j;
    }
  }
  for (const auto& [type, c] : score.per_type) {
    score.overall.tp += c.tp;
    score.overall.fp += c.fp;
    score.overall.fn += c.fn;
  }
  return score;
}

std::vector<SpanKey> span_keys(std::span<const GoldDocument> docs) {
  std::vector<SpanKey> out;
  for (const auto& d : docs) {
    for (const auto& m : d.gold) out.push_back({d.doc_id, m.begin, m.end, m.etype});
  }
  return out;
}

std::string fold_cui(std::string_view cui) {
  const auto colon = cui.find(':');
  if (colon == std::string_view::npos) return std::string(cui);
  return utf8::to_lower(cui.substr(0, colon)) + std::string(cui.substr(colon));
}

double nen_accuracy(std::span<const NenItem> items) {
  if (items.empty()) throw EmptyEvaluation();
  std::size_t correct = 0;
  for (const auto& item : items) {
    std::set<std::string> gold;
    for (const auto& c : item.gold) gold.insert(fold_cui(c));
    const bool hit = std::any_of(item.predicted.begin(), item.predicted.end(),
                                 [&](const std::string& c) { return gold.count(fold_cui(c)); });
    correct += hit ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(items.size());
}

std::vector<NenItem> nen_items(std::span<const GoldDocument> gold,
                               std::span<const GoldDocument> pred) {
  std::multimap<SpanKey, const GoldMention*> predicted;
  for (const auto& d : pred) {
    for (const auto& m : d.gold) predicted.emplace(SpanKey{d.doc_id, m.begin, m.end, m.etype}, &m);
  }
  std::vector<NenItem> out;
  for (const auto& d : gold) {
    for (const auto& m : d.gold) {
      if (m.cuis.empty()) continue;
      NenItem item{m.cuis, {}};
      auto it = predicted.find(SpanKey{d.doc_id, m.begin, m.end, m.etype});
      if (it != predicted.end()) {
        item.predicted = it->second->cuis;
        predicted.erase(it);
      }
      out.push_back(std::move(item));
    }
  }
  return out;
}

}  // namespace bioann
