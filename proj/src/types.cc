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

#include "bioann/types.h"

#include <algorithm>
#include <tuple>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

constexpr std::array<std::string_view, 9> kTypeNames = {
    "gene",     "disease",   "drug", "species", "mutation",
    "cell_line", "cell_type", "DNA",  "RNA",
};

std::string at(std::size_t i, std::string_view field) {
  return "annotations[" + std::to_string(i) + "]." + std::string(field);
}

}  // namespace

std::string_view to_string(EntityType type) {
  return kTypeNames[static_cast<std::size_t>(type)];
}

std::optional<EntityType> parse_entity_type(std::string_view name) {
  for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
    if (kTypeNames[i] == name) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

EntityType entity_type_from_string(std::string_view name) {
  if (auto t = parse_entity_type(name)) return *t;
  throw InvalidInput("unknown entity type '" + std::string(name) + "'");
}

std::string_view to_string(NormSource source) {
  switch (source) {
    case NormSource::kRule:
      return "rule";
    case NormSource::kNeural:
      return "neural";
    case NormSource::kUnmapped:
      break;
  }
  return "unmapped";
}

std::optional<NormSource> parse_norm_source(std::string_view name) {
  if (name == "rule") return NormSource::kRule;
  if (name == "neural") return NormSource::kNeural;
  if (name == "unmapped") return NormSource::kUnmapped;
  return std::nullopt;
}

bool is_valid_cui(std::string_view cui) {
  const auto colon = cui.find(':');
  return colon != std::string_view::npos && colon > 0 &&
         colon + 1 < cui.size();
}

bool is_pmid(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool annotation_less(const Mention& a, const Mention& b) {
  return std::make_tuple(a.begin, a.end, to_string(a.etype)) <
         std::make_tuple(b.begin, b.end, to_string(b.etype));
}

void sort_annotations(std::vector<Annotation>& annotations) {
  std::stable_sort(annotations.begin(), annotations.end(),
                   [](const Annotation& a, const Annotation& b) {
                     return annotation_less(a.mention, b.mention);
                   });
}

void sort_mentions(std::vector<Mention>& mentions) {
  std::stable_sort(mentions.begin(), mentions.end(), annotation_less);
}

std::vector<std::string> validate_result(const AnnotationResult& result) {
  std::vector<std::string> violations;
  const auto text = utf8::try_decode(result.doc.text);
  if (!text) violations.push_back("doc.text: not valid UTF-8");
  if (result.doc.doc_id && !is_pmid(*result.doc.doc_id)) {
    violations.push_back("doc.doc_id: must be a nonempty digit string");
  }
  if (!(result.elapsed_ms >= 0.0)) {
    violations.push_back("elapsed_ms: must be nonnegative");
  }

  const std::size_t len = text ? text->size() : 0;
  for (std::size_t i = 0; i < result.annotations.size(); ++i) {
    const Mention& m = result.annotations[i].mention;
    const Normalization& n = result.annotations[i].norm;

    bool span_ok = true;
    if (!(m.begin < m.end)) {
      violations.push_back(at(i, "begin<end"));
      span_ok = false;
    } else if (m.end > len) {
      violations.push_back(at(i, "end<=len(text)"));
      span_ok = false;
    }
    if (span_ok && text &&
        utf8::encode(std::u32string_view(*text).substr(m.begin, m.end - m.begin)) !=
            m.surface) {
      violations.push_back(at(i, "surface: does not equal text slice"));
    }
    if (!(m.prob >= 0.0 && m.prob <= 1.0)) {
      violations.push_back(at(i, "prob: outside [0,1]"));
    }

    if ((n.source == NormSource::kUnmapped) != n.ids.empty()) {
      violations.push_back(at(i, "norm.source: Unmapped iff ids empty"));
    }
    for (const auto& cui : n.ids) {
      if (!is_valid_cui(cui)) {
        violations.push_back(at(i, "norm.ids: malformed CUI '" + cui + "'"));
      }
    }
    if (n.score.has_value() != (n.source == NormSource::kNeural)) {
      violations.push_back(at(i, "norm.score: present iff source is Neural"));
    }

    if (i > 0) {
      const Mention& prev = result.annotations[i - 1].mention;
      if (annotation_less(m, prev)) {
        violations.push_back(at(i, "order: not sorted by (begin,end,etype)"));
      } else if (!annotation_less(prev, m)) {
        violations.push_back(at(i, "duplicate: same (begin,end,etype) as previous"));
      }
    }
  }
  return violations;
}

}  // namespace bioann
