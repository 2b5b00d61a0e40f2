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

#include "bioann/result_json.h"

#include "bioann/error.h"

namespace bioann {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, json::value_t type) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field '") + key + "'");
  }
  const json& v = j[key];
  const bool ok = type == json::value_t::number_float ? v.is_number()
                  : type == json::value_t::number_unsigned
                      ? v.is_number_unsigned()
                      : v.type() == type;
  if (!ok) throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  return v;
}

}  // namespace

json result_to_json(const AnnotationResult& result, bool include_elapsed) {
  json annotations = json::array();
  for (const auto& a : result.annotations) {
    json item = {
        {"begin", a.mention.begin},
        {"end", a.mention.end},
        {"surface", a.mention.surface},
        {"etype", std::string(to_string(a.mention.etype))},
        {"prob", a.mention.prob},
        {"ids", a.norm.ids},
        {"source", std::string(to_string(a.norm.source))},
    };
    if (a.norm.score) item["score"] = *a.norm.score;
    annotations.push_back(std::move(item));
  }
  json doc = {{"text", result.doc.text}};
  doc["doc_id"] = result.doc.doc_id ? json(*result.doc.doc_id) : json(nullptr);
  json out = {{"doc", std::move(doc)},
              {"annotations", std::move(annotations)},
              {"pipeline_version", result.pipeline_version}};
  if (include_elapsed) out["elapsed_ms"] = result.elapsed_ms;
  return out;
}

AnnotationResult result_from_json(const json& j) {
  AnnotationResult r;
  const json& doc = field(j, "doc", json::value_t::object);
  r.doc.text = field(doc, "text", json::value_t::string).get<std::string>();
  if (doc.contains("doc_id") && !doc["doc_id"].is_null()) {
    r.doc.doc_id = field(doc, "doc_id", json::value_t::string).get<std::string>();
  }
  r.pipeline_version =
      field(j, "pipeline_version", json::value_t::string).get<std::string>();
  if (j.contains("elapsed_ms")) {
    r.elapsed_ms = field(j, "elapsed_ms", json::value_t::number_float).get<double>();
  }
  for (const auto& item : field(j, "annotations", json::value_t::array)) {
    Annotation a;
    a.mention.begin = field(item, "begin", json::value_t::number_unsigned).get<std::size_t>();
    a.mention.end = field(item, "end", json::value_t::number_unsigned).get<std::size_t>();
    a.mention.surface = field(item, "surface", json::value_t::string).get<std::string>();
    a.mention.etype =
        entity_type_from_string(field(item, "etype", json::value_t::string).get<std::string>());
    a.mention.prob = field(item, "prob", json::value_t::number_float).get<double>();
    for (const auto& id : field(item, "ids", json::value_t::array)) {
      if (!id.is_string()) throw InvalidInput("field 'ids' must hold strings");
      a.norm.ids.push_back(id.get<std::string>());
    }
    const auto source =
        parse_norm_source(field(item, "source", json::value_t::string).get<std::string>());
    if (!source) throw InvalidInput("unknown normalization source");
    a.norm.source = *source;
    if (item.contains("score")) {
      a.norm.score = field(item, "score", json::value_t::number_float).get<double>();
    }
    r.annotations.push_back(std::move(a));
  }
  return r;
}

std::string canonical_payload(const AnnotationResult& result) {
  return result_to_json(result, false).dump();
}

AnnotationResult parse_payload(std::string_view payload) {
  auto j = json::parse(payload, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("payload is not valid JSON");
  return result_from_json(j);
}

json to_api_json(const AnnotationResult& result) {
  json annotations = json::array();
  for (const auto& a : result.annotations) {
    annotations.push_back({
        {"span", {{"begin", a.mention.begin}, {"end", a.mention.end}}},
        {"mention", a.mention.surface},
        {"obj", std::string(to_string(a.mention.etype))},
        {"prob", a.mention.prob},
        {"id", a.norm.ids},
        {"is_neural_normalized", a.norm.source == NormSource::kNeural},
    });
  }
  json out = {{"text", result.doc.text},
              {"annotations", std::move(annotations)},
              {"elapsed_ms", result.elapsed_ms},
              {"pipeline_version", result.pipeline_version}};
  if (result.doc.doc_id) out["pmid"] = *result.doc.doc_id;
  return out;
}

}  // namespace bioann
