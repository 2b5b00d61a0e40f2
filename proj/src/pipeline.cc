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

#include "bioann/pipeline.h"

#include <chrono>

#include "bioann/error.h"
#include "bioann/normalizer.h"
#include "bioann/remote_tagger.h"
#include "bioann/result_json.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

PipelineModels load_models(const PipelineConfig& config) {
  config.validate();
  PipelineModels m;

  for (const auto& [type, paths] : config.lexicon_paths) {
    Lexicon lex(type);
    for (const auto& p : paths) lex.merge(Lexicon::load_file(p, type));
    m.lexicons.emplace(type, std::move(lex));
  }

  if (config.backend == BackendKind::kRemote) {
    m.tagger = std::make_shared<RemoteTagger>(config.remote_url, config.remote_timeout_ms);
  } else {
    auto gaz = std::make_shared<GazetteerTagger>();
    for (const auto& p : config.gazetteer_paths) gaz->merge(GazetteerTagger::load_file(p));
    if (config.gazetteer_from_lexicons) {
      for (const auto& [type, lex] : m.lexicons) {
        if (type == EntityType::kMutation) continue;
        for (const auto& [key, cuis] : lex.entries()) gaz->add(type, key);
      }
    }
    m.tagger = std::move(gaz);
  }

  if (config.encoder == EncoderKind::kRemote) {
    m.encoder = std::make_shared<RemoteEncoder>(config.encoder_url, config.encoder_dim,
                                                config.encoder_timeout_ms);
  } else {
    m.encoder = std::make_shared<MockEncoder>(config.encoder_dim);
  }

  for (const auto& [type, path] : config.index_paths) {
    EmbeddingIndex index = read_index_file(path);
    if (index.dim() != m.encoder->dim()) {
      throw ConfigError("index " + path + " has dimension " + std::to_string(index.dim()) +
                        ", encoder has " + std::to_string(m.encoder->dim()));
    }
    m.indexes.emplace(type, std::move(index));
  }
  for (const auto& [type, lex] : m.lexicons) {
    if (!has_neural_path(type) || m.indexes.count(type) || lex.empty()) continue;
    m.indexes.emplace(type, build_index(lex, *m.encoder));
  }

  if (!config.abbreviations_path.empty()) {
    m.abbreviations = AbbreviationList::load_file(config.abbreviations_path);
  }
  return m;
}

Pipeline::Pipeline(PipelineConfig config, PipelineModels models)
    : config_(std::move(config)), models_(std::move(models)) {
  config_.validate();
  if (!models_.tagger) throw ConfigError("pipeline needs a tagger backend");
  for (EntityType t : config_.enabled_types) {
    if (t != EntityType::kMutation) tagged_types_.insert(t);
  }
}

Normalization Pipeline::normalize(const Mention& mention) const {
  if (mention.etype == EntityType::kMutation) return Normalization::unmapped();
  auto lex = models_.lexicons.find(mention.etype);
  auto idx = models_.indexes.find(mention.etype);
  return hybrid_normalize(mention.surface, mention.etype,
                          lex == models_.lexicons.end() ? nullptr : &lex->second,
                          idx == models_.indexes.end() ? nullptr : &idx->second,
                          models_.encoder.get(), config_.threshold_for(mention.etype));
}

AnnotationResult Pipeline::annotate_text(const Document& doc) const {
  const auto start = Clock::now();
  const std::u32string text = utf8::decode(doc.text);
  if (text.size() > config_.max_chars) throw InputTooLarge(text.size(), config_.max_chars);

  const auto tokens = tokenize(text);
  const auto sentences = segment_sentences(text, models_.abbreviations);

  std::vector<Mention> mentions;
  if (!tagged_types_.empty() && !tokens.empty()) {
    for (const auto& chunk : chunk_tokens(tokens, sentences, config_.max_len)) {
      const HeadMap heads = models_.tagger->tag(chunk, tagged_types_);
      for (const auto& [type, seq] : heads) {
        auto found = decode_bio(seq, chunk, text);
        mentions.insert(mentions.end(), std::make_move_iterator(found.begin()),
                        std::make_move_iterator(found.end()));
      }
    }
  }
  if (config_.enabled_types.count(EntityType::kMutation)) {
    auto found = recognize_mutations(text);
    mentions.insert(mentions.end(), std::make_move_iterator(found.begin()),
                    std::make_move_iterator(found.end()));
  }
  mentions = resolve_overlaps(std::move(mentions), config_.overlap_policy);

  AnnotationResult result;
  result.doc = doc;
  result.pipeline_version = config_.pipeline_version;
  result.annotations.reserve(mentions.size());
  for (auto& m : mentions) {
    Normalization norm = normalize(m);
    result.annotations.push_back(Annotation{std::move(m), std::move(norm)});
  }
  sort_annotations(result.annotations);
  result.elapsed_ms = ms_since(start);
  return result;
}

AnnotationResult Pipeline::annotate_pmid(const std::string& pmid, AnnotationStore* store,
                                         const AbstractFetcher& fetcher) const {
  if (!is_pmid(pmid)) throw InvalidInput("invalid pmid '" + pmid + "'");
  const auto start = Clock::now();
  if (store != nullptr) {
    if (auto hit = store->get(pmid); hit && hit->pipeline_version == config_.pipeline_version) {
      AnnotationResult cached = parse_payload(hit->payload);
      cached.elapsed_ms = ms_since(start);
      return cached;
    }
  }
  AnnotationResult result = annotate_text(fetcher.fetch(pmid));
  result.doc.doc_id = pmid;
  if (store != nullptr) {
    store->put(CacheRecord{pmid, canonical_payload(result), config_.pipeline_version,
                           utc_timestamp()});
  }
  result.elapsed_ms = ms_since(start);
  return result;
}

}  // namespace bioann
