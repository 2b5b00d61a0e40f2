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

// Text -> AnnotationResult, and the PMID path through the cache.

#ifndef BIOANN_PIPELINE_H_
#define BIOANN_PIPELINE_H_

#include <map>
#include <memory>
#include <string>

#include "bioann/config.h"
#include "bioann/embedding_index.h"
#include "bioann/encoder.h"
#include "bioann/ingest.h"
#include "bioann/lexicon.h"
#include "bioann/store.h"
#include "bioann/tagger.h"
#include "bioann/textproc.h"
#include "bioann/types.h"

namespace bioann {

// Everything the pipeline reads at annotation time. Immutable once built.
struct PipelineModels {
  std::shared_ptr<const TaggerBackend> tagger;
  std::shared_ptr<const Encoder> encoder;  // may be null: rule-only
  std::map<EntityType, Lexicon> lexicons;
  std::map<EntityType, EmbeddingIndex> indexes;
  AbbreviationList abbreviations = AbbreviationList::defaults();
};

// Loads lexicons, gazetteers, indexes and abbreviations named by `config`,
// building an index from the lexicon for each neural-path type without one.
// Throws ConfigError, LexiconFormatError, IoFailure.
PipelineModels load_models(const PipelineConfig& config);

class Pipeline {
 public:
  Pipeline(PipelineConfig config, PipelineModels models);

  static Pipeline from_config(const PipelineConfig& config) {
    return Pipeline(config, load_models(config));
  }

  // Throws InvalidUtf8, InputTooLarge, BackendUnavailable, ProtocolViolation.
  AnnotationResult annotate_text(const Document& doc) const;

  // Cache lookup, falling back to fetch + annotate + persist. A stored
  // record from another pipeline_version counts as a miss. `store` may be
  // null. Throws InvalidInput, PmidNotFound, FetchFailed, MalformedResponse
  // and store errors.
  AnnotationResult annotate_pmid(const std::string& pmid, AnnotationStore* store,
                                 const AbstractFetcher& fetcher) const;

  const PipelineConfig& config() const { return config_; }
  const PipelineModels& models() const { return models_; }
  const TaggerBackend& tagger() const { return *models_.tagger; }

 private:
  Normalization normalize(const Mention& mention) const;

  PipelineConfig config_;
  PipelineModels models_;
  EntityTypeSet tagged_types_;  // enabled minus mutation
};

}  // namespace bioann

#endif  // BIOANN_PIPELINE_H_
