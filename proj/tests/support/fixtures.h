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


// Shared pipeline fixtures built from the shipped data directory.

#ifndef BIOANN_TESTS_FIXTURES_H_
#define BIOANN_TESTS_FIXTURES_H_

#include <memory>
#include <string>

#include "bioann/config.h"
#include "bioann/pipeline.h"
#include "support/oracles.h"

namespace bioann::testing {

inline constexpr const char* kExampleSentence =
    "Atg7 suppresses tumor growth through arginine metabolism.";

inline PipelineConfig data_config() {
  auto c = load_config(data_path("config.json"));
  c.store_path.clear();
  return c;
}

// Models load once per process; building the indexes is the slow part.
inline const PipelineModels& data_models() {
  static const PipelineModels models = load_models(data_config());
  return models;
}

inline std::shared_ptr<const Pipeline> data_pipeline(const PipelineConfig& config) {
  auto models = data_models();
  return std::make_shared<const Pipeline>(config, std::move(models));
}

inline std::shared_ptr<const Pipeline> data_pipeline() { return data_pipeline(data_config()); }

}  // namespace bioann::testing

#endif  // BIOANN_TESTS_FIXTURES_H_
