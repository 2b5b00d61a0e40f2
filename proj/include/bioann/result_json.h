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

// JSON forms of AnnotationResult.
//
// The canonical payload is what the cache persists and what determinism
// checks compare: sorted keys, compact, no elapsed_ms. The API form is the
// REST wire shape:
//
//   {"text": ..., "pipeline_version": ..., "elapsed_ms": ...,
//    "annotations": [{"span": {"begin": b, "end": e}, "mention": ...,
//                     "obj": "<type>", "prob": p, "id": [cui...],
//                     "is_neural_normalized": bool}, ...]}

#ifndef BIOANN_RESULT_JSON_H_
#define BIOANN_RESULT_JSON_H_

#include <string>
#include <string_view>

#include <json.hpp>

#include "bioann/types.h"

namespace bioann {

nlohmann::json result_to_json(const AnnotationResult& result, bool include_elapsed);
// Throws InvalidInput on a missing or mistyped field.
AnnotationResult result_from_json(const nlohmann::json& j);

std::string canonical_payload(const AnnotationResult& result);
AnnotationResult parse_payload(std::string_view payload);

nlohmann::json to_api_json(const AnnotationResult& result);

}  // namespace bioann

#endif  // BIOANN_RESULT_JSON_H_
