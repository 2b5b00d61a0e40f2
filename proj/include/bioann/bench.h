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

// Per-document latency summaries.

#ifndef BIOANN_BENCH_H_
#define BIOANN_BENCH_H_

#include <cstddef>
#include <span>

#include <json.hpp>

namespace bioann {

struct BenchReport {
  std::size_t n_docs = 0;
  double mean_s = 0.0;
  double std_s = 0.0;  // population standard deviation
  double p50_s = 0.0;
  double p95_s = 0.0;
  double min_s = 0.0;
  double max_s = 0.0;
};

// Percentiles interpolate linearly between order statistics. Throws
// InvalidInput for an empty sample or a negative/non-finite value.
BenchReport summarize(std::span<const double> seconds);

nlohmann::json to_json(const BenchReport& report);

}  // namespace bioann

#endif  // BIOANN_BENCH_H_
