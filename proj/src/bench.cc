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

#include "bioann/bench.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bioann/error.h"

namespace bioann {
namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

BenchReport summarize(std::span<const double> seconds) {
  if (seconds.empty()) throw InvalidInput("no timings to summarize");
  std::vector<double> s(seconds.begin(), seconds.end());
  for (double v : s) {
    if (!std::isfinite(v) || v < 0) throw InvalidInput("timings must be finite and >= 0");
  }
  std::sort(s.begin(), s.end());

  BenchReport r;
  r.n_docs = s.size();
  double sum = 0.0;
  for (double v : s) sum += v;
  r.mean_s = sum / static_cast<double>(s.size());
  double sq = 0.0;
  for (double v : s) sq += (v - r.mean_s) * (v - r.mean_s);
  r.std_s = std::sqrt(sq / static_cast<double>(s.size()));
  r.p50_s = percentile(s, 0.50);
  r.p95_s = percentile(s, 0.95);
  r.min_s = s.front();
  r.max_s = s.back();
  return r;
}

nlohmann::json to_json(const BenchReport& report) {
  return {{"n_docs", report.n_docs}, {"mean_s", report.mean_s}, {"std_s", report.std_s},
          {"p50_s", report.p50_s},   {"p95_s", report.p95_s},   {"min_s", report.min_s},
          {"max_s", report.max_s}};
}

}  // namespace bioann
