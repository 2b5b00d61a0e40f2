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

#include "bioann/encoder.h"

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

constexpr char32_t kBeginMarker = 0x02;
constexpr char32_t kEndMarker = 0x03;

// FNV-1a over the UTF-8 bytes, seeded, followed by a splitmix64 finalizer.
std::uint64_t hash_gram(std::u32string_view gram, std::uint64_t seed) {
  std::string bytes = utf8::encode(gram);
  std::uint64_t h = 0xCBF29CE484222325ULL ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  h ^= h >> 30;
  h *= 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 27;
  h *= 0x94D049BB133111EBULL;
  h ^= h >> 31;
  return h;
}

}  // namespace

Eigen::VectorXd Encoder::embed(std::string_view name) const {
  ++invocations_;
  return do_embed(name);
}

Eigen::MatrixXd Encoder::embed_batch(std::span<const std::string> names) const {
  invocations_ += names.size();
  return do_embed_batch(names);
}

Eigen::MatrixXd Encoder::do_embed_batch(std::span<const std::string> names) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(names.size()), dim());
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = do_embed(names[i]).transpose();
  }
  return out;
}

MockEncoder::MockEncoder(Eigen::Index dim, std::uint64_t index_seed,
                         std::uint64_t sign_seed)
    : dim_(dim), index_seed_(index_seed), sign_seed_(sign_seed) {
  if (dim_ <= 0) throw InvalidInput("encoder dimension must be positive");
}

Eigen::VectorXd MockEncoder::do_embed(std::string_view name) const {
  const std::u32string lowered = utf8::to_lower(utf8::decode(name));
  std::u32string padded;
  padded.reserve(lowered.size() + 2);
  padded.push_back(kBeginMarker);
  padded += lowered;
  padded.push_back(kEndMarker);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  auto add_grams = [&](std::size_t n) {
    const std::u32string_view s(padded);
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
      const auto gram = s.substr(i, n);
      const auto slot = static_cast<Eigen::Index>(
          hash_gram(gram, index_seed_) % static_cast<std::uint64_t>(dim_));
      v(slot) += (hash_gram(gram, sign_seed_) & 1U) ? 1.0 : -1.0;
    }
  };
  if (lowered.size() >= 3) {
    add_grams(3);
  } else {
    add_grams(2);
    add_grams(1);
  }

  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace bioann
