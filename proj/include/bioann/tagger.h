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

// Multi-head tagging. A backend answers every requested entity type from one
// call, each head being an n x 3 matrix of (B, I, O) probabilities over the
// tokens of the window.

#ifndef BIOANN_TAGGER_H_
#define BIOANN_TAGGER_H_

#include <atomic>
#include <cstddef>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bioann/textproc.h"
#include "bioann/types.h"

namespace bioann {

enum class BioLabel : std::uint8_t { kB = 0, kI = 1, kO = 2 };

template <typename Scalar>
using BasicTagProbs = Eigen::Matrix<Scalar, Eigen::Dynamic, 3, Eigen::RowMajor>;
using TagProbs = BasicTagProbs<double>;

struct TagProbSeq {
  EntityType etype = EntityType::kGene;
  TagProbs rows;
};

using HeadMap = std::map<EntityType, TagProbSeq>;

// Rows within [0,1] that sum to one within `tol`.
template <typename Derived>
bool is_stochastic(const Eigen::MatrixBase<Derived>& rows, double tol = 1e-6) {
  if (rows.size() == 0) return true;
  if ((rows.array() < 0).any() || (rows.array() > 1).any()) return false;
  return ((rows.rowwise().sum().array() - 1).abs() <= tol).all();
}

// Per-row argmax with ties resolved B > I > O.
template <typename Derived>
std::vector<BioLabel> argmax_labels(const Eigen::MatrixBase<Derived>& rows) {
  std::vector<BioLabel> labels(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    int best = 0;
    for (int c = 1; c < 3; ++c) {
      if (rows(r, c) > rows(r, best)) best = c;
    }
    labels[static_cast<std::size_t>(r)] = static_cast<BioLabel>(best);
  }
  return labels;
}

// Tagging backend contract: `tag` answers every requested head in a single
// invocation. The public entry point validates the request and the reply and
// counts invocations; implementations override `do_tag`.
class TaggerBackend {
 public:
  TaggerBackend() = default;
  // Copies start with a fresh invocation count.
  TaggerBackend(const TaggerBackend&) {}
  TaggerBackend& operator=(const TaggerBackend&) { return *this; }
  virtual ~TaggerBackend() = default;

  // Throws InvalidInput when Mutation is requested, ProtocolViolation when
  // the implementation misses a head or returns the wrong number of rows.
  HeadMap tag(std::span<const TokenSpan> tokens, const EntityTypeSet& types) const;

  std::size_t invocations() const { return invocations_.load(); }
  virtual std::string_view kind() const = 0;
  virtual bool healthy() const { return true; }

 protected:
  virtual HeadMap do_tag(std::span<const TokenSpan> tokens,
                         const EntityTypeSet& types) const = 0;

 private:
  mutable std::atomic<std::size_t> invocations_{0};
};

// Deterministic dictionary backend: case-insensitive longest-match phrase
// lookup, emitting 0.99 on the matched label and spreading the rest.
class GazetteerTagger final : public TaggerBackend {
 public:
  static constexpr double kHit = 0.99;

  GazetteerTagger() = default;

  // Lines: "<type>\t<phrase>". Blank lines and '#' comments ignored.
  static GazetteerTagger load(std::istream& in, const std::string& name = "<stream>");
  static GazetteerTagger load_file(const std::string& path);

  void add(EntityType type, std::string_view phrase);
  void merge(const GazetteerTagger& other);
  std::size_t phrase_count(EntityType type) const;

  std::string_view kind() const override { return "gazetteer"; }

 protected:
  HeadMap do_tag(std::span<const TokenSpan> tokens,
                 const EntityTypeSet& types) const override;

 private:
  // Lowercased token sequences per type, grouped by first token.
  std::map<EntityType, std::map<std::string, std::vector<std::vector<std::string>>>>
      phrases_;
};

// Converts one head into mentions. Labels are the row argmax; an I that
// starts the sequence or follows O opens a new mention. Mention probability
// is the minimum winning probability over its tokens. When `text` is given,
// surfaces are exact text slices, otherwise token surfaces joined by one
// space. Throws LengthMismatch when rows and tokens differ in count.
std::vector<Mention> decode_bio(const TagProbSeq& seq,
                                std::span<const TokenSpan> tokens,
                                std::u32string_view text = {});

enum class OverlapPolicy : std::uint8_t { kKeepAll, kLongestWins };

std::string_view to_string(OverlapPolicy policy);
OverlapPolicy overlap_policy_from_string(std::string_view name);

// KeepAll sorts. LongestWins also drops any mention contained in a longer
// mention of another type; identical spans keep the higher-priority type.
std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions,
                                      OverlapPolicy policy);

// Reduced mutation recognizer: p.<AA><n><AA>, <AA><n><AA>, c.<n><N>><N>,
// rs<n>, delimited by non-alphanumeric context. Probability 1.
std::vector<Mention> recognize_mutations(std::string_view text);
std::vector<Mention> recognize_mutations(std::u32string_view text);

// Windows over `tokens` of at most `max_len` tokens. Whole sentences are
// packed greedily; a sentence longer than `max_len` is hard-split. Without
// sentence ranges the list is hard-split. Throws InvalidInput if
// max_len < 16.
std::vector<std::span<const TokenSpan>> chunk_tokens(
    std::span<const TokenSpan> tokens, std::span<const SentenceRange> sentences,
    std::size_t max_len);
std::vector<std::span<const TokenSpan>> chunk_tokens(
    std::span<const TokenSpan> tokens, std::size_t max_len);

}  // namespace bioann

#endif  // BIOANN_TAGGER_H_
