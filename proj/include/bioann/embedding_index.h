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

// Dictionary embedding matrix and exact maximum-inner-product retrieval.

#ifndef BIOANN_EMBEDDING_INDEX_H_
#define BIOANN_EMBEDDING_INDEX_H_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bioann/encoder.h"
#include "bioann/lexicon.h"

namespace bioann {

// One row per (name, CUI) pair; rows are unit norm and row i encodes
// names[i].
template <typename Scalar>
struct BasicEmbeddingIndex {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::vector<std::string> names;
  std::vector<std::string> cuis;
  Matrix matrix;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index dim() const { return matrix.cols(); }
  bool empty() const { return matrix.rows() == 0; }
};

using EmbeddingIndex = BasicEmbeddingIndex<double>;

template <typename Scalar>
struct ScoredRow {
  Eigen::Index row;
  Scalar score;
};

// Top-k rows of `matrix` by inner product with `query`, descending score,
// ties broken by lower row index. Exact full scan.
template <typename MatrixDerived, typename VectorDerived>
std::vector<ScoredRow<typename MatrixDerived::Scalar>> top_k_inner_product(
    const Eigen::MatrixBase<MatrixDerived>& matrix,
    const Eigen::MatrixBase<VectorDerived>& query, std::size_t k) {
  using Scalar = typename MatrixDerived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> scores =
      matrix * query.template cast<Scalar>();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  k = std::min(k, order.size());
  auto better = [&](Eigen::Index a, Eigen::Index b) {
    return scores(a) > scores(b) || (scores(a) == scores(b) && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), better);

  std::vector<ScoredRow<Scalar>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back({order[i], scores(order[i])});
  return out;
}

// Rows sorted by (name, cui); throws EmptyLexicon.
EmbeddingIndex build_index(const Lexicon& lexicon, const Encoder& encoder);

struct Candidate {
  std::string cui;
  std::string name;
  double score = 0.0;
};

// Throws EmptyIndex, or InvalidInput on k == 0 or a dimension mismatch.
std::vector<Candidate> dense_retrieve(std::string_view mention,
                                      const EmbeddingIndex& index,
                                      const Encoder& encoder, std::size_t k);

// Binary index file: "BIDX1", u32 d, u32 n, then n (name, cui) pairs as
// u32-length-prefixed UTF-8, then the n x d row-major matrix as f32. All
// integers and floats little-endian.
void write_index(std::ostream& out, const EmbeddingIndex& index);
EmbeddingIndex read_index(std::istream& in);
void write_index_file(const std::string& path, const EmbeddingIndex& index);
EmbeddingIndex read_index_file(const std::string& path);

}  // namespace bioann

#endif  // BIOANN_EMBEDDING_INDEX_H_
