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

#include "bioann/embedding_index.h"

#include <bit>
#include <cstdint>
#include <fstream>

#include "bioann/error.h"

namespace bioann {
namespace {

constexpr char kMagic[5] = {'B', 'I', 'D', 'X', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF),
                         static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw InvalidInput("index file truncated");
  }
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
  const std::uint32_t len = get_u32(in);
  std::string s(len, '\0');
  if (len > 0 && !in.read(s.data(), len)) throw InvalidInput("index file truncated");
  return s;
}

}  // namespace

EmbeddingIndex build_index(const Lexicon& lexicon, const Encoder& encoder) {
  if (lexicon.empty()) throw EmptyLexicon();
  EmbeddingIndex index;
  for (auto& [name, cui] : lexicon.pairs()) {
    index.names.push_back(name);
    index.cuis.push_back(cui);
  }
  index.matrix = encoder.embed_batch(index.names);
  return index;
}

std::vector<Candidate> dense_retrieve(std::string_view mention,
                                      const EmbeddingIndex& index,
                                      const Encoder& encoder, std::size_t k) {
  if (k == 0) throw InvalidInput("dense_retrieve: k must be >= 1");
  if (index.empty()) throw EmptyIndex();
  if (index.dim() != encoder.dim()) {
    throw InvalidInput("index dimension " + std::to_string(index.dim()) +
                       " differs from encoder dimension " +
                       std::to_string(encoder.dim()));
  }
  const Eigen::VectorXd query = encoder.embed(mention);
  std::vector<Candidate> out;
  for (const auto& hit : top_k_inner_product(index.matrix, query, k)) {
    const auto row = static_cast<std::size_t>(hit.row);
    out.push_back({index.cuis[row], index.names[row], hit.score});
  }
  return out;
}

void write_index(std::ostream& out, const EmbeddingIndex& index) {
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, static_cast<std::uint32_t>(index.dim()));
  put_u32(out, static_cast<std::uint32_t>(index.size()));
  for (std::size_t i = 0; i < index.names.size(); ++i) {
    put_string(out, index.names[i]);
    put_string(out, index.cuis[i]);
  }
  for (Eigen::Index r = 0; r < index.size(); ++r) {
    for (Eigen::Index c = 0; c < index.dim(); ++c) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(index.matrix(r, c))));
    }
  }
  if (!out) throw IoFailure("failed writing index");
}

EmbeddingIndex read_index(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      !std::equal(std::begin(magic), std::end(magic), std::begin(kMagic))) {
    throw InvalidInput("not an index file (bad magic)");
  }
  const std::uint32_t dim = get_u32(in);
  const std::uint32_t n = get_u32(in);
  EmbeddingIndex index;
  index.names.reserve(n);
  index.cuis.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    index.names.push_back(get_string(in));
    index.cuis.push_back(get_string(in));
  }
  index.matrix.resize(n, dim);
  for (Eigen::Index r = 0; r < index.size(); ++r) {
    for (Eigen::Index c = 0; c < index.dim(); ++c) {
      index.matrix(r, c) = std::bit_cast<float>(get_u32(in));
    }
  }
  return index;
}

void write_index_file(const std::string& path, const EmbeddingIndex& index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path);
  write_index(out, index);
}

EmbeddingIndex read_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  return read_index(in);
}

}  // namespace bioann
