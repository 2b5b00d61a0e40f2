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

#ifndef BIOANN_ENCODER_H_
#define BIOANN_ENCODER_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace bioann {

// Entity-name encoder: maps a name to a unit-norm vector of fixed dimension.
// `embed` counts every name it encodes, which lets callers observe that a
// code path never touched the encoder.
class Encoder {
 public:
  Encoder() = default;
  Encoder(const Encoder&) {}
  Encoder& operator=(const Encoder&) { return *this; }
  virtual ~Encoder() = default;

  Eigen::VectorXd embed(std::string_view name) const;
  // One row per name, in order.
  Eigen::MatrixXd embed_batch(std::span<const std::string> names) const;

  virtual Eigen::Index dim() const = 0;
  virtual std::string_view kind() const = 0;
  std::size_t invocations() const { return invocations_.load(); }

 protected:
  virtual Eigen::VectorXd do_embed(std::string_view name) const = 0;
  virtual Eigen::MatrixXd do_embed_batch(std::span<const std::string> names) const;

 private:
  mutable std::atomic<std::size_t> invocations_{0};
};

// Hashed character n-gram encoder. The name is lowercased and bracketed
// with boundary markers; names of three or more scalars contribute their
// trigrams, shorter ones their bigrams and unigrams. Each gram adds +-1 at
// a hashed coordinate, and the sum is L2-normalized.
class MockEncoder final : public Encoder {
 public:
  static constexpr Eigen::Index kDefaultDim = 256;
  static constexpr std::uint64_t kIndexSeed = 0xC2B2AE3D27D4EB4FULL;
  static constexpr std::uint64_t kSignSeed = 0x9E3779B97F4A7C15ULL;

  explicit MockEncoder(Eigen::Index dim = kDefaultDim,
                       std::uint64_t index_seed = kIndexSeed,
                       std::uint64_t sign_seed = kSignSeed);

  Eigen::Index dim() const override { return dim_; }
  std::string_view kind() const override { return "mock"; }

 protected:
  Eigen::VectorXd do_embed(std::string_view name) const override;

 private:
  Eigen::Index dim_;
  std::uint64_t index_seed_;
  std::uint64_t sign_seed_;
};

// Client for the remote encoder protocol: POST {base_url}/embed with
// {"names": [...]}, reply {"vectors": [[...], ...]}. Replies are checked
// for count and dimension and renormalized.
class RemoteEncoder final : public Encoder {
 public:
  RemoteEncoder(std::string base_url, Eigen::Index dim, int timeout_ms = 10000);

  Eigen::Index dim() const override { return dim_; }
  std::string_view kind() const override { return "remote"; }

 protected:
  Eigen::VectorXd do_embed(std::string_view name) const override;
  Eigen::MatrixXd do_embed_batch(std::span<const std::string> names) const override;

 private:
  std::string base_url_;
  Eigen::Index dim_;
  int timeout_ms_;
};

}  // namespace bioann

#endif  // BIOANN_ENCODER_H_
