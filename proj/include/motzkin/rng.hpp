#pragma once

#include "motzkin/rational.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace motzkin {

/// Philox4x32-10 counter-based generator.
/// Output block = bijection of the 128-bit counter under a 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A stream of 64-bit words keyed by (seed, stream). The counter is
/// (block index, stream index), so two streams with the same seed and different
/// stream indices never share a Philox input block.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
};

/// Inverse-CDF sampler over non-negative exact weights.
///
/// A draw reads 64 uniform bits, which almost always place the uniform
/// interval inside one cumulative cell; otherwise more bits are drawn until the
/// exact interval comparison decides. No floating point is involved.
class ExactDiscrete {
 public:
  ExactDiscrete() = default;
  explicit ExactDiscrete(std::span<const Rational> weights);

  std::size_t size() const { return cumulative_.size(); }
  bool empty() const { return cumulative_.empty(); }
  const Rational& total() const { return total_; }

  std::size_t draw(RandomStream& rng) const;

 private:
  std::size_t draw_slow(RandomStream& rng, std::uint64_t first_word) const;

  std::vector<Rational> cumulative_;
  Rational total_ = 0;
  std::size_t last_positive_ = 0;
  /// floor(C_i 2⁶⁴ / W) for i < last_positive_.
  std::vector<std::uint64_t> thresholds_;
};

}  // namespace motzkin
