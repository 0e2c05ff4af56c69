#pragma once

#include "motzkin/dist_table.hpp"
#include "motzkin/engine.hpp"
#include "motzkin/model.hpp"
#include "motzkin/rng.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace motzkin {

/// R_k(n) = total weight of completions from height n at time k, including β
/// at the end: R_L = β (truncated at H), R_k(n) = a_n R_{k+1}(n+1) + b_n R_{k+1}(n)
/// + c_n R_{k+1}(n−1). Row k is exact for n <= H − (L − k), which covers every
/// height reachable from a start in [0, H − L].
class BackwardTable {
 public:
  int length() const { return length_; }
  int height_bound() const { return height_bound_; }
  /// Largest admitted starting height, H − L.
  int start_cap() const { return height_bound_ - length_; }
  const Rational& operator()(int k, int n) const;
  const WeightConfig& weights() const { return weights_; }
  /// Exact mass of starting heights above start_cap() (geometric alpha only).
  const Rational& start_tail_mass() const { return start_tail_mass_; }

 private:
  friend BackwardTable build_backward_table(const ModelSpec&, const TruncationOptions&);
  BackwardTable(WeightConfig w) : weights_(std::move(w)) {}

  int length_ = 0;
  int height_bound_ = 0;
  WeightConfig weights_;
  std::vector<std::vector<Rational>> rows_;
  Rational start_tail_mass_ = 0;
};

/// H = max support of alpha + L; for geometric alpha the start is cut at the
/// smallest m* >= L whose exact dropped mass is below the tolerance.
/// Cost O(H·L) rational operations.
BackwardTable build_backward_table(const ModelSpec& spec, const TruncationOptions& options = {});

/// Exact conditional law Pr(γ_{k+1} = n + d | γ_k = n) for d = −1, 0, +1.
std::array<Rational, 3> conditional_row(const BackwardTable& table, int k, int n);

/// Exact sequential sampler from Pr_L; rows are precomputed once.
class PathSampler {
 public:
  PathSampler(BackwardTable table, const BoundaryMeasure& alpha);

  const BackwardTable& table() const { return table_; }

  /// Deterministic in (seed, stream).
  MotzkinPath sample(std::uint64_t seed, std::uint64_t stream = 0) const;
  /// Path i uses stream i. Threads split the index range; output is identical
  /// for any thread count.
  std::vector<MotzkinPath> sample_many(std::uint64_t seed, std::size_t count, unsigned threads = 1) const;

 private:
  BackwardTable table_;
  ExactDiscrete start_;
  /// steps_[k][n] draws among n−1, n, n+1 (index 0, 1, 2).
  std::vector<std::vector<ExactDiscrete>> steps_;
};

MotzkinPath sample_path(const BackwardTable& table, const BoundaryMeasure& alpha, std::uint64_t seed);

/// Empirical law of the selected coordinates; denominators equal the sample count.
DistTable empirical_fdd(std::span<const MotzkinPath> paths, std::span<const int> coords);

/// One comma-separated height list per line.
void write_paths_text(std::ostream& out, std::span<const MotzkinPath> paths);

/// Little-endian layout: "MZKP", u32 version (1), u32 L, u64 count, then
/// count × (L+1) u32 heights, path by path.
void write_paths_binary(std::ostream& out, std::span<const MotzkinPath> paths);
std::vector<MotzkinPath> read_paths_binary(std::istream& in);

}  // namespace motzkin
