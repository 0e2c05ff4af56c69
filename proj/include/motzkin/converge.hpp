#pragma once

#include "motzkin/dist_table.hpp"
#include "motzkin/engine.hpp"
#include "motzkin/limit_chains.hpp"
#include "motzkin/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace motzkin {

/// ½ Σ |p − q| over the union of the listed atoms, exact.
Rational tv_distance(const DistTable& p, const DistTable& q);

/// When either table was truncated the true distance lies within
/// value ± slack, slack = (truncated(p) + truncated(q)) / 2.
struct TvBounds {
  Rational value;
  Rational slack;
};
TvBounds tv_bounds(const DistTable& p, const DistTable& q);

struct LadderRow {
  int L = 0;
  Rational tv_left;
  Rational tv_right;
  /// theorem1 ladders: tv between the law of (γ_0, γ_L) and the product of the limit marginals.
  std::optional<Rational> independence_gap;
  /// theorem2 ladders: Pr(γ_L <= C).
  std::optional<Rational> tightness;
  /// Largest slack over the distances in this row (0 unless a law was truncated).
  Rational slack;
};

struct LadderReport {
  std::string kind;  ///< "theorem1" or "theorem2"
  nlohmann::json params;
  std::vector<LadderRow> rows;

  bool tv_left_decreasing() const;
  bool tv_right_decreasing() const;
  /// Independence gap (theorem1) or tightness probe (theorem2) strictly decreasing.
  bool last_column_decreasing() const;

  /// Exact values as "p/q" next to float diagnostics.
  nlohmann::json to_json() const;
  /// Columns L, tv_left, tv_right, then independence_gap or tightness (floats).
  std::string to_csv() const;
};

struct LadderOptions {
  TruncationOptions truncation;
  /// Rows are independent; they are computed concurrently and collected in order.
  bool parallel = true;
};

/// Finite-L laws against the two independent P(σ) chains started from the
/// size-biased boundary laws. Requires σ > 0 unless `allow_degenerate_sigma`.
LadderReport theorem1_ladder(const Rational& sigma, const BoundaryMeasure& alpha, const BoundaryMeasure& beta,
                             int K, const std::vector<int>& L_list, const LadderOptions& options = {},
                             bool allow_degenerate_sigma = false);

/// Geometric right boundary with ratio ρ₁ >= 1: left laws against the Q(ρ₁, σ)
/// chain from the q-deformed law, anchored right increments against the ξ
/// partial sums, and the probe Pr(γ_L <= C).
LadderReport theorem2_ladder(const Rational& sigma, const BoundaryMeasure& alpha, const Rational& rho1, int K,
                             const std::vector<int>& L_list, int C = 10, const LadderOptions& options = {});

/// σ = 0, α = β = (1, 1), L = 2N: exact Pr(γ_{2N} = 1) and its distance to 4/5.
struct DegenerateRow {
  int N = 0;
  Rational prob;
  Rational gap;
};
std::vector<DegenerateRow> degenerate_endpoint_sequence(const std::vector<int>& N_list);

}  // namespace motzkin
