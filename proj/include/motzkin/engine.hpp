#pragma once

#include "motzkin/dist_table.hpp"
#include "motzkin/model.hpp"
#include "motzkin/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace motzkin {

/// 𝔚⁽ᴸ⁾_{m,n} for 0 <= m, n <= H, counting only paths that stay <= H.
/// Entries are exact for the unrestricted sum whenever H >= max(m, n) + L.
class WeightTable {
 public:
  WeightTable(int length, int height_bound, std::vector<Rational> entries);

  int length() const { return length_; }
  int height_bound() const { return height_bound_; }
  /// Zero outside [0, H]².
  Rational operator()(int m, int n) const;

  /// "m,n,value" rows with value as "p/q".
  std::string to_csv() const;

 private:
  int length_;
  int height_bound_;
  std::vector<Rational> entries_;  // row-major (H+1)×(H+1)
};

/// Builds the table by the recursion on the left index,
/// 𝔚⁽ʲ⁺¹⁾_{m,n} = a_m 𝔚⁽ʲ⁾_{m+1,n} + b_m 𝔚⁽ʲ⁾_{m,n} + c_m 𝔚⁽ʲ⁾_{m−1,n}.
/// Cost O(H²L). Requires L >= 1 and H >= L.
WeightTable weight_table(const WeightConfig& weights, int length, int height_bound);

/// The tridiagonal operator 𝕄_t for constant weights: row n holds 1/t at
/// column n−1, σ at n and t at n+1. Applied to vectors indexed 0..H; the
/// entry at H ignores the (absent) coordinate H+1.
class TransferMatrix {
 public:
  TransferMatrix(Rational t, Rational sigma, int height_bound);

  const Rational& parameter() const { return t_; }
  int height_bound() const { return height_bound_; }
  Rational entry(int row, int col) const;

  /// 𝕄_t v; `v` is read as zero beyond its length, the result has H+1 entries.
  std::vector<Rational> apply(std::span<const Rational> v) const;
  /// 𝕄_{1/t}, which equals the transpose of 𝕄_t.
  TransferMatrix transpose() const;

 private:
  Rational t_;
  Rational t_inv_;
  Rational sigma_;
  int height_bound_;
};

/// T_L(k): total weight of unconstrained {−1, 0, +1} step sequences of length
/// L with net displacement k, horizontal steps weighted σ. Equals 𝔚⁽ᴸ⁾_{m,m+k}
/// for every m >= L. Zero for |k| > L.
Rational free_weight(int length, int displacement, const Rational& sigma);

/// Σ_k T_L(k) r^k = (1/r + σ + r)^L.
Rational free_weight_series(int length, const Rational& sigma, const Rational& r);

/// S_j(m) = Σ_n 𝔚⁽ʲ⁾_{m,n} β_n for m = 0..top, exact (no height truncation).
std::vector<Rational> backward_sums(const WeightConfig& weights, const BoundaryMeasure& beta,
                                    int steps, int top);
/// A_j(n) = Σ_m α_m 𝔚⁽ʲ⁾_{m,n} for n = 0..top, exact.
std::vector<Rational> forward_sums(const WeightConfig& weights, const BoundaryMeasure& alpha,
                                   int steps, int top);

/// 𝔠_{α,β,L} = Σ_{m,n} α_m 𝔚⁽ᴸ⁾_{m,n} β_n. Geometric left tails (m >= L) are
/// summed in closed form through the free weights.
Rational normalization_constant(const ModelSpec& spec);

struct TruncationOptions {
  /// Laws with unbounded heights (geometric alpha) are truncated so the exact
  /// dropped mass is below this bound.
  Rational tail_tolerance = Rational(1, Integer("1000000000000000000000000000000"));
  int max_height = 1 << 13;
};

/// Exact joint law of (γ_{k_1}, …, γ_{k_r}) under Pr_L for strictly
/// increasing coordinates in [0, L]. Atoms of zero probability are omitted.
DistTable fdd_law(const ModelSpec& spec, std::span<const int> coords,
                  const TruncationOptions& options = {});

/// Law of (γ_0, …, γ_K).
DistTable left_fdd_law(const ModelSpec& spec, int K, const TruncationOptions& options = {});

/// Plain: law of (γ_L, γ_{L−1}, …, γ_{L−K}).
/// Anchored: law of (γ_{L−1} − γ_L, …, γ_{L−K} − γ_L); for K = 0 the empty tuple.
DistTable right_fdd_law(const ModelSpec& spec, int K, bool anchored,
                        const TruncationOptions& options = {});

/// Law of (γ_0, γ_L).
DistTable endpoint_law(const ModelSpec& spec, const TruncationOptions& options = {});

/// E[z₀^{γ_0} z₁^{γ_L}] as an explicit double sum over the weight table.
Rational endpoint_pgf_direct(const ModelSpec& spec, const Rational& z0, const Rational& z1);
/// The same quantity as V_α(z₀)ᵀ 𝕄₁ᴸ W_β(z₁) / 𝔠.
Rational endpoint_pgf_matrix(const ModelSpec& spec, const Rational& z0, const Rational& z1);
/// Computes both routes, throws std::logic_error if they differ, returns the value.
/// Requires z₀, z₁ in (0, 1].
Rational endpoint_pgf(const ModelSpec& spec, const Rational& z0, const Rational& z1);

/// E[z₀^{γ_0} ∏_{j=1..K} t_j^{γ_j − γ_{j−1}}] via V_α(z₀)ᵀ 𝕄_{t_1}⋯𝕄_{t_K} 𝕄₁^{L−K} W_β(1) / 𝔠.
/// Constant weights and finite-support alpha and beta only.
Rational left_increment_pgf(const ModelSpec& spec, const Rational& z0, std::span<const Rational> t);

}  // namespace motzkin
