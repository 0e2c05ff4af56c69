#pragma once

#include "motzkin/dist_table.hpp"
#include "motzkin/engine.hpp"
#include "motzkin/model.hpp"
#include "motzkin/rng.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace motzkin {

/// Nearest-neighbour kernels on ℤ≥0 that arise as limit boundary processes.
///
/// Bessel(σ):   up (n+2)/((2+σ)(n+1)), stay σ/(2+σ), down n/((2+σ)(n+1)).
/// Deformed(ρ, σ): Doob transform of the weights (1, σ, 1) by h(n) = u_n(ρ + 1/ρ),
///   i.e. Q_{n,m} = w(n→m) h(m) / ((ρ + 1/ρ + σ) h(n)). Deformed(1, σ) = Bessel(σ).
class KernelSpec {
 public:
  static KernelSpec bessel(Rational sigma);
  static KernelSpec deformed(Rational rho, Rational sigma);

  bool is_bessel() const { return bessel_; }
  /// 1 for the Bessel kernel.
  const Rational& rho() const { return rho_; }
  const Rational& sigma() const { return sigma_; }

 private:
  KernelSpec(bool bessel, Rational rho, Rational sigma)
      : bessel_(bessel), rho_(std::move(rho)), sigma_(std::move(sigma)) {}
  bool bessel_;
  Rational rho_;
  Rational sigma_;
};

struct KernelRow {
  Rational down;
  Rational stay;
  Rational up;
};

/// u_n(ρ + 1/ρ) = ρ^{−n} (1 + ρ² + ⋯ + ρ^{2n}); equals n + 1 at ρ = 1.
Rational chebyshev_u_at_dual(int n, const Rational& rho);

/// Exact transition probabilities out of n (down is 0 at n = 0).
KernelRow kernel_row(const KernelSpec& kernel, int n);

/// Laws of the starting point of a limit chain.
struct SizeBiased {
  BoundaryMeasure measure;  ///< Pr(n) ∝ (n+1) weight_n
};
struct QDeformed {
  BoundaryMeasure measure;  ///< Pr(n) ∝ weight_n u_n(ρ₁ + 1/ρ₁)
  Rational rho1;
};
struct TwoGeometrics {
  Rational rho0;  ///< law of G_{ρ₀ρ̂} + G̃_{ρ₀/ρ̂}, independent, Pr(G_p = n) = (1−p)pⁿ
  Rational rho_hat;
};
using InitialLawSpec = std::variant<SizeBiased, QDeformed, TwoGeometrics>;

/// pmf on {0, …, support_cap} with the exact dropped mass as truncated_mass.
/// Throws std::domain_error when the law is not normalizable.
DistTable initial_law(const InitialLawSpec& spec, int support_cap);
/// Picks the smallest cap with dropped mass below options.tail_tolerance.
DistTable initial_law(const InitialLawSpec& spec, const TruncationOptions& options = {});

/// Step law of the reversed increments for a geometric right boundary:
/// Pr(+1, 0, −1) ∝ (1/ρ₁, σ, ρ₁).
struct XiLaw {
  Rational down;
  Rational stay;
  Rational up;

  Rational mean() const { return up - down; }
  /// Over 1-tuples (−1), (0), (1).
  DistTable table() const;
};

/// Requires ρ₁ >= 1 and σ > 0.
XiLaw xi_pmf(const Rational& rho1, const Rational& sigma);

/// Law of (ξ₁, ξ₁+ξ₂, …, ξ₁+⋯+ξ_K): the coordinates of the anchored right increments.
DistTable xi_partial_sum_law(const XiLaw& xi, int K);

/// Exact law of (Z_0, …, Z_K) for a chain started from `init` (1-tuples).
DistTable chain_fdd_law(const KernelSpec& kernel, const DistTable& init, int K);

/// Simulates trajectories with exact rational draws. The initial law is cut at
/// the tolerance of `options`; rows are precomputed up to cap + max_steps.
class ChainSimulator {
 public:
  ChainSimulator(KernelSpec kernel, const InitialLawSpec& init, int max_steps,
                 const TruncationOptions& options = {});

  /// Z_0, …, Z_steps; deterministic in (seed, stream).
  std::vector<int> simulate(int steps, std::uint64_t seed, std::uint64_t stream = 0) const;

 private:
  KernelSpec kernel_;
  int max_steps_;
  std::vector<int> start_values_;
  ExactDiscrete start_;
  std::vector<ExactDiscrete> rows_;
};

std::vector<int> simulate_chain(const KernelSpec& kernel, const InitialLawSpec& init, int steps,
                                std::uint64_t seed);

}  // namespace motzkin
