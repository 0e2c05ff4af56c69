#pragma once

#include "motzkin/model.hpp"
#include "motzkin/rational.hpp"

#include <json.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace motzkin::spectral {

/// Monic Chebyshev polynomial of the second kind on [−2, 2]:
/// u_{−1} = 0, u_0 = 1, x u_n = u_{n+1} + u_{n−1}.
double cheb_u(int n, double x);

/// (z^{n+1} − z^{−(n+1)}) / (z − 1/z), i.e. u_n(z + 1/z); n + 1 at z = ±1.
double cheb_u_closed(int n, double z);

using Function = std::function<double(double)>;

/// Gauss rule for the semicircle law (1/2π)√(4−x²)dx on [−2, 2]. Weights sum
/// to 1; exact for polynomials of degree <= 2N − 1.
class GaussU {
 public:
  explicit GaussU(int nodes);

  int nodes() const { return static_cast<int>(x_.size()); }
  double integrate(const Function& f) const;

 private:
  std::vector<double> x_;
  std::vector<double> w_;
};

/// (1/2π)∫_{−2}^{2} f(x)√(4−x²)/(1 − xρ + ρ²) dx by the trapezoidal rule in
/// θ (x = 2cosθ) on N + 1 nodes. ρ = 1 uses the bounded form 4cos²(θ/2).
double theta_rule(const Function& f, double rho, int nodes);

struct QuadratureOptions {
  int initial_nodes = 64;
  int max_nodes = 1 << 18;
  double rel_tol = 1e-13;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double last, double previous, int nodes)
      : std::runtime_error(what), last_value(last), previous_value(previous), nodes(nodes) {}
  double last_value;
  double previous_value;
  int nodes;
};

struct Converged {
  double value = 0;
  int nodes = 0;
};

/// Doubles the node count until two successive values agree to rel_tol
/// (relative to `scale` when given, otherwise to the value itself).
Converged theta_converged(const Function& f, double rho, const QuadratureOptions& options = {},
                          double scale = 0);

/// μ_ρ: density (1/2π)√(4−x²)/(1 − xρ + ρ²) on [−2, 2] (the semicircle at ρ = 0)
/// plus an atom of mass (1 − 1/ρ²)₊ at ρ + 1/ρ.
class MixedMeasure {
 public:
  explicit MixedMeasure(double rho);

  double rho() const { return rho_; }
  double density(double x) const;
  bool has_atom() const { return rho_ > 1; }
  double atom_location() const;
  double atom_mass() const;
  /// ρ + 1/ρ when the atom is present, else 2.
  double top_of_support() const;

 private:
  double rho_;
};

/// (1/2π)∫ u_m(x) u_n(x) (x+σ)^L √(4−x²) dx with ⌈(L+m+n)/2⌉ + 1 Gauss nodes.
double viennot_integral(int m, int n, int L, double sigma);

struct MomentParts {
  double continuous = 0;
  double atom = 0;
  int nodes = 0;
  double value() const { return continuous + atom; }
};

/// ∫ F(x)(x+σ)^L μ_ρ(dx); the continuous part through theta_converged.
MomentParts mu_moment(const Function& F, double rho, double sigma, int L,
                      const QuadratureOptions& options = {});

/// h_m(ρ) = Σ_n ρⁿ 𝔚⁽ᴸ⁾_{m,n} for constant weights σ, exact.
Rational h_m_dp(int m, const Rational& rho, int L, const Rational& sigma);

/// Σ_{n<=N} α_n u_n(x): the boundary generating series truncated at N.
double boundary_series(const BoundaryMeasure& measure, double x, int N);

/// One certification record: {check, params, lhs, rhs, residual, tol, pass}.
struct Certificate {
  std::string check;
  nlohmann::json params;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
  double tol = 0;
  bool pass = false;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Compares viennot_integral with the exact 𝔚⁽ᴸ⁾_{m,n}. The residual is
/// relative to the exact value; when that value is 0 (|m − n| > L) it is taken
/// relative to the quadrature of the absolute integrand.
Certificate viennot_check(int m, int n, int L, const Rational& sigma, double tol = 1e-10);

/// |h_m_dp − mu_moment(u_m)| <= tol·|h_m_dp|. `extra` holds the atom mass and
/// the residual obtained when the atom term is dropped.
Certificate lemma42_check(int m, const Rational& rho, int L, const Rational& sigma, double tol = 1e-8);

/// mu_moment(1, ρ, σ, 0) against 1.
Certificate mass_check(const Rational& rho, double tol = 1e-10);

struct RatioRow {
  int L = 0;
  double ratio = 0;
  bool denominator_positive = true;
};

/// ∫F(x)(x+σ)^L dμ / ∫(x+σ)^L dμ for each L. Both integrals are scaled by
/// (R+σ)^{−L}, R the top of the support, to stay in range.
std::vector<RatioRow> ratio_probe(const Function& F, const MixedMeasure& measure, double sigma,
                                  const std::vector<int>& L_list, const QuadratureOptions& options = {});

}  // namespace motzkin::spectral
