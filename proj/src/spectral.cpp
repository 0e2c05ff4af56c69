#include "motzkin/spectral.hpp"

#include "motzkin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace motzkin::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

struct ThetaSum {
  double value = 0;
  double absolute = 0;
};

ThetaSum theta_sum(const Function& f, double rho, int nodes) {
  const double h = kPi / nodes;
  const bool critical = rho == 1.0;
  ThetaSum s;
  for (int j = 0; j <= nodes; ++j) {
    const double theta = j * h;
    double weight;
    if (critical) {
      const double c = std::cos(theta / 2);
      weight = 4 * c * c;
    } else {
      const double sn = std::sin(theta);
      weight = 4 * sn * sn / (1 - 2 * rho * std::cos(theta) + rho * rho);
    }
    double term = f(2 * std::cos(theta)) * weight;
    if (j == 0 || j == nodes) term /= 2;
    s.value += term;
    s.absolute += std::abs(term);
  }
  s.value *= h / (2 * kPi);
  s.absolute *= h / (2 * kPi);
  return s;
}

double power(double base, int exponent) { return std::pow(base, exponent); }

nlohmann::json rational_param(const Rational& r) { return to_string(r); }

}  // namespace

double cheb_u(int n, double x) {
  if (n < 0) return 0;
  double prev = 0;
  double cur = 1;
  for (int k = 0; k < n; ++k) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double cheb_u_closed(int n, double z) {
  if (n < 0) return 0;
  if (z == 1.0) return n + 1;
  if (z == -1.0) return (n % 2 == 0 ? 1 : -1) * (n + 1);
  return (std::pow(z, n + 1) - std::pow(z, -(n + 1))) / (z - 1 / z);
}

GaussU::GaussU(int nodes) {
  if (nodes < 1) throw std::invalid_argument("GaussU needs at least one node");
  x_.resize(static_cast<std::size_t>(nodes));
  w_.resize(static_cast<std::size_t>(nodes));
  for (int k = 1; k <= nodes; ++k) {
    const double a = k * kPi / (nodes + 1);
    const double s = std::sin(a);
    x_[static_cast<std::size_t>(k - 1)] = 2 * std::cos(a);
    w_[static_cast<std::size_t>(k - 1)] = 2.0 / (nodes + 1) * s * s;
  }
}

double GaussU::integrate(const Function& f) const {
  double s = 0;
  for (std::size_t k = 0; k < x_.size(); ++k) s += w_[k] * f(x_[k]);
  return s;
}

double theta_rule(const Function& f, double rho, int nodes) {
  if (nodes < 2) throw std::invalid_argument("theta rule needs at least two intervals");
  if (rho < 0) throw std::invalid_argument("rho must be non-negative");
  return theta_sum(f, rho, nodes).value;
}

Converged theta_converged(const Function& f, double rho, const QuadratureOptions& options, double scale) {
  int n = std::max(2, options.initial_nodes);
  ThetaSum prev = theta_sum(f, rho, n);
  while (n < options.max_nodes) {
    n *= 2;
    const ThetaSum cur = theta_sum(f, rho, n);
    const double ref = std::max({std::abs(cur.value), cur.absolute * 1e-3, scale});
    if (std::abs(cur.value - prev.value) <= options.rel_tol * ref) return {cur.value, n};
    prev = cur;
  }
  const ThetaSum last = theta_sum(f, rho, n);
  throw QuadratureError("theta quadrature did not stabilize", last.value, prev.value, n);
}

MixedMeasure::MixedMeasure(double rho) : rho_(rho) {
  if (!(rho >= 0)) throw std::invalid_argument("mixed measure needs rho >= 0");
}

double MixedMeasure::density(double x) const {
  if (x <= -2 || x >= 2) return 0;
  return std::sqrt(4 - x * x) / (2 * kPi * (1 - x * rho_ + rho_ * rho_));
}

double MixedMeasure::atom_location() const { return rho_ > 0 ? rho_ + 1 / rho_ : 0; }

double MixedMeasure::atom_mass() const { return rho_ > 1 ? 1 - 1 / (rho_ * rho_) : 0; }

double MixedMeasure::top_of_support() const { return has_atom() ? atom_location() : 2.0; }

double viennot_integral(int m, int n, int L, double sigma) {
  if (m < 0 || n < 0 || L < 1) throw std::invalid_argument("viennot_integral needs m, n >= 0 and L >= 1");
  const GaussU rule((L + m + n + 1) / 2 + 1);
  return rule.integrate([&](double x) { return cheb_u(m, x) * cheb_u(n, x) * power(x + sigma, L); });
}

MomentParts mu_moment(const Function& F, double rho, double sigma, int L, const QuadratureOptions& options) {
  if (L < 0) throw std::invalid_argument("mu_moment needs L >= 0");
  const MixedMeasure mu(rho);
  MomentParts parts;
  const Converged c = theta_converged([&](double x) { return F(x) * power(x + sigma, L); }, rho, options);
  parts.continuous = c.value;
  parts.nodes = c.nodes;
  if (mu.has_atom()) {
    const double a = mu.atom_location();
    parts.atom = mu.atom_mass() * F(a) * power(a + sigma, L);
  }
  return parts;
}

Rational h_m_dp(int m, const Rational& rho, int L, const Rational& sigma) {
  if (m < 0 || L < 1) throw std::invalid_argument("h_m_dp needs m >= 0 and L >= 1");
  // Every path from m in L steps stays below m + L, so this bound loses nothing.
  const WeightTable table = weight_table(WeightConfig::constant(sigma), L, m + L);
  Rational sum = 0;
  for (int n = std::max(0, m - L); n <= m + L; ++n) sum += pow(rho, static_cast<unsigned long>(n)) * table(m, n);
  return sum;
}

double boundary_series(const BoundaryMeasure& measure, double x, int N) {
  double prev = 0;
  double cur = 1;
  double sum = 0;
  for (int n = 0; n <= N; ++n) {
    sum += to_double(measure.weight(n)) * cur;
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json j = {{"check", check}, {"params", params}, {"lhs", lhs}, {"rhs", rhs},
                      {"residual", residual}, {"tol", tol}, {"pass", pass}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

Certificate viennot_check(int m, int n, int L, const Rational& sigma, double tol) {
  Certificate c;
  c.check = "viennot";
  c.params = {{"m", m}, {"n", n}, {"L", L}, {"sigma", rational_param(sigma)}};
  c.tol = tol;
  const double s = to_double(sigma);
  const WeightTable table = weight_table(WeightConfig::constant(sigma), L, std::max(m, n) + L);
  c.lhs = viennot_integral(m, n, L, s);
  c.rhs = to_double(table(m, n));
  if (c.rhs != 0) {
    c.residual = std::abs(c.lhs - c.rhs) / std::abs(c.rhs);
  } else {
    // The exact rule's nodes can sit on zeros of u_m or u_n, so the scale uses a dense rule.
    const GaussU rule(256);
    const double absolute =
        rule.integrate([&](double x) { return std::abs(cheb_u(m, x) * cheb_u(n, x) * power(x + s, L)); });
    c.residual = std::abs(c.lhs) / absolute;
    c.extra["residual_reference"] = "absolute integrand";
  }
  c.pass = c.residual <= tol;
  return c;
}

Certificate lemma42_check(int m, const Rational& rho, int L, const Rational& sigma, double tol) {
  if (sgn(rho) <= 0) throw std::invalid_argument("lemma42_check needs rho > 0");
  Certificate c;
  c.check = "lemma42";
  c.params = {{"m", m}, {"rho", rational_param(rho)}, {"L", L}, {"sigma", rational_param(sigma)}};
  c.tol = tol;
  c.lhs = to_double(h_m_dp(m, rho, L, sigma));
  const MomentParts parts = mu_moment([m](double x) { return cheb_u(m, x); }, to_double(rho), to_double(sigma), L);
  c.rhs = parts.value();
  c.residual = std::abs(c.lhs - c.rhs) / std::abs(c.lhs);
  c.pass = c.residual <= tol;
  c.extra["atom_present"] = parts.atom != 0;
  c.extra["atom_term"] = parts.atom;
  c.extra["residual_without_atom"] = std::abs(c.lhs - parts.continuous) / std::abs(c.lhs);
  c.extra["nodes"] = parts.nodes;
  return c;
}

Certificate mass_check(const Rational& rho, double tol) {
  Certificate c;
  c.check = "mu_mass";
  c.params = {{"rho", rational_param(rho)}};
  c.tol = tol;
  const MomentParts parts = mu_moment([](double) { return 1.0; }, to_double(rho), 0.0, 0);
  c.lhs = parts.value();
  c.rhs = 1.0;
  c.residual = std::abs(c.lhs - 1.0);
  c.pass = c.residual <= tol;
  c.extra["atom_mass"] = parts.atom;
  return c;
}

std::vector<RatioRow> ratio_probe(const Function& F, const MixedMeasure& measure, double sigma,
                                  const std::vector<int>& L_list, const QuadratureOptions& options) {
  if (!(sigma > 0)) throw std::invalid_argument("ratio_probe needs sigma > 0");
  const double R = measure.top_of_support();
  std::vector<RatioRow> rows;
  for (int L : L_list) {
    if (L < 0) throw std::invalid_argument("ratio_probe needs L >= 0");
    auto scaled = [&](double x) { return power((x + sigma) / (R + sigma), L); };
    const Converged den = theta_converged(scaled, measure.rho(), options);
    const Converged num = theta_converged([&](double x) { return F(x) * scaled(x); }, measure.rho(), options,
                                          options.rel_tol > 0 ? std::abs(den.value) : 0);
    double d = den.value;
    double u = num.value;
    if (measure.has_atom()) {
      d += measure.atom_mass();
      u += measure.atom_mass() * F(R);
    }
    RatioRow row;
    row.L = L;
    row.denominator_positive = d > 0;
    row.ratio = u / d;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace motzkin::spectral
