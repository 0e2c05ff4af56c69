#include "motzkin/limit_chains.hpp"

#include <map>
#include <stdexcept>

namespace motzkin {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

/// Unnormalized weight of n and the exact total mass of the law.
struct LawWeights {
  std::function<Rational(int)> weight;
  Rational total;
  int finite_top = -1;  ///< last support point for finite-support laws
};

LawWeights law_weights(const InitialLawSpec& spec) {
  if (const auto* s = std::get_if<SizeBiased>(&spec)) {
    const BoundaryMeasure& m = s->measure;
    LawWeights lw;
    lw.weight = [m](int n) -> Rational { return Rational(n + 1) * m.weight(n); };
    if (m.is_finite()) {
      lw.finite_top = m.max_support();
      for (int n = 0; n <= lw.finite_top; ++n) lw.total += lw.weight(n);
    } else {
      const Rational& r = m.ratio();
      if (r >= 1) throw std::domain_error("size-biased geometric law needs ratio < 1");
      lw.total = 1 / ((1 - r) * (1 - r));
    }
    return lw;
  }
  if (const auto* q = std::get_if<QDeformed>(&spec)) {
    const BoundaryMeasure& m = q->measure;
    const Rational rho1 = q->rho1;
    if (rho1 < 1) throw std::domain_error("q-deformed law needs rho1 >= 1");
    LawWeights lw;
    lw.weight = [m, rho1](int n) -> Rational { return m.weight(n) * chebyshev_u_at_dual(n, rho1); };
    if (m.is_finite()) {
      lw.finite_top = m.max_support();
      for (int n = 0; n <= lw.finite_top; ++n) lw.total += lw.weight(n);
    } else {
      const Rational& r = m.ratio();
      if (r * rho1 >= 1) throw std::domain_error("q-deformed geometric law needs rho0 * rho1 < 1");
      // Σ rⁿ u_n(x) = 1 / (1 − r x + r²) with x = ρ₁ + 1/ρ₁.
      const Rational x = rho1 + 1 / rho1;
      lw.total = 1 / (1 - r * x + r * r);
    }
    return lw;
  }
  const auto& g = std::get<TwoGeometrics>(spec);
  if (sgn(g.rho0) <= 0 || sgn(g.rho_hat) <= 0) throw std::domain_error("geometric parameters must be positive");
  const Rational p = g.rho0 * g.rho_hat;
  const Rational q = g.rho0 / g.rho_hat;
  if (p >= 1 || q >= 1) throw std::domain_error("two-geometrics law needs rho0*rho_hat < 1 and rho0/rho_hat < 1");
  LawWeights lw;
  lw.weight = [p, q](int n) -> Rational {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) s += pow(p, static_cast<unsigned long>(k)) * pow(q, static_cast<unsigned long>(n - k));
    return (1 - p) * (1 - q) * s;
  };
  lw.total = 1;
  return lw;
}

DistTable build_law(const LawWeights& lw, int cap) {
  std::map<Point, Rational> probs;
  Rational kept = 0;
  for (int n = 0; n <= cap; ++n) {
    if (lw.finite_top >= 0 && n > lw.finite_top) break;
    Rational p = lw.weight(n) / lw.total;
    if (sgn(p) == 0) continue;
    kept += p;
    probs.emplace(Point{n}, std::move(p));
  }
  return DistTable::from_probabilities(std::move(probs), 1 - kept);
}

}  // namespace

KernelSpec KernelSpec::bessel(Rational sigma) {
  if (sgn(sigma) < 0) throw std::invalid_argument("sigma must be non-negative");
  return KernelSpec(true, Rational(1), std::move(sigma));
}

KernelSpec KernelSpec::deformed(Rational rho, Rational sigma) {
  if (sgn(rho) <= 0) throw std::invalid_argument("rho must be positive");
  if (sgn(sigma) < 0) throw std::invalid_argument("sigma must be non-negative");
  return KernelSpec(false, std::move(rho), std::move(sigma));
}

Rational chebyshev_u_at_dual(int n, const Rational& rho) {
  if (n < 0) return 0;
  const Rational rho2 = rho * rho;
  Rational sum = 0;
  Rational term = 1;
  for (int k = 0; k <= n; ++k) {
    sum += term;
    term *= rho2;
  }
  return sum / pow(rho, static_cast<unsigned long>(n));
}

KernelRow kernel_row(const KernelSpec& kernel, int n) {
  if (n < 0) throw std::invalid_argument("kernel_row needs n >= 0");
  const Rational& sigma = kernel.sigma();
  if (kernel.is_bessel()) {
    const Rational denom = (2 + sigma) * (n + 1);
    return {Rational(n) / denom, sigma / (2 + sigma), Rational(n + 2) / denom};
  }
  const Rational& rho = kernel.rho();
  const Rational total = rho + 1 / rho + sigma;
  const Rational h = chebyshev_u_at_dual(n, rho);
  return {chebyshev_u_at_dual(n - 1, rho) / (h * total), sigma / total,
          chebyshev_u_at_dual(n + 1, rho) / (h * total)};
}

DistTable initial_law(const InitialLawSpec& spec, int support_cap) {
  if (support_cap < 0) throw std::invalid_argument("support cap must be non-negative");
  return build_law(law_weights(spec), support_cap);
}

DistTable initial_law(const InitialLawSpec& spec, const TruncationOptions& options) {
  const LawWeights lw = law_weights(spec);
  if (lw.finite_top >= 0) return build_law(lw, lw.finite_top);
  Rational kept = 0;
  int cap = 0;
  for (;; ++cap) {
    kept += lw.weight(cap) / lw.total;
    if (1 - kept <= options.tail_tolerance || cap >= options.max_height) break;
  }
  return build_law(lw, cap);
}

DistTable XiLaw::table() const {
  return DistTable::from_probabilities({{{-1}, down}, {{0}, stay}, {{1}, up}});
}

XiLaw xi_pmf(const Rational& rho1, const Rational& sigma) {
  if (rho1 < 1) throw std::domain_error("xi law needs rho1 >= 1");
  if (sgn(sigma) <= 0) throw std::domain_error("xi law needs sigma > 0");
  const Rational total = rho1 + 1 / rho1 + sigma;
  return {rho1 / total, sigma / total, (1 / rho1) / total};
}

DistTable xi_partial_sum_law(const XiLaw& xi, int K) {
  if (K < 1) throw std::invalid_argument("xi_partial_sum_law needs K >= 1");
  std::map<Point, Rational> cur{{Point{}, Rational(1)}};
  for (int k = 0; k < K; ++k) {
    std::map<Point, Rational> next;
    for (const auto& [p, prob] : cur) {
      const int last = p.empty() ? 0 : p.back();
      const Rational* steps[] = {&xi.down, &xi.stay, &xi.up};
      for (int d = -1; d <= 1; ++d) {
        const Rational& s = *steps[d + 1];
        if (sgn(s) == 0) continue;
        Point q = p;
        q.push_back(last + d);
        next[std::move(q)] += prob * s;
      }
    }
    cur = std::move(next);
  }
  return DistTable::from_probabilities(std::move(cur));
}

DistTable chain_fdd_law(const KernelSpec& kernel, const DistTable& init, int K) {
  if (K < 0) throw std::invalid_argument("chain_fdd_law needs K >= 0");
  if (init.dimension() != 1) throw std::invalid_argument("initial law must be over 1-tuples");
  std::map<Point, Rational> cur;
  for (const auto& a : init.atoms()) cur.emplace(a.point, a.prob);
  std::map<int, KernelRow> rows;
  for (int k = 0; k < K; ++k) {
    std::map<Point, Rational> next;
    for (const auto& [p, prob] : cur) {
      const int n = p.back();
      auto it = rows.find(n);
      if (it == rows.end()) it = rows.emplace(n, kernel_row(kernel, n)).first;
      const KernelRow& row = it->second;
      const Rational* steps[] = {&row.down, &row.stay, &row.up};
      for (int d = -1; d <= 1; ++d) {
        const Rational& s = *steps[d + 1];
        if (sgn(s) == 0) continue;
        Point q = p;
        q.push_back(n + d);
        next.emplace(std::move(q), prob * s);
      }
    }
    cur = std::move(next);
  }
  return DistTable::from_probabilities(std::move(cur), init.truncated_mass());
}

ChainSimulator::ChainSimulator(KernelSpec kernel, const InitialLawSpec& init, int max_steps,
                               const TruncationOptions& options)
    : kernel_(std::move(kernel)), max_steps_(max_steps) {
  if (max_steps_ < 0) throw std::invalid_argument("max_steps must be non-negative");
  DistTable law = initial_law(init, options);
  std::vector<Rational> probs;
  int top = 0;
  for (const auto& a : law.atoms()) {
    start_values_.push_back(a.point[0]);
    probs.push_back(a.prob);
    top = std::max(top, a.point[0]);
  }
  start_ = ExactDiscrete(probs);
  for (int n = 0; n <= top + max_steps_; ++n) {
    KernelRow r = kernel_row(kernel_, n);
    const Rational w[] = {r.down, r.stay, r.up};
    rows_.emplace_back(w);
  }
}

std::vector<int> ChainSimulator::simulate(int steps, std::uint64_t seed, std::uint64_t stream) const {
  if (steps < 0 || steps > max_steps_) throw std::invalid_argument("steps outside the simulator's range");
  RandomStream rng(seed, stream);
  std::vector<int> path;
  path.reserve(idx(steps + 1));
  path.push_back(start_values_[start_.draw(rng)]);
  for (int k = 0; k < steps; ++k) {
    const int n = path.back();
    path.push_back(n - 1 + static_cast<int>(rows_[idx(n)].draw(rng)));
  }
  return path;
}

std::vector<int> simulate_chain(const KernelSpec& kernel, const InitialLawSpec& init, int steps,
                                std::uint64_t seed) {
  return ChainSimulator(kernel, init, steps).simulate(steps, seed);
}

}  // namespace motzkin
