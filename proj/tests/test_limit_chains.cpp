#include "motzkin/converge.hpp"
#include "motzkin/limit_chains.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace motzkin;

namespace {

const std::vector<Rational> kSigmas = {Rational(1, 2), Rational(1), Rational(2)};
const std::vector<Rational> kRhos = {Rational(1), Rational(3, 2), Rational(2)};

Rational step_weight(int n, int m, const Rational& sigma) { return m == n ? sigma : Rational(1); }

}  // namespace

TEST_CASE("P(1) and Q(2,1) rows") {
  const KernelRow p0 = kernel_row(KernelSpec::bessel(1), 0);
  CHECK(p0.up == Rational(2, 3));
  CHECK(p0.stay == Rational(1, 3));
  CHECK(p0.down == 0);
  const KernelRow p1 = kernel_row(KernelSpec::bessel(1), 1);
  CHECK(p1.down == Rational(1, 6));
  CHECK(p1.stay == Rational(1, 3));
  CHECK(p1.up == Rational(1, 2));
  const KernelRow q0 = kernel_row(KernelSpec::deformed(2, 1), 0);
  CHECK(q0.up == Rational(5, 7));
  CHECK(q0.stay == Rational(2, 7));
  CHECK(q0.down == 0);
}

TEST_CASE("property: kernel rows are stochastic and Q(1, sigma) = P(sigma)") {
  for (const auto& s : kSigmas)
    for (int n = 0; n <= 100; ++n) {
      const KernelRow p = kernel_row(KernelSpec::bessel(s), n);
      CHECK(p.down + p.stay + p.up == 1);
      const KernelRow q1 = kernel_row(KernelSpec::deformed(1, s), n);
      CHECK(q1.down == p.down);
      CHECK(q1.stay == p.stay);
      CHECK(q1.up == p.up);
      for (const auto& rho : kRhos) {
        const KernelRow q = kernel_row(KernelSpec::deformed(rho, s), n);
        CHECK(q.down + q.stay + q.up == 1);
      }
    }
}

TEST_CASE("property: Q is the Doob transform by q-numbers") {
  // Λ Q_{n,m} [n+1]_{ρ²} = w(n,m) [m+1]_{ρ²} ρ^{n−m}, Λ = ρ + 1/ρ + σ.
  for (const auto& s : kSigmas)
    for (const Rational rho : {Rational(1, 2), Rational(3, 2), Rational(2), Rational(3)}) {
      const Rational lambda = rho + 1 / rho + s;
      for (int n = 0; n <= 50; ++n) {
        const KernelRow q = kernel_row(KernelSpec::deformed(rho, s), n);
        const Rational lhs_base = lambda * oracle::q_number(n + 1, rho);
        CHECK(lhs_base * q.up == step_weight(n, n + 1, s) * oracle::q_number(n + 2, rho) / rho);
        CHECK(lhs_base * q.stay == step_weight(n, n, s) * oracle::q_number(n + 1, rho));
        if (n > 0) CHECK(lhs_base * q.down == step_weight(n, n - 1, s) * oracle::q_number(n, rho) * rho);
      }
    }
}

TEST_CASE("chebyshev at the dual point") {
  for (int n = 0; n <= 10; ++n) CHECK(chebyshev_u_at_dual(n, 1) == n + 1);
  CHECK(chebyshev_u_at_dual(2, 2) == Rational(21, 4));
}

TEST_CASE("initial laws") {
  const DistTable sb = initial_law(SizeBiased{BoundaryMeasure::geometric(Rational(1, 2))}, 40);
  CHECK(sb.prob({0}) == Rational(1, 4));
  CHECK(sb.prob({1}) == Rational(1, 4));
  CHECK(sb.prob({2}) == Rational(3, 16));
  // Tail oracle: Σ_{n>40}(n+1)2^{-n}/4 = (n+3)2^{-n}/4 at n = 40... summed directly.
  Rational tail = 0;
  for (int n = 41; n <= 400; ++n) tail += Rational(n + 1, 4) * pow(Rational(1, 2), n);
  CHECK(sb.truncated_mass() > tail);
  CHECK(sb.truncated_mass() - tail < pow(Rational(1, 2), 390));

  const DistTable point = initial_law(QDeformed{BoundaryMeasure::point(3), Rational(5, 2)}, 10);
  CHECK(point.size() == 1);
  CHECK(point.prob({3}) == 1);

  const DistTable fin = initial_law(SizeBiased{BoundaryMeasure::finite({1, 1})});
  CHECK(fin.prob({0}) == Rational(1, 3));
  CHECK(fin.prob({1}) == Rational(2, 3));
  CHECK(fin.truncated_mass() == 0);

  CHECK_THROWS(initial_law(SizeBiased{BoundaryMeasure::geometric(1)}, 10));
}

TEST_CASE("q-deformed law equals two independent geometrics") {
  const int cap = 80;
  const DistTable q = initial_law(QDeformed{BoundaryMeasure::geometric(Rational(1, 3)), Rational(2)}, cap);
  // Oracle: convolution of Geometric(2/3) and Geometric(1/6) by direct sums.
  const Rational p = Rational(2, 3), r = Rational(1, 6);
  for (int n = 0; n < 60; ++n) {
    Rational conv = 0;
    for (int k = 0; k <= n; ++k) conv += (1 - p) * pow(p, k) * (1 - r) * pow(r, n - k);
    CHECK(q.prob({n}) == conv);
  }
  CHECK(initial_law(TwoGeometrics{Rational(1, 3), Rational(2)}, cap) == q);
}

TEST_CASE("xi law") {
  const XiLaw a = xi_pmf(1, 1);
  CHECK(a.up == Rational(1, 3));
  CHECK(a.stay == Rational(1, 3));
  CHECK(a.down == Rational(1, 3));
  const XiLaw b = xi_pmf(2, 1);
  CHECK(b.up == Rational(1, 7));
  CHECK(b.stay == Rational(2, 7));
  CHECK(b.down == Rational(4, 7));
  for (const Rational rho : {Rational(1), Rational(5, 4), Rational(3)}) CHECK(xi_pmf(rho, Rational(1, 2)).mean() <= 0);
  CHECK_THROWS(xi_pmf(Rational(1, 2), 1));
  CHECK_THROWS(xi_pmf(2, 0));

  const DistTable s2 = xi_partial_sum_law(b, 2);
  CHECK(s2.prob({-1, -2}) == b.down * b.down);
  CHECK(s2.prob({1, 1}) == b.up * b.stay);
  CHECK(s2.prob({0, 1}) == b.stay * b.up);
}

TEST_CASE("chain laws") {
  const KernelSpec p = KernelSpec::bessel(1);
  const DistTable delta0 = DistTable::from_probabilities({{{0}, Rational(1)}});
  CHECK(chain_fdd_law(p, delta0, 0) == delta0);
  const DistTable k2 = chain_fdd_law(p, delta0, 2);
  CHECK(k2.prob({0, 1, 2}) == Rational(1, 3));
  const int first_two[] = {0, 1};
  CHECK(k2.marginal(first_two) == chain_fdd_law(p, delta0, 1));

  // Truncated initial mass is carried through.
  const DistTable init = initial_law(SizeBiased{BoundaryMeasure::geometric(Rational(1, 2))}, 20);
  const DistTable k1 = chain_fdd_law(KernelSpec::deformed(2, 1), init, 1);
  CHECK(k1.truncated_mass() == init.truncated_mass());
}

TEST_CASE("simulated chains") {
  const KernelSpec q = KernelSpec::deformed(2, 1);
  const InitialLawSpec init = QDeformed{BoundaryMeasure::geometric(Rational(1, 3)), Rational(2)};
  CHECK(simulate_chain(q, init, 10, 4) == simulate_chain(q, init, 10, 4));
  CHECK(simulate_chain(q, init, 0, 4).size() == 1);

  const ChainSimulator sim(q, init, 1);
  std::map<Point, Rational> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[sim.simulate(1, 99, static_cast<std::uint64_t>(i))] += 1;
  for (auto& [pt, c] : counts) c /= n;
  const DistTable emp = DistTable::from_probabilities(counts);
  const DistTable exact = chain_fdd_law(q, initial_law(init), 1);
  CHECK(to_double(tv_distance(emp, exact)) < 0.01);
}
