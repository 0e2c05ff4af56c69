#include "motzkin/engine.hpp"
#include "motzkin/spectral.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace motzkin;
using namespace motzkin::spectral;

TEST_CASE("chebyshev u") {
  for (double x : {-1.3, 0.0, 0.7, 2.5}) CHECK(cheb_u(0, x) == 1);
  for (int n = 0; n <= 8; ++n) CHECK(cheb_u(n, 2.0) == doctest::Approx(n + 1));
  CHECK(cheb_u(2, 2.5) == doctest::Approx(5.25));
  CHECK(cheb_u_closed(2, 2.0) == doctest::Approx((8.0 - 1.0 / 8.0) / (2.0 - 0.5)));
  CHECK(cheb_u_closed(2, 2.0) == doctest::Approx(5.25));
  for (int n = 0; n <= 10; ++n)
    for (double z : {0.3, 1.0, 1.7, -1.0}) CHECK(cheb_u_closed(n, z) == doctest::Approx(cheb_u(n, z + 1 / z)));
}

TEST_CASE("semicircle gauss rule reproduces Catalan moments") {
  const auto cat = oracle::catalan(12);
  const GaussU g(12);
  for (int k = 0; k <= 22; ++k) {
    const double moment = g.integrate([k](double x) { return std::pow(x, k); });
    if (k % 2 == 1)
      CHECK(std::abs(moment) < 1e-10);
    else
      CHECK(moment == doctest::Approx(static_cast<double>(cat[k / 2])).epsilon(1e-12));
  }
  CHECK(GaussU(5).integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("theta rule against gauss rule at rho = 0") {
  const Function f = [](double x) { return std::pow(x, 6) - x + 3; };
  CHECK(theta_rule(f, 0.0, 64) == doctest::Approx(GaussU(8).integrate(f)).epsilon(1e-13));
}

TEST_CASE("viennot integral examples") {
  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(viennot_integral(0, 0, 1, s) == doctest::Approx(s));
    CHECK(viennot_integral(0, 0, 2, s) == doctest::Approx(s * s + 1));
    CHECK(viennot_integral(0, 1, 1, s) == doctest::Approx(1.0));
  }
}

TEST_CASE("viennot integral matches brute-force path counts") {
  for (const Rational sigma : {Rational(1, 2), Rational(2)})
    for (int L = 1; L <= 6; ++L)
      for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
          const double exact = to_double(oracle::path_sum(m, n, L, oracle::constant_edges(sigma)));
          CHECK(viennot_integral(m, n, L, to_double(sigma)) == doctest::Approx(exact).epsilon(1e-11));
        }
}

TEST_CASE("mixed measure") {
  const MixedMeasure two(2);
  CHECK(two.has_atom());
  CHECK(two.atom_location() == doctest::Approx(2.5));
  CHECK(two.atom_mass() == doctest::Approx(0.75));
  CHECK(two.top_of_support() == doctest::Approx(2.5));
  CHECK_FALSE(MixedMeasure(1).has_atom());
  CHECK(MixedMeasure(0.5).atom_mass() == 0);
  CHECK(MixedMeasure(0.5).top_of_support() == 2);
}

TEST_CASE("mu moments") {
  const MomentParts two = mu_moment([](double) { return 1.0; }, 2, 1, 0);
  CHECK(two.atom == doctest::Approx(0.75));
  CHECK(two.continuous == doctest::Approx(0.25));
  CHECK(two.value() == doctest::Approx(1.0).epsilon(1e-12));
  const MomentParts half = mu_moment([](double) { return 1.0; }, 0.5, 1, 0);
  CHECK(half.atom == 0);
  CHECK(half.value() == doctest::Approx(1.0).epsilon(1e-12));
  for (double rho : {0.5, 1.0, 2.0})
    CHECK(mu_moment([](double x) { return x; }, rho, 0, 0).value() == doctest::Approx(rho).epsilon(1e-12));
}

TEST_CASE("h_m by dynamic programming") {
  const Rational rho(2, 3), s(1, 2);
  CHECK(h_m_dp(0, rho, 1, s) == s + rho);
  CHECK(h_m_dp(1, rho, 1, s) == 1 + s * rho + rho * rho);
  for (int L = 1; L <= 5; ++L)
    for (int m = 0; m <= 3; ++m) {
      CHECK(h_m_dp(m, 0, L, s) == oracle::path_sum(m, 0, L, oracle::constant_edges(s)));
      Rational oracle_sum = 0;
      for (int n = 0; n <= m + L; ++n)
        oracle_sum += pow(rho, n) * oracle::path_sum(m, n, L, oracle::constant_edges(s));
      CHECK(h_m_dp(m, rho, L, s) == oracle_sum);
    }
}

TEST_CASE("boundary series reproduces the chebyshev generating function") {
  // Σ_n ρⁿ u_n(x) = 1/(1 − xρ + ρ²) for |ρ| < 1, x in [−2, 2].
  const auto geom = BoundaryMeasure::geometric(Rational(1, 2));
  for (double x : {-1.5, 0.0, 1.0, 2.0})
    CHECK(boundary_series(geom, x, 200) == doctest::Approx(1 / (1 - 0.5 * x + 0.25)).epsilon(1e-12));
}

TEST_CASE("certificates") {
  CHECK(lemma42_check(0, Rational(1, 2), 3, 1).pass);
  const Certificate atom = lemma42_check(0, 2, 3, 1);
  CHECK(atom.pass);
  CHECK(atom.extra["atom_present"] == true);
  CHECK(atom.extra["atom_term"].get<double>() == doctest::Approx(0.75 * std::pow(3.5, 3)));
  CHECK_FALSE(atom.extra["residual_without_atom"].get<double>() < 1e-8);
  const Certificate critical = lemma42_check(2, 1, 10, Rational(1, 2));
  CHECK(critical.pass);
  CHECK(critical.extra["atom_present"] == false);
  CHECK(mass_check(Rational(1, 10)).pass);
  CHECK(viennot_check(0, 5, 2, 1).pass);  // exact value 0
  const auto j = viennot_check(2, 3, 5, Rational(1, 2)).to_json();
  CHECK(j["check"] == "viennot");
  CHECK(j["pass"] == true);
}

TEST_CASE("ratio probe") {
  const MixedMeasure mu(2);
  const std::vector<int> Ls = {2, 8, 32, 128};
  for (const auto& row : ratio_probe([](double) { return 3.0; }, mu, 1, Ls)) {
    CHECK(row.denominator_positive);
    CHECK(row.ratio == doctest::Approx(3.0));
  }
  const auto rows = ratio_probe([](double x) { return 1 - 2 * x + 4; }, mu, 1, Ls);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(rows[i].ratio) < std::abs(rows[i - 1].ratio));
  CHECK(std::abs(rows.back().ratio) < 1e-3);
}
