#include "motzkin/converge.hpp"
#include "motzkin/sampler.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace motzkin;

namespace {

using Block = std::array<std::uint32_t, 4>;

// Sums the probability of every path under the sampler's own sequential
// recursion: start law times the product of conditional rows.
std::map<std::vector<int>, Rational> induced_law(const ModelSpec& spec) {
  const BackwardTable table = build_backward_table(spec);
  const int L = spec.length();
  Rational start_total = 0;
  for (int m = 0; m <= table.start_cap(); ++m) start_total += spec.alpha().weight(m) * table(0, m);
  std::map<std::vector<int>, Rational> law;
  for (int m = 0; m <= table.start_cap(); ++m) {
    const Rational start = spec.alpha().weight(m) * table(0, m) / start_total;
    if (start == 0) continue;
    oracle::for_each_path(m, L, [&](const oracle::Heights& h) {
      Rational p = start;
      for (int k = 0; k < L && p != 0; ++k) p *= conditional_row(table, k, h[k])[h[k + 1] - h[k] + 1];
      if (p != 0) law[h] = p;
    });
  }
  return law;
}

}  // namespace

TEST_CASE("philox known-answer vectors") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("random streams differ by stream index and repeat by seed") {
  RandomStream a(5, 0), b(5, 1), c(5, 0);
  bool any_diff = false;
  for (int i = 0; i < 8; ++i) {
    const auto x = a.next(), y = b.next(), z = c.next();
    CHECK(x == z);
    any_diff |= x != y;
  }
  CHECK(any_diff);
}

TEST_CASE("exact discrete sampler frequencies") {
  const std::vector<Rational> w = {Rational(1, 3), Rational(0), Rational(2, 3)};
  const ExactDiscrete d(w);
  RandomStream rng(11);
  int counts[3] = {0, 0, 0};
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[d.draw(rng)];
  CHECK(counts[1] == 0);
  // 5 standard errors on Binomial(n, 1/3).
  CHECK(std::abs(counts[0] - n / 3.0) < 5 * std::sqrt(n * 2.0 / 9.0));
}

TEST_CASE("backward table boundary values") {
  const auto delta0 = BoundaryMeasure::point(0);
  const ModelSpec spec(WeightConfig::constant(1), BoundaryMeasure::finite({Rational(1), Rational(1)}), delta0, 4);
  const BackwardTable t = build_backward_table(spec);
  for (int n = 0; n <= t.height_bound(); ++n) CHECK(t(4, n) == (n == 0 ? 1 : 0));
  for (int L = 1; L <= 6; ++L) {
    const auto beta = BoundaryMeasure::finite({Rational(1), Rational(3), Rational(2)});
    const ModelSpec s(WeightConfig::constant(Rational(1, 2)), BoundaryMeasure::finite({1, 1, 1}), beta, L);
    const BackwardTable b = build_backward_table(s);
    const auto sums = backward_sums(s.weights(), beta, L, 2);
    for (int m = 0; m <= 2; ++m) CHECK(b(0, m) == sums[m]);
    for (int m = 0; m <= 2; ++m) {
      Rational oracle_sum = 0;
      for (int n = 0; n <= 2; ++n)
        oracle_sum += beta.weight(n) * oracle::path_sum(m, n, L, oracle::constant_edges(Rational(1, 2)));
      CHECK(b(0, m) == oracle_sum);
    }
  }
}

TEST_CASE("backward table far from the floor") {
  const Rational sigma = 1;
  const int L = 6;
  const ModelSpec spec(WeightConfig::constant(sigma), BoundaryMeasure::finite({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
                       BoundaryMeasure::geometric(1), L);
  const BackwardTable t = build_backward_table(spec);
  for (int k = 0; k <= L; ++k)
    for (int n = L; n <= t.start_cap(); ++n) CHECK(t(k, n) == pow(2 + sigma, L - k));
}

TEST_CASE("property: conditional rows sum to 1") {
  for (const Rational sigma : {Rational(0), Rational(1, 2), Rational(1)}) {
    const ModelSpec spec(WeightConfig::constant(sigma), BoundaryMeasure::finite({1, 1}),
                         BoundaryMeasure::finite({1, 1}), 16);
    const BackwardTable t = build_backward_table(spec);
    for (int k = 0; k < 16; ++k)
      for (int n = 0; n <= t.start_cap() + k; ++n) {
        if (t(k, n) == 0) continue;
        const auto row = conditional_row(t, k, n);
        CHECK(row[0] + row[1] + row[2] == 1);
      }
  }
}

TEST_CASE("property: sampler recursion reproduces the path law exactly") {
  for (const Rational sigma : {Rational(0), Rational(1, 2), Rational(1)})
    for (int L = 1; L <= 4; ++L) {
      const std::vector<Rational> alpha = {1, 2}, beta = {Rational(1, 3), 1, 1};
      const ModelSpec spec(WeightConfig::constant(sigma), BoundaryMeasure::finite(alpha),
                           BoundaryMeasure::finite(beta), L);
      const auto expected = oracle::path_law(alpha, beta, L, oracle::constant_edges(sigma));
      CHECK(induced_law(spec) == expected);
    }
}

TEST_CASE("single admissible path") {
  const auto delta0 = BoundaryMeasure::point(0);
  const ModelSpec spec(WeightConfig::constant(1), delta0, delta0, 1);
  const PathSampler s(build_backward_table(spec), delta0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(s.sample(seed) == MotzkinPath({0, 0}));
}

TEST_CASE("two equal-weight paths") {
  const auto delta0 = BoundaryMeasure::point(0);
  const ModelSpec spec(WeightConfig::constant(1), delta0, delta0, 2);
  const PathSampler s(build_backward_table(spec), delta0);
  const auto paths = s.sample_many(3, 100000);
  int flat = 0;
  for (const auto& p : paths) flat += p == MotzkinPath({0, 0, 0});
  CHECK(std::abs(flat - 50000) < 3 * std::sqrt(25000.0));
  CHECK(sample_path(build_backward_table(spec), delta0, 9) == sample_path(build_backward_table(spec), delta0, 9));
}

TEST_CASE("empirical laws") {
  const std::vector<MotzkinPath> one = {MotzkinPath({1, 2, 1})};
  const int coords[] = {0, 2};
  const DistTable t = empirical_fdd(one, coords);
  CHECK(t.size() == 1);
  CHECK(t.prob({1, 1}) == 1);

  const auto ones = BoundaryMeasure::finite({1, 1});
  const ModelSpec spec(WeightConfig::constant(1), ones, ones, 16);
  const PathSampler s(build_backward_table(spec), ones);
  const auto paths = s.sample_many(2024, 100000, 2);
  const int k01[] = {0, 1};
  const DistTable emp = empirical_fdd(paths, k01);
  Rational total = 0;
  for (const auto& a : emp.atoms()) total += a.prob;
  CHECK(total == 1);
  CHECK(to_double(tv_distance(emp, left_fdd_law(spec, 1))) < 0.01);
}

TEST_CASE("sample_many does not depend on the thread count") {
  const auto ones = BoundaryMeasure::finite({1, 1});
  const PathSampler s(build_backward_table(ModelSpec(WeightConfig::constant(1), ones, ones, 12)), ones);
  const auto a = s.sample_many(77, 500, 1);
  const auto b = s.sample_many(77, 500, 4);
  CHECK(a == b);
  std::ostringstream ta, tb;
  write_paths_text(ta, a);
  write_paths_text(tb, b);
  CHECK(ta.str() == tb.str());
}

TEST_CASE("binary path files round trip") {
  const std::vector<MotzkinPath> paths = {MotzkinPath({0, 1, 0}), MotzkinPath({2, 2, 3})};
  std::stringstream buf;
  write_paths_binary(buf, paths);
  CHECK(buf.str().substr(0, 4) == "MZKP");
  CHECK(read_paths_binary(buf) == paths);
}
