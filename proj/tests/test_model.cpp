#include "motzkin/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace motzkin;

namespace {

const std::vector<int> kSamplePath = {2, 1, 1, 0, 1, 1, 2, 1, 0, 1};

// Distinct primes make every monomial identifiable.
WeightConfig generic_weights() {
  return WeightConfig::general({Rational(2), Rational(3), Rational(5)}, {Rational(7), Rational(11), Rational(13)},
                               {Rational(17), Rational(19), Rational(23)});
}

}  // namespace

TEST_CASE("ten-step path weight, generic weights") {
  const Rational a0 = 2, a1 = 3, b1 = 11, c1 = 19, c2 = 23;
  const Rational expected = a0 * a0 * a1 * b1 * b1 * c1 * c1 * c2 * c2;
  CHECK(path_weight(MotzkinPath(kSamplePath), generic_weights()) == expected);
}

TEST_CASE("ten-step path weight, constant case") {
  const Rational sigma(3, 7);
  CHECK(path_weight(MotzkinPath(kSamplePath), WeightConfig::constant(sigma)) == sigma * sigma);
}

TEST_CASE("single up step") {
  CHECK(path_weight(MotzkinPath({0, 1}), generic_weights()) == 2);
  CHECK(path_weight(MotzkinPath({0, 1}), WeightConfig::constant(5)) == 1);
}

TEST_CASE("reverse_path") {
  const ReversedPath r = reverse_path(MotzkinPath(kSamplePath));
  CHECK(r.heights == std::vector<int>{1, 0, 1, 2, 1, 1, 0, 1, 1, 2});
  CHECK(r.increments == std::vector<int>{0, -1, 0, 1, 0, 0, -1, 0, 0, 1});
  const ReversedPath flat = reverse_path(MotzkinPath({0, 0, 0}));
  CHECK(flat.heights == std::vector<int>{0, 0, 0});
  CHECK(flat.increments == std::vector<int>{0, 0, 0});
}

TEST_CASE("invalid paths rejected") {
  CHECK_THROWS(MotzkinPath({0, 2}));
  CHECK_THROWS(MotzkinPath({0, -1}));
  CHECK_THROWS(MotzkinPath({0}));
  CHECK_THROWS(parse_path("1,,2"));
}

TEST_CASE("path text round trip") {
  const MotzkinPath p(kSamplePath);
  CHECK(parse_path(format_path(p.heights())) == p);
}

TEST_CASE("measure specs") {
  CHECK(parse_measure("finite:1,1") == BoundaryMeasure::finite({Rational(1), Rational(1)}));
  CHECK(parse_measure("geom:0.5") == BoundaryMeasure::geometric(Rational(1, 2)));
  CHECK(parse_measure("delta:2").weight(2) == 1);
  CHECK(parse_measure("delta:2").weight(1) == 0);
  for (const char* s : {"finite:1,1/3", "geom:1/2", "delta:3"})
    CHECK(parse_measure(format_measure(parse_measure(s))) == parse_measure(s));
  CHECK_THROWS(parse_measure("geom:-1"));
  CHECK_THROWS(parse_measure("finite:"));
  CHECK_THROWS(parse_measure("poisson:1"));
}

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational("-3/9") == Rational(-1, 3));
  CHECK(to_string(Rational(2)) == "2/1");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("model spec admissibility") {
  const auto w = WeightConfig::constant(1);
  CHECK_NOTHROW(ModelSpec(w, parse_measure("geom:1/2"), parse_measure("geom:1"), 3));
  CHECK_THROWS(ModelSpec(w, parse_measure("geom:1/2"), parse_measure("geom:2"), 3));
  CHECK_THROWS(ModelSpec(w, parse_measure("finite:1"), parse_measure("finite:1"), 0));
}

TEST_CASE("property: weight is multiplicative under concatenation") {
  std::mt19937 gen(7);
  const WeightConfig w = generic_weights();
  auto random_path = [&](int start, int len) {
    std::vector<int> h{start};
    while (static_cast<int>(h.size()) <= len) {
      int d = static_cast<int>(gen() % 3) - 1;
      if (h.back() + d < 0) d = 1;
      h.push_back(h.back() + d);
    }
    return h;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto first = random_path(static_cast<int>(gen() % 4), 1 + static_cast<int>(gen() % 8));
    const auto second = random_path(first.back(), 1 + static_cast<int>(gen() % 8));
    std::vector<int> joined = first;
    joined.insert(joined.end(), second.begin() + 1, second.end());
    CHECK(path_weight(MotzkinPath(joined), w) ==
          path_weight(MotzkinPath(first), w) * path_weight(MotzkinPath(second), w));
  }
}

TEST_CASE("property: path_weight agrees with the oracle edge product") {
  const WeightConfig w = generic_weights();
  const oracle::Edges e{[&](int n) { return w.up(n); }, [&](int n) { return w.level(n); },
                        [&](int n) { return w.down(n); }};
  for (int start = 0; start <= 2; ++start)
    oracle::for_each_path(start, 6, [&](const oracle::Heights& h) {
      CHECK(path_weight(MotzkinPath(h), w) == oracle::edge_product(h, e));
    });
}
