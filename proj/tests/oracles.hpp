#pragma once

// Independent reference computations. Nothing here calls the library's DP code:
// laws come from enumerating every height sequence and multiplying edge weights.

#include "motzkin/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using motzkin::Rational;
using Heights = std::vector<int>;
using WeightFn = std::function<Rational(int)>;

struct Edges {
  WeightFn up;
  WeightFn level;
  WeightFn down;
};

inline Edges constant_edges(const Rational& sigma) {
  return {[](int) { return Rational(1); }, [sigma](int) { return sigma; }, [](int) { return Rational(1); }};
}

/// Every non-negative sequence of L unit-or-zero steps starting at `start`.
inline void for_each_path(int start, int L, const std::function<void(const Heights&)>& visit) {
  Heights h{start};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(h.size()) == L + 1) {
      visit(h);
      return;
    }
    for (int d = -1; d <= 1; ++d) {
      const int next = h.back() + d;
      if (next < 0) continue;
      h.push_back(next);
      rec();
      h.pop_back();
    }
  };
  rec();
}

inline Rational edge_product(const Heights& h, const Edges& e) {
  Rational w = 1;
  for (std::size_t k = 1; k < h.size(); ++k) {
    const int from = h[k - 1];
    const int d = h[k] - from;
    w *= d == 1 ? e.up(from) : d == 0 ? e.level(from) : e.down(from);
  }
  return w;
}

/// 𝔚⁽ᴸ⁾_{m,n} by enumeration.
inline Rational path_sum(int m, int n, int L, const Edges& e) {
  Rational total = 0;
  for_each_path(m, L, [&](const Heights& h) {
    if (h.back() == n) total += edge_product(h, e);
  });
  return total;
}

/// Full path law for finite boundary weight vectors.
inline std::map<Heights, Rational> path_law(const std::vector<Rational>& alpha, const std::vector<Rational>& beta,
                                            int L, const Edges& e) {
  std::map<Heights, Rational> law;
  Rational total = 0;
  for (int m = 0; m < static_cast<int>(alpha.size()); ++m) {
    if (alpha[m] == 0) continue;
    for_each_path(m, L, [&](const Heights& h) {
      const int n = h.back();
      if (n >= static_cast<int>(beta.size()) || beta[n] == 0) return;
      Rational w = alpha[m] * beta[n] * edge_product(h, e);
      if (w == 0) return;
      total += w;
      law[h] += w;
    });
  }
  for (auto& [h, w] : law) w /= total;
  return law;
}

/// Marginal of a path law on the given coordinates.
inline std::map<Heights, Rational> marginal(const std::map<Heights, Rational>& law, const std::vector<int>& coords) {
  std::map<Heights, Rational> out;
  for (const auto& [h, p] : law) {
    Heights key;
    for (int c : coords) key.push_back(h[c]);
    out[key] += p;
  }
  return out;
}

/// Σ over all {−1,0,1}^L words with net displacement k; no floor.
inline Rational free_word_sum(int L, int k, const Rational& sigma) {
  Rational total = 0;
  std::vector<int> word(L, -1);
  while (true) {
    int net = 0, level = 0;
    for (int s : word) {
      net += s;
      level += s == 0;
    }
    if (net == k) total += motzkin::pow(sigma, static_cast<unsigned long>(level));
    int i = 0;
    while (i < L && word[i] == 1) word[i++] = -1;
    if (i == L) break;
    ++word[i];
  }
  return total;
}


/// Forward vector recursion, one start height at a time: weight of paths m → n
/// for constant weights, n in [0, m + L]. Plain loops, no shared code with the engine.
inline std::vector<Rational> row_by_forward_steps(int m, int L, const Rational& sigma) {
  std::vector<Rational> v(m + L + 2, 0);
  v[m] = 1;
  for (int step = 0; step < L; ++step) {
    std::vector<Rational> next(v.size(), 0);
    for (int h = 0; h + 1 < static_cast<int>(v.size()); ++h) {
      if (v[h] == 0) continue;
      next[h + 1] += v[h];
      next[h] += sigma * v[h];
      if (h > 0) next[h - 1] += v[h];
    }
    v = std::move(next);
  }
  return v;
}

/// Catalan numbers by C_{k+1} = Σ C_i C_{k−i}.
inline std::vector<std::uint64_t> catalan(int count) {
  std::vector<std::uint64_t> c(count, 0);
  c[0] = 1;
  for (int k = 1; k < count; ++k)
    for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
  return c;
}

/// [j]_{ρ²} = 1 + ρ² + ⋯ + ρ^{2(j−1)}.
inline Rational q_number(int j, const Rational& rho) {
  Rational s = 0, t = 1;
  for (int i = 0; i < j; ++i) {
    s += t;
    t *= rho * rho;
  }
  return s;
}

}  // namespace oracle
