#include "motzkin/engine.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace motzkin {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Rational binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

/// Measure weights on [0, size).
std::vector<Rational> measure_vector(const BoundaryMeasure& measure, int size) {
  std::vector<Rational> v(idx(size), Rational(0));
  if (measure.is_finite()) {
    const int last = std::min(size - 1, measure.max_support());
    for (int n = 0; n <= last; ++n) v[idx(n)] = measure.weight(n);
    return v;
  }
  Rational p = 1;
  for (int n = 0; n < size; ++n) {
    v[idx(n)] = p;
    p *= measure.ratio();
  }
  return v;
}

/// One backward step: (A v)_m = a_m v_{m+1} + b_m v_m + c_m v_{m−1}, for m < v.size() − 1.
std::vector<Rational> backward_step(const WeightConfig& w, const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size() - 1);
  for (int m = 0; m < static_cast<int>(out.size()); ++m) {
    Rational& r = out[idx(m)];
    r = w.up(m) * v[idx(m + 1)] + w.level(m) * v[idx(m)];
    if (m >= 1) r += w.down(m) * v[idx(m - 1)];
  }
  return out;
}

/// One forward step: (vᵀA)_n = v_{n−1} a_{n−1} + v_n b_n + v_{n+1} c_{n+1}, for n < v.size() − 1.
std::vector<Rational> forward_step(const WeightConfig& w, const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size() - 1);
  for (int n = 0; n < static_cast<int>(out.size()); ++n) {
    Rational& r = out[idx(n)];
    r = v[idx(n)] * w.level(n) + v[idx(n + 1)] * w.down(n + 1);
    if (n >= 1) r += v[idx(n - 1)] * w.up(n - 1);
  }
  return out;
}

int finite_alpha_cap(const ModelSpec& spec) { return spec.alpha().max_support() + spec.length(); }

Rational free_weight_sum(int length, const Rational& sigma, const Rational& r) {
  Rational total = 0;
  Rational r_inv = 1 / r;
  for (int k = -length; k <= length; ++k) {
    Rational t = free_weight(length, k, sigma);
    if (is_zero(t)) continue;
    total += t * (k >= 0 ? pow(r, static_cast<unsigned long>(k))
                         : pow(r_inv, static_cast<unsigned long>(-k)));
  }
  return total;
}

/// Σ_{m,n} α_m z₀^m 𝔚_{m,n} β_n z₁^n via the weight table and free-weight tails.
Rational direct_double_sum(const ModelSpec& spec, const Rational& z0, const Rational& z1) {
  const int L = spec.length();
  const auto& w = spec.weights();
  Rational total = 0;
  if (spec.alpha().is_finite()) {
    const int amax = spec.alpha().max_support();
    const int H = amax + L;
    WeightTable table = weight_table(w, L, H);
    for (int m = 0; m <= amax; ++m) {
      Rational am = spec.alpha().weight(m);
      if (is_zero(am)) continue;
      Rational row = 0;
      Rational z1n = 1;
      for (int n = 0; n <= H; ++n) {
        row += table(m, n) * spec.beta().weight(n) * z1n;
        z1n *= z1;
      }
      total += am * pow(z0, static_cast<unsigned long>(m)) * row;
    }
    return total;
  }
  // Geometric alpha (and hence geometric beta, constant weights): heads below L
  // from the table, the tail m >= L from T_L, where paths never feel the floor.
  const Rational& rho0 = spec.alpha().ratio();
  const Rational r = spec.beta().ratio() * z1;
  WeightTable table = weight_table(w, L, 2 * L);
  for (int m = 0; m < L; ++m) {
    Rational row = 0;
    Rational rn = 1;
    for (int n = 0; n <= 2 * L; ++n) {
      row += table(m, n) * rn;
      rn *= r;
    }
    total += pow(rho0 * z0, static_cast<unsigned long>(m)) * row;
  }
  const Rational q = rho0 * z0 * r;
  total += free_weight_sum(L, *w.sigma(), r) * pow(q, static_cast<unsigned long>(L)) / (1 - q);
  return total;
}

/// V_α(z₀)ᵀ 𝕄ᴸ W_β(z₁) by repeated application of the transfer operator.
Rational matrix_product_form(const ModelSpec& spec, const Rational& z0, const Rational& z1) {
  const int L = spec.length();
  const auto& w = spec.weights();

  if (spec.alpha().is_geometric()) {
    // 𝕄 W_r = λ W_r − (1/r) e₀ with λ = 1/r + σ + r, so 𝕄ᴸ W_r = λᴸ W_r − d_L
    // where d_{j+1} = 𝕄 d_j + λʲ (1/r) e₀ is supported on [0, j).
    const Rational& sigma = *w.sigma();
    const Rational r = spec.beta().ratio() * z1;
    const Rational lambda = 1 / r + sigma + r;
    TransferMatrix M(1, sigma, L + 1);
    std::vector<Rational> d(idx(L + 2), Rational(0));
    Rational lambda_j = 1;
    for (int j = 0; j < L; ++j) {
      d = M.apply(d);
      d[0] += lambda_j / r;
      lambda_j *= lambda;
    }
    const Rational x = spec.alpha().ratio() * z0;
    Rational total = lambda_j / (1 - x * r);
    Rational xm = 1;
    for (int m = 0; m < L; ++m) {
      total -= xm * d[idx(m)];
      xm *= x;
    }
    return total;
  }

  const int amax = spec.alpha().max_support();
  // Entries m <= amax of 𝕄ᴸ W only read W up to amax + L; truncation at the top
  // corrupts one more entry per application.
  const int top = amax + L;
  std::vector<Rational> v(idx(top + 1), Rational(0));
  {
    Rational z1n = 1;
    for (int n = 0; n <= top; ++n) {
      v[idx(n)] = spec.beta().weight(n) * z1n;
      z1n *= z1;
    }
  }
  if (w.is_constant()) {
    TransferMatrix M(1, *w.sigma(), top);
    for (int j = 0; j < L; ++j) v = M.apply(v);
  } else {
    for (int j = 0; j < L; ++j) v = backward_step(w, v);
  }
  Rational total = 0;
  Rational z0m = 1;
  for (int m = 0; m <= amax; ++m) {
    total += spec.alpha().weight(m) * z0m * v[idx(m)];
    z0m *= z0;
  }
  return total;
}

void check_pgf_args(const Rational& z0, const Rational& z1) {
  if (sgn(z0) <= 0 || z0 > 1 || sgn(z1) <= 0 || z1 > 1)
    throw std::invalid_argument("pgf arguments must lie in (0, 1]");
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightTable

WeightTable::WeightTable(int length, int height_bound, std::vector<Rational> entries)
    : length_(length), height_bound_(height_bound), entries_(std::move(entries)) {
  if (entries_.size() != idx(height_bound + 1) * idx(height_bound + 1))
    throw std::invalid_argument("weight table has wrong size");
}

Rational WeightTable::operator()(int m, int n) const {
  if (m < 0 || n < 0 || m > height_bound_ || n > height_bound_) return 0;
  return entries_[idx(m) * idx(height_bound_ + 1) + idx(n)];
}

std::string WeightTable::to_csv() const {
  std::ostringstream out;
  out << "m,n,value\n";
  for (int m = 0; m <= height_bound_; ++m)
    for (int n = 0; n <= height_bound_; ++n) out << m << ',' << n << ',' << to_string((*this)(m, n)) << '\n';
  return out.str();
}

WeightTable weight_table(const WeightConfig& weights, int length, int height_bound) {
  if (length < 1) throw std::invalid_argument("weight_table needs L >= 1");
  if (height_bound < length)
    throw std::invalid_argument("weight_table needs H >= L, otherwise truncation corrupts entries");
  const int H = height_bound;
  const std::size_t dim = idx(H + 1);
  std::vector<Rational> cur(dim * dim, Rational(0));
  auto at = [dim](std::vector<Rational>& t, int m, int n) -> Rational& { return t[idx(m) * dim + idx(n)]; };

  for (int m = 0; m <= H; ++m) {
    at(cur, m, m) = weights.level(m);
    if (m + 1 <= H) at(cur, m, m + 1) = weights.up(m);
    if (m >= 1) at(cur, m, m - 1) = weights.down(m);
  }
  for (int j = 1; j < length; ++j) {
    std::vector<Rational> next(dim * dim, Rational(0));
    for (int m = 0; m <= H; ++m) {
      const int lo = std::max(0, m - j - 1);
      const int hi = std::min(H, m + j + 1);
      for (int n = lo; n <= hi; ++n) {
        Rational& r = at(next, m, n);
        r = weights.level(m) * at(cur, m, n);
        if (m + 1 <= H) r += weights.up(m) * at(cur, m + 1, n);
        if (m >= 1) r += weights.down(m) * at(cur, m - 1, n);
      }
    }
    cur = std::move(next);
  }
  return WeightTable(length, H, std::move(cur));
}

// ---------------------------------------------------------------------------
// TransferMatrix

TransferMatrix::TransferMatrix(Rational t, Rational sigma, int height_bound)
    : t_(std::move(t)), sigma_(std::move(sigma)), height_bound_(height_bound) {
  if (sgn(t_) <= 0) throw std::invalid_argument("transfer matrix parameter must be positive");
  if (height_bound_ < 0) throw std::invalid_argument("negative height bound");
  t_inv_ = 1 / t_;
}

Rational TransferMatrix::entry(int row, int col) const {
  if (row < 0 || col < 0 || row > height_bound_ || col > height_bound_) return 0;
  if (col == row + 1) return t_;
  if (col == row) return sigma_;
  if (col == row - 1) return t_inv_;
  return 0;
}

std::vector<Rational> TransferMatrix::apply(std::span<const Rational> v) const {
  const int len = std::min(static_cast<int>(v.size()), height_bound_ + 1);
  std::vector<Rational> out(idx(height_bound_ + 1), Rational(0));
  for (int n = 0; n <= height_bound_; ++n) {
    Rational& r = out[idx(n)];
    if (n < len) r = sigma_ * v[idx(n)];
    if (n >= 1 && n - 1 < len) r += t_inv_ * v[idx(n - 1)];
    if (n + 1 < len) r += t_ * v[idx(n + 1)];
  }
  return out;
}

TransferMatrix TransferMatrix::transpose() const { return TransferMatrix(t_inv_, sigma_, height_bound_); }

// ---------------------------------------------------------------------------
// Free weights and boundary sums

Rational free_weight(int length, int displacement, const Rational& sigma) {
  if (length < 0) throw std::invalid_argument("negative length");
  const int k = displacement;
  if (std::abs(k) > length) return 0;
  Rational total = 0;
  // u up-steps, d = u − k down-steps, h = L − u − d horizontal steps.
  for (int u = std::max(0, k); 2 * u - k <= length; ++u) {
    const int d = u - k;
    const int h = length - u - d;
    Rational ways = binomial(static_cast<unsigned long>(length), static_cast<unsigned long>(u)) *
                    binomial(static_cast<unsigned long>(length - u), static_cast<unsigned long>(d));
    total += ways * pow(sigma, static_cast<unsigned long>(h));
  }
  return total;
}

Rational free_weight_series(int length, const Rational& sigma, const Rational& r) {
  if (sgn(r) <= 0) throw std::invalid_argument("free_weight_series needs r > 0");
  return free_weight_sum(length, sigma, r);
}

std::vector<Rational> backward_sums(const WeightConfig& weights, const BoundaryMeasure& beta, int steps,
                                    int top) {
  if (steps < 0 || top < 0) throw std::invalid_argument("backward_sums: negative argument");
  std::vector<Rational> v = measure_vector(beta, top + steps + 1);
  for (int j = 0; j < steps; ++j) v = backward_step(weights, v);
  return v;
}

std::vector<Rational> forward_sums(const WeightConfig& weights, const BoundaryMeasure& alpha, int steps,
                                   int top) {
  if (steps < 0 || top < 0) throw std::invalid_argument("forward_sums: negative argument");
  std::vector<Rational> v = measure_vector(alpha, top + steps + 1);
  for (int j = 0; j < steps; ++j) v = forward_step(weights, v);
  return v;
}

Rational normalization_constant(const ModelSpec& spec) {
  const int L = spec.length();
  Rational total = 0;
  if (spec.alpha().is_finite()) {
    const int amax = spec.alpha().max_support();
    auto S = backward_sums(spec.weights(), spec.beta(), L, amax);
    for (int m = 0; m <= amax; ++m) total += spec.alpha().weight(m) * S[idx(m)];
  } else {
    const Rational& rho0 = spec.alpha().ratio();
    const Rational& rho1 = spec.beta().ratio();
    auto S = backward_sums(spec.weights(), spec.beta(), L, L - 1);
    Rational am = 1;
    for (int m = 0; m < L; ++m) {
      total += am * S[idx(m)];
      am *= rho0;
    }
    // Σ_{m>=L} ρ₀^m S_L(m) with S_L(m) = ρ₁^m Σ_k T_L(k) ρ₁^k once the floor is out of reach.
    const Rational q = rho0 * rho1;
    total += free_weight_sum(L, *spec.weights().sigma(), rho1) * pow(q, static_cast<unsigned long>(L)) / (1 - q);
  }
  if (sgn(total) <= 0) throw std::domain_error("boundary measures give zero total mass at this length");
  return total;
}

// ---------------------------------------------------------------------------
// Finite-dimensional laws

DistTable fdd_law(const ModelSpec& spec, std::span<const int> coords, const TruncationOptions& options) {
  const int L = spec.length();
  if (coords.empty()) throw std::invalid_argument("fdd_law needs at least one coordinate");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] > L) throw std::invalid_argument("coordinate outside [0, L]");
    if (i > 0 && coords[i] <= coords[i - 1]) throw std::invalid_argument("coordinates must increase");
  }
  const Rational C = normalization_constant(spec);
  const auto& w = spec.weights();

  auto compute = [&](int cap) {
    std::map<Point, Rational> partial;
    auto A = forward_sums(w, spec.alpha(), coords[0], cap);
    for (int x = 0; x <= cap; ++x)
      if (sgn(A[idx(x)]) > 0) partial[{x}] = A[idx(x)];

    for (std::size_t i = 1; i < coords.size(); ++i) {
      const int gap = coords[i] - coords[i - 1];
      std::map<int, std::vector<Rational>> rows;
      std::map<Point, Rational> next;
      for (const auto& [point, weight] : partial) {
        const int x = point.back();
        auto it = rows.find(x);
        if (it == rows.end()) {
          std::vector<Rational> row;
          if (gap == 1) {
            row.assign(idx(cap + 1), Rational(0));
            for (int y = std::max(0, x - 1); y <= std::min(cap, x + 1); ++y) row[idx(y)] = w.step(x, y);
          } else {
            row = forward_sums(w, BoundaryMeasure::point(x), gap, cap);
          }
          it = rows.emplace(x, std::move(row)).first;
        }
        const auto& row = it->second;
        for (int y = std::max(0, x - gap); y <= std::min(cap, x + gap); ++y) {
          if (sgn(row[idx(y)]) == 0) continue;
          Point p = point;
          p.push_back(y);
          next.emplace(std::move(p), weight * row[idx(y)]);
        }
      }
      partial = std::move(next);
    }

    auto S = backward_sums(w, spec.beta(), L - coords.back(), cap);
    Rational kept = 0;
    std::map<Point, Rational> probs;
    for (auto& [point, weight] : partial) {
      Rational p = weight * S[idx(point.back())] / C;
      if (sgn(p) == 0) continue;
      kept += p;
      probs.emplace(point, std::move(p));
    }
    return std::pair{std::move(probs), Rational(1 - kept)};
  };

  if (spec.alpha().is_finite()) {
    auto [probs, tail] = compute(finite_alpha_cap(spec));
    return DistTable::from_probabilities(std::move(probs), std::move(tail));
  }
  int cap = std::min(options.max_height, L + 64);
  while (true) {
    auto [probs, tail] = compute(cap);
    if (tail <= options.tail_tolerance || cap >= options.max_height)
      return DistTable::from_probabilities(std::move(probs), std::move(tail));
    cap = std::min(options.max_height, 2 * cap);
  }
}

DistTable left_fdd_law(const ModelSpec& spec, int K, const TruncationOptions& options) {
  if (K < 0 || K > spec.length()) throw std::invalid_argument("left_fdd_law needs 0 <= K <= L");
  std::vector<int> coords(idx(K + 1));
  for (int k = 0; k <= K; ++k) coords[idx(k)] = k;
  return fdd_law(spec, coords, options);
}

DistTable right_fdd_law(const ModelSpec& spec, int K, bool anchored, const TruncationOptions& options) {
  const int L = spec.length();
  if (K < 0 || K > L) throw std::invalid_argument("right_fdd_law needs 0 <= K <= L");
  std::vector<int> coords(idx(K + 1));
  for (int k = 0; k <= K; ++k) coords[idx(k)] = L - K + k;
  DistTable forward = fdd_law(spec, coords, options);
  // Points come as (γ_{L−K}, …, γ_L).
  return forward.map_points([&](const Point& p) {
    Point q;
    q.reserve(p.size());
    if (anchored) {
      for (int k = 1; k <= K; ++k) q.push_back(p[idx(K - k)] - p[idx(K)]);
    } else {
      for (int k = 0; k <= K; ++k) q.push_back(p[idx(K - k)]);
    }
    return q;
  });
}

DistTable endpoint_law(const ModelSpec& spec, const TruncationOptions& options) {
  const int coords[] = {0, spec.length()};
  return fdd_law(spec, coords, options);
}

// ---------------------------------------------------------------------------
// End-point generating function

Rational endpoint_pgf_direct(const ModelSpec& spec, const Rational& z0, const Rational& z1) {
  check_pgf_args(z0, z1);
  return direct_double_sum(spec, z0, z1) / direct_double_sum(spec, 1, 1);
}

Rational endpoint_pgf_matrix(const ModelSpec& spec, const Rational& z0, const Rational& z1) {
  check_pgf_args(z0, z1);
  return matrix_product_form(spec, z0, z1) / matrix_product_form(spec, 1, 1);
}

Rational endpoint_pgf(const ModelSpec& spec, const Rational& z0, const Rational& z1) {
  Rational direct = endpoint_pgf_direct(spec, z0, z1);
  Rational matrix = endpoint_pgf_matrix(spec, z0, z1);
  if (direct != matrix)
    throw std::logic_error("end-point pgf routes disagree: " + to_string(direct) + " vs " + to_string(matrix));
  return direct;
}

Rational left_increment_pgf(const ModelSpec& spec, const Rational& z0, std::span<const Rational> t) {
  if (!spec.weights().is_constant() || !spec.alpha().is_finite() || !spec.beta().is_finite())
    throw std::invalid_argument("left_increment_pgf needs constant weights and finite boundaries");
  const int L = spec.length();
  const int K = static_cast<int>(t.size());
  if (K > L) throw std::invalid_argument("more increments than steps");
  const Rational& sigma = *spec.weights().sigma();
  const int H = std::max(spec.alpha().max_support(), spec.beta().max_support()) + L;
  std::vector<Rational> v = measure_vector(spec.beta(), H + 1);
  TransferMatrix one(1, sigma, H);
  for (int j = 0; j < L - K; ++j) v = one.apply(v);
  for (int j = K - 1; j >= 0; --j) v = TransferMatrix(t[idx(j)], sigma, H).apply(v);
  Rational total = 0;
  Rational z0m = 1;
  for (int m = 0; m <= spec.alpha().max_support(); ++m) {
    total += spec.alpha().weight(m) * z0m * v[idx(m)];
    z0m *= z0;
  }
  return total / normalization_constant(spec);
}

}  // namespace motzkin
