#include "motzkin/converge.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace motzkin {

namespace {

template <class F>
std::vector<LadderRow> compute_rows(const std::vector<int>& L_list, bool parallel, F row_for) {
  for (std::size_t i = 1; i < L_list.size(); ++i)
    if (L_list[i] <= L_list[i - 1]) throw std::invalid_argument("ladder lengths must be strictly increasing");
  std::vector<LadderRow> rows;
  rows.reserve(L_list.size());
  if (!parallel) {
    for (int L : L_list) rows.push_back(row_for(L));
    return rows;
  }
  std::vector<std::future<LadderRow>> futures;
  for (int L : L_list) futures.push_back(std::async(std::launch::async, row_for, L));
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

template <class Get>
bool strictly_decreasing(const std::vector<LadderRow>& rows, Get get) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(get(rows[i]) < get(rows[i - 1]))) return false;
  return !rows.empty();
}

nlohmann::json exact_and_float(const Rational& r) { return {{"exact", to_string(r)}, {"float", to_double(r)}}; }

void require_positive_sigma(const Rational& sigma) {
  if (sgn(sigma) <= 0) throw std::invalid_argument("this ladder needs sigma > 0");
}

}  // namespace

Rational tv_distance(const DistTable& p, const DistTable& q) {
  if (p.size() > 0 && q.size() > 0 && p.dimension() != q.dimension())
    throw std::invalid_argument("tv_distance: tables have different dimensions");
  const auto& a = p.atoms();
  const auto& b = q.atoms();
  Rational sum = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].point < b[j].point)) {
      sum += a[i++].prob;
    } else if (i == a.size() || b[j].point < a[i].point) {
      sum += b[j++].prob;
    } else {
      sum += abs(a[i].prob - b[j].prob);
      ++i;
      ++j;
    }
  }
  return sum / 2;
}

TvBounds tv_bounds(const DistTable& p, const DistTable& q) {
  return {tv_distance(p, q), (p.truncated_mass() + q.truncated_mass()) / 2};
}

bool LadderReport::tv_left_decreasing() const {
  return strictly_decreasing(rows, [](const LadderRow& r) { return r.tv_left; });
}

bool LadderReport::tv_right_decreasing() const {
  return strictly_decreasing(rows, [](const LadderRow& r) { return r.tv_right; });
}

bool LadderReport::last_column_decreasing() const {
  return strictly_decreasing(rows, [](const LadderRow& r) {
    if (r.independence_gap) return *r.independence_gap;
    if (r.tightness) return *r.tightness;
    throw std::logic_error("ladder row has no last column");
  });
}

nlohmann::json LadderReport::to_json() const {
  nlohmann::json out;
  out["kind"] = kind;
  out["params"] = params;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"L", r.L}, {"tv_left", exact_and_float(r.tv_left)},
                          {"tv_right", exact_and_float(r.tv_right)}, {"slack", exact_and_float(r.slack)}};
    if (r.independence_gap) row["independence_gap"] = exact_and_float(*r.independence_gap);
    if (r.tightness) row["tightness"] = exact_and_float(*r.tightness);
    list.push_back(std::move(row));
  }
  out["rows"] = std::move(list);
  out["verdicts"] = {{"tv_left_decreasing", tv_left_decreasing()},
                     {"tv_right_decreasing", tv_right_decreasing()},
                     {kind == "theorem1" ? "independence_gap_decreasing" : "tightness_decreasing",
                      last_column_decreasing()}};
  return out;
}

std::string LadderReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "L,tv_left,tv_right," << (kind == "theorem1" ? "independence_gap" : "tightness") << '\n';
  for (const auto& r : rows) {
    const Rational& last = r.independence_gap ? *r.independence_gap : *r.tightness;
    out << r.L << ',' << to_double(r.tv_left) << ',' << to_double(r.tv_right) << ',' << to_double(last) << '\n';
  }
  return out.str();
}

LadderReport theorem1_ladder(const Rational& sigma, const BoundaryMeasure& alpha, const BoundaryMeasure& beta,
                             int K, const std::vector<int>& L_list, const LadderOptions& options,
                             bool allow_degenerate_sigma) {
  if (!allow_degenerate_sigma) require_positive_sigma(sigma);
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  // Size-biased laws need Σ(n+1)α_n < ∞; initial_law rejects ratios >= 1.
  const KernelSpec kernel = KernelSpec::bessel(sigma);
  const DistTable left_init = initial_law(SizeBiased{alpha}, options.truncation);
  const DistTable right_init = initial_law(SizeBiased{beta}, options.truncation);
  const DistTable left_limit = chain_fdd_law(kernel, left_init, K);
  const DistTable right_limit = chain_fdd_law(kernel, right_init, K);
  const DistTable pair_limit = product(left_init, right_init);

  auto row_for = [&](int L) {
    if (L < K) throw std::invalid_argument("ladder lengths must be >= K");
    const ModelSpec spec(WeightConfig::constant(sigma), alpha, beta, L);
    LadderRow row;
    row.L = L;
    const DistTable left = left_fdd_law(spec, K, options.truncation);
    const DistTable right = right_fdd_law(spec, K, false, options.truncation);
    const DistTable ends = endpoint_law(spec, options.truncation);
    const TvBounds a = tv_bounds(left, left_limit);
    const TvBounds b = tv_bounds(right, right_limit);
    const TvBounds c = tv_bounds(ends, pair_limit);
    row.tv_left = a.value;
    row.tv_right = b.value;
    row.independence_gap = c.value;
    row.slack = std::max({a.slack, b.slack, c.slack});
    return row;
  };

  LadderReport report;
  report.kind = "theorem1";
  report.params = {{"sigma", to_string(sigma)}, {"alpha", format_measure(alpha)},
                   {"beta", format_measure(beta)}, {"K", K}, {"L", L_list}};
  report.rows = compute_rows(L_list, options.parallel, row_for);
  return report;
}

LadderReport theorem2_ladder(const Rational& sigma, const BoundaryMeasure& alpha, const Rational& rho1, int K,
                             const std::vector<int>& L_list, int C, const LadderOptions& options) {
  require_positive_sigma(sigma);
  if (rho1 < 1) throw std::invalid_argument("theorem2 ladder needs rho1 >= 1");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const BoundaryMeasure beta = BoundaryMeasure::geometric(rho1);
  const KernelSpec kernel = KernelSpec::deformed(rho1, sigma);
  const DistTable left_limit = chain_fdd_law(kernel, initial_law(QDeformed{alpha, rho1}, options.truncation), K);
  const DistTable right_limit = xi_partial_sum_law(xi_pmf(rho1, sigma), K);

  auto row_for = [&](int L) {
    if (L < K) throw std::invalid_argument("ladder lengths must be >= K");
    const ModelSpec spec(WeightConfig::constant(sigma), alpha, beta, L);
    LadderRow row;
    row.L = L;
    const TvBounds a = tv_bounds(left_fdd_law(spec, K, options.truncation), left_limit);
    const TvBounds b = tv_bounds(right_fdd_law(spec, K, true, options.truncation), right_limit);
    row.tv_left = a.value;
    row.tv_right = b.value;
    row.slack = std::max(a.slack, b.slack);
    const int coord[] = {L};
    const DistTable end = fdd_law(spec, coord, options.truncation);
    Rational below = 0;
    for (const auto& atom : end.atoms())
      if (atom.point[0] <= C) below += atom.prob;
    row.tightness = below;
    return row;
  };

  LadderReport report;
  report.kind = "theorem2";
  report.params = {{"sigma", to_string(sigma)}, {"alpha", format_measure(alpha)}, {"rho1", to_string(rho1)},
                   {"K", K}, {"C", C}, {"L", L_list}};
  report.rows = compute_rows(L_list, options.parallel, row_for);
  return report;
}

std::vector<DegenerateRow> degenerate_endpoint_sequence(const std::vector<int>& N_list) {
  const BoundaryMeasure ends = BoundaryMeasure::finite({Rational(1), Rational(1)});
  std::vector<DegenerateRow> out;
  for (int N : N_list) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    const ModelSpec spec(WeightConfig::constant(0), ends, ends, 2 * N);
    const int coord[] = {2 * N};
    const Rational p = fdd_law(spec, coord).prob({1});
    out.push_back({N, p, abs(p - Rational(4, 5))});
  }
  return out;
}

}  // namespace motzkin
