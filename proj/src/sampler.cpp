#include "motzkin/sampler.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace motzkin {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("truncated binary path file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
  const std::uint64_t lo = get_u32(in);
  const std::uint64_t hi = get_u32(in);
  return lo | (hi << 32);
}

/// Smallest m* >= L with Σ_{m>m*} ρ₀^m S_L(m) <= tol · 𝔠, and that exact tail mass.
std::pair<int, Rational> geometric_start_cap(const ModelSpec& spec, const TruncationOptions& options) {
  const int L = spec.length();
  const Rational C = normalization_constant(spec);
  const Rational q = spec.alpha().ratio() * spec.beta().ratio();
  const Rational tau = free_weight_series(L, *spec.weights().sigma(), spec.beta().ratio());
  // For m >= L, ρ₀^m S_L(m) = τ q^m, so the tail above m* is τ q^{m*+1} / (1 − q).
  int cap = L;
  Rational tail = tau * pow(q, static_cast<unsigned long>(cap + 1)) / (1 - q) / C;
  while (tail > options.tail_tolerance && cap < options.max_height) {
    ++cap;
    tail *= q;
  }
  return {cap, tail};
}

}  // namespace

const Rational& BackwardTable::operator()(int k, int n) const {
  if (k < 0 || k > length_ || n < 0 || n > height_bound_) throw std::out_of_range("backward table index");
  return rows_[idx(k)][idx(n)];
}

BackwardTable build_backward_table(const ModelSpec& spec, const TruncationOptions& options) {
  const int L = spec.length();
  BackwardTable table(spec.weights());
  int start_cap = 0;
  if (spec.alpha().is_finite()) {
    start_cap = spec.alpha().max_support();
  } else {
    auto [cap, tail] = geometric_start_cap(spec, options);
    start_cap = cap;
    table.start_tail_mass_ = std::move(tail);
  }
  const int H = start_cap + L;
  table.length_ = L;
  table.height_bound_ = H;
  table.rows_.assign(idx(L + 1), std::vector<Rational>(idx(H + 1), Rational(0)));

  auto& last = table.rows_[idx(L)];
  for (int n = 0; n <= H; ++n) last[idx(n)] = spec.beta().weight(n);
  const auto& w = spec.weights();
  for (int k = L - 1; k >= 0; --k) {
    const auto& next = table.rows_[idx(k + 1)];
    auto& row = table.rows_[idx(k)];
    for (int n = 0; n <= H; ++n) {
      Rational& r = row[idx(n)];
      r = w.level(n) * next[idx(n)];
      if (n + 1 <= H) r += w.up(n) * next[idx(n + 1)];
      if (n >= 1) r += w.down(n) * next[idx(n - 1)];
    }
  }
  bool any = false;
  for (int m = 0; m <= start_cap; ++m) any = any || (sgn(spec.alpha().weight(m)) > 0 && sgn(table.rows_[0][idx(m)]) > 0);
  if (!any) throw std::domain_error("no path carries positive weight for this spec");
  return table;
}

std::array<Rational, 3> conditional_row(const BackwardTable& table, int k, int n) {
  if (k < 0 || k >= table.length()) throw std::out_of_range("conditional_row: step out of range");
  if (n < 0 || n > table.height_bound() - (table.length() - k))
    throw std::out_of_range("conditional_row: height outside the exact region");
  const Rational& total = table(k, n);
  if (sgn(total) == 0) throw std::domain_error("conditional_row: height is unreachable");
  std::array<Rational, 3> out;
  for (int d = -1; d <= 1; ++d) {
    const int to = n + d;
    out[idx(d + 1)] = to < 0 ? Rational(0) : table.weights().step(n, to) * table(k + 1, to) / total;
  }
  return out;
}

PathSampler::PathSampler(BackwardTable table, const BoundaryMeasure& alpha) : table_(std::move(table)) {
  const int L = table_.length();
  const int H = table_.height_bound();
  std::vector<Rational> start(idx(table_.start_cap() + 1));
  for (int m = 0; m <= table_.start_cap(); ++m) start[idx(m)] = alpha.weight(m) * table_(0, m);
  start_ = ExactDiscrete(start);

  steps_.resize(idx(L));
  for (int k = 0; k < L; ++k) {
    const int top = H - (L - k);
    auto& rows = steps_[idx(k)];
    rows.resize(idx(top + 1));
    for (int n = 0; n <= top; ++n) {
      if (sgn(table_(k, n)) == 0) continue;
      std::array<Rational, 3> w;
      for (int d = -1; d <= 1; ++d) {
        const int to = n + d;
        w[idx(d + 1)] = to < 0 ? Rational(0) : table_.weights().step(n, to) * table_(k + 1, to);
      }
      rows[idx(n)] = ExactDiscrete(w);
    }
  }
}

MotzkinPath PathSampler::sample(std::uint64_t seed, std::uint64_t stream) const {
  RandomStream rng(seed, stream);
  const int L = table_.length();
  std::vector<int> heights(idx(L + 1));
  heights[0] = static_cast<int>(start_.draw(rng));
  for (int k = 0; k < L; ++k) {
    const int n = heights[idx(k)];
    heights[idx(k + 1)] = n - 1 + static_cast<int>(steps_[idx(k)][idx(n)].draw(rng));
  }
  return MotzkinPath(std::move(heights));
}

std::vector<MotzkinPath> PathSampler::sample_many(std::uint64_t seed, std::size_t count, unsigned threads) const {
  std::vector<std::vector<int>> raw(count);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      MotzkinPath p = sample(seed, i);
      raw[i].assign(p.heights().begin(), p.heights().end());
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, t * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  std::vector<MotzkinPath> paths;
  paths.reserve(count);
  for (auto& h : raw) paths.emplace_back(std::move(h));
  return paths;
}

MotzkinPath sample_path(const BackwardTable& table, const BoundaryMeasure& alpha, std::uint64_t seed) {
  return PathSampler(table, alpha).sample(seed);
}

DistTable empirical_fdd(std::span<const MotzkinPath> paths, std::span<const int> coords) {
  if (paths.empty()) throw std::invalid_argument("empirical_fdd needs at least one path");
  const int L = paths.front().length();
  for (int c : coords)
    if (c < 0 || c > L) throw std::invalid_argument("empirical_fdd: coordinate outside [0, L]");
  std::map<Point, unsigned long> counts;
  for (const auto& path : paths) {
    if (path.length() != L) throw std::invalid_argument("empirical_fdd: paths differ in length");
    Point p;
    p.reserve(coords.size());
    for (int c : coords) p.push_back(path[c]);
    ++counts[std::move(p)];
  }
  std::map<Point, Rational> probs;
  for (const auto& [p, n] : counts) {
    Rational r(n, paths.size());
    r.canonicalize();
    probs.emplace(p, std::move(r));
  }
  return DistTable::from_probabilities(std::move(probs));
}

void write_paths_text(std::ostream& out, std::span<const MotzkinPath> paths) {
  for (const auto& p : paths) out << format_path(p.heights()) << '\n';
}

void write_paths_binary(std::ostream& out, std::span<const MotzkinPath> paths) {
  const std::uint32_t L = paths.empty() ? 0u : static_cast<std::uint32_t>(paths.front().length());
  out.write("MZKP", 4);
  put_u32(out, 1);
  put_u32(out, L);
  put_u64(out, paths.size());
  for (const auto& p : paths) {
    if (static_cast<std::uint32_t>(p.length()) != L) throw std::invalid_argument("paths differ in length");
    for (int h : p.heights()) put_u32(out, static_cast<std::uint32_t>(h));
  }
}

std::vector<MotzkinPath> read_paths_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "MZKP") throw std::runtime_error("not a MZKP path file");
  if (get_u32(in) != 1) throw std::runtime_error("unsupported MZKP version");
  const std::uint32_t L = get_u32(in);
  const std::uint64_t count = get_u64(in);
  std::vector<MotzkinPath> paths;
  paths.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<int> h(L + 1);
    for (auto& x : h) x = static_cast<int>(get_u32(in));
    paths.emplace_back(std::move(h));
  }
  return paths;
}

}  // namespace motzkin
