#include "motzkin/model.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace motzkin {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::string s(text);
  char* end = nullptr;
  long value = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw std::invalid_argument("not an integer: '" + s + "'");
  return static_cast<int>(value);
}

void require_positive(const std::vector<Rational>& seq, const char* name) {
  if (seq.empty()) throw std::invalid_argument(std::string(name) + " weights must be non-empty");
  for (const auto& v : seq)
    if (sgn(v) <= 0) throw std::invalid_argument(std::string(name) + " weights must be positive");
}

}  // namespace

WeightConfig WeightConfig::constant(Rational sigma) {
  if (sgn(sigma) < 0) throw std::invalid_argument("sigma must be non-negative");
  WeightConfig w;
  w.up_ = {Rational(1)};
  w.down_ = {Rational(1)};
  w.level_ = {sigma};
  w.sigma_ = std::move(sigma);
  return w;
}

WeightConfig WeightConfig::general(std::vector<Rational> up, std::vector<Rational> level,
                                   std::vector<Rational> down) {
  require_positive(up, "up");
  require_positive(level, "level");
  require_positive(down, "down");
  WeightConfig w;
  w.up_ = std::move(up);
  w.level_ = std::move(level);
  w.down_ = std::move(down);
  return w;
}

const Rational& WeightConfig::at(const std::vector<Rational>& seq, int height) {
  if (height < 0) throw std::out_of_range("negative height");
  auto idx = static_cast<std::size_t>(height);
  return idx < seq.size() ? seq[idx] : seq.back();
}

const Rational& WeightConfig::up(int height) const { return at(up_, height); }
const Rational& WeightConfig::level(int height) const { return at(level_, height); }
const Rational& WeightConfig::down(int height) const { return at(down_, height); }

Rational WeightConfig::step(int from, int to) const {
  if (from < 0 || to < 0) return 0;
  switch (to - from) {
    case 1: return up(from);
    case 0: return level(from);
    case -1: return down(from);
    default: return 0;
  }
}

MotzkinPath::MotzkinPath(std::vector<int> heights) : heights_(std::move(heights)) {
  if (heights_.size() < 2) throw std::invalid_argument("a Motzkin path needs length L >= 1");
  for (std::size_t k = 0; k < heights_.size(); ++k) {
    if (heights_[k] < 0) throw std::invalid_argument("negative height in path");
    if (k > 0 && std::abs(heights_[k] - heights_[k - 1]) > 1)
      throw std::invalid_argument("path jumps by more than one");
  }
}

MotzkinPath parse_path(std::string_view text) {
  std::vector<int> heights;
  for (auto part : split(text, ',')) heights.push_back(parse_int(part));
  return MotzkinPath(std::move(heights));
}

std::string format_path(std::span<const int> heights) {
  std::string out;
  for (std::size_t k = 0; k < heights.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(heights[k]);
  }
  return out;
}

BoundaryMeasure BoundaryMeasure::finite(std::vector<Rational> weights) {
  bool any_positive = false;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw std::invalid_argument("boundary weights must be non-negative");
    any_positive = any_positive || sgn(w) > 0;
  }
  if (!any_positive) throw std::invalid_argument("boundary measure must have a positive weight");
  while (sgn(weights.back()) == 0) weights.pop_back();
  return BoundaryMeasure(FiniteSupport{std::move(weights)});
}

BoundaryMeasure BoundaryMeasure::geometric(Rational ratio) {
  if (sgn(ratio) <= 0) throw std::invalid_argument("geometric ratio must be positive");
  return BoundaryMeasure(Geometric{std::move(ratio)});
}

BoundaryMeasure BoundaryMeasure::point(int height) {
  if (height < 0) throw std::invalid_argument("point mass at negative height");
  std::vector<Rational> w(static_cast<std::size_t>(height) + 1, Rational(0));
  w.back() = 1;
  return finite(std::move(w));
}

Rational BoundaryMeasure::weight(int n) const {
  if (n < 0) return 0;
  if (const auto* f = std::get_if<FiniteSupport>(&data_)) {
    auto idx = static_cast<std::size_t>(n);
    return idx < f->weights.size() ? f->weights[idx] : Rational(0);
  }
  return pow(std::get<Geometric>(data_).ratio, static_cast<unsigned long>(n));
}

int BoundaryMeasure::max_support() const {
  const auto* f = std::get_if<FiniteSupport>(&data_);
  if (!f) throw std::logic_error("geometric measure has unbounded support");
  return static_cast<int>(f->weights.size()) - 1;
}

const Rational& BoundaryMeasure::ratio() const {
  const auto* g = std::get_if<Geometric>(&data_);
  if (!g) throw std::logic_error("finite-support measure has no ratio");
  return g->ratio;
}

bool operator==(const BoundaryMeasure& a, const BoundaryMeasure& b) {
  if (a.is_finite() != b.is_finite()) return false;
  if (a.is_finite())
    return std::get<BoundaryMeasure::FiniteSupport>(a.data_).weights ==
           std::get<BoundaryMeasure::FiniteSupport>(b.data_).weights;
  return a.ratio() == b.ratio();
}

BoundaryMeasure parse_measure(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("measure must look like finite:1,1 or geom:0.5 or delta:0, got '" +
                                std::string(text) + "'");
  std::string_view kind = text.substr(0, colon);
  std::string_view body = text.substr(colon + 1);
  if (kind == "finite") {
    std::vector<Rational> weights;
    for (auto part : split(body, ',')) weights.push_back(parse_rational(part));
    return BoundaryMeasure::finite(std::move(weights));
  }
  if (kind == "geom") return BoundaryMeasure::geometric(parse_rational(body));
  if (kind == "delta") return BoundaryMeasure::point(parse_int(body));
  throw std::invalid_argument("unknown measure kind '" + std::string(kind) + "'");
}

std::string format_measure(const BoundaryMeasure& measure) {
  if (measure.is_geometric()) return "geom:" + to_string(measure.ratio());
  std::string out = "finite:";
  const auto& w = std::get<BoundaryMeasure::FiniteSupport>(measure.data()).weights;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += to_string(w[i]);
  }
  return out;
}

ModelSpec::ModelSpec(WeightConfig weights, BoundaryMeasure alpha, BoundaryMeasure beta, int length)
    : weights_(std::move(weights)), alpha_(std::move(alpha)), beta_(std::move(beta)), length_(length) {
  if (length_ < 1) throw std::invalid_argument("path length L must be >= 1");
  if (alpha_.is_geometric()) {
    if (!beta_.is_geometric())
      throw std::invalid_argument(
          "geometric alpha is only admitted together with geometric beta");
    if (alpha_.ratio() >= 1) throw std::invalid_argument("geometric alpha needs rho0 < 1");
    if (alpha_.ratio() * beta_.ratio() >= 1)
      throw std::invalid_argument("geometric boundary measures need rho0 * rho1 < 1");
    if (!weights_.is_constant())
      throw std::invalid_argument("geometric alpha requires constant (1, sigma, 1) weights");
  }
}

Rational path_weight(const MotzkinPath& path, const WeightConfig& weights) {
  Rational w = 1;
  for (int k = 1; k <= path.length(); ++k) w *= weights.step(path[k - 1], path[k]);
  return w;
}

ReversedPath reverse_path(const MotzkinPath& path) {
  const int L = path.length();
  ReversedPath out;
  out.heights.reserve(static_cast<std::size_t>(L) + 1);
  out.increments.reserve(static_cast<std::size_t>(L) + 1);
  for (int k = 0; k <= L; ++k) {
    out.heights.push_back(path[L - k]);
    out.increments.push_back(path[L - k] - path[L]);
  }
  return out;
}

}  // namespace motzkin
