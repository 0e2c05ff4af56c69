#pragma once

#include "motzkin/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace motzkin {

/// Altitude-dependent edge weights (a_n, b_n, c_n) for up, horizontal and down
/// steps leaving height n.
///
/// General sequences are stored as finite prefixes; heights past the end of a
/// prefix reuse its last entry. The constant case (1, σ, 1) is the privileged
/// constructor and the only one accepted together with a geometric left
/// boundary measure. c_0 is stored but never read.
class WeightConfig {
 public:
  /// a = c = 1, b = σ. σ = 0 is allowed (paths with horizontal steps get weight 0).
  static WeightConfig constant(Rational sigma);
  static WeightConfig general(std::vector<Rational> up, std::vector<Rational> level,
                              std::vector<Rational> down);

  const Rational& up(int height) const;
  const Rational& level(int height) const;
  const Rational& down(int height) const;

  /// Step weight for the edge from height `from` to height `to` (0 if |to − from| > 1 or to < 0).
  Rational step(int from, int to) const;

  bool is_constant() const { return sigma_.has_value(); }
  const std::optional<Rational>& sigma() const { return sigma_; }

 private:
  WeightConfig() = default;
  static const Rational& at(const std::vector<Rational>& seq, int height);

  std::vector<Rational> up_;
  std::vector<Rational> level_;
  std::vector<Rational> down_;
  std::optional<Rational> sigma_;
};

/// Non-negative heights (γ_0, …, γ_L) with unit-or-zero jumps, L >= 1.
class MotzkinPath {
 public:
  explicit MotzkinPath(std::vector<int> heights);

  int length() const { return static_cast<int>(heights_.size()) - 1; }
  std::span<const int> heights() const { return heights_; }
  int operator[](int k) const { return heights_[static_cast<std::size_t>(k)]; }

  friend bool operator==(const MotzkinPath&, const MotzkinPath&) = default;

 private:
  std::vector<int> heights_;
};

/// "2,1,1,0" <-> MotzkinPath.
MotzkinPath parse_path(std::string_view text);
std::string format_path(std::span<const int> heights);

/// Weights on the end-point altitudes: a finite vector or ρⁿ.
class BoundaryMeasure {
 public:
  struct FiniteSupport {
    std::vector<Rational> weights;
  };
  struct Geometric {
    Rational ratio;
  };

  static BoundaryMeasure finite(std::vector<Rational> weights);
  static BoundaryMeasure geometric(Rational ratio);
  /// Unit mass at `height`.
  static BoundaryMeasure point(int height);

  Rational weight(int n) const;
  bool is_finite() const { return std::holds_alternative<FiniteSupport>(data_); }
  bool is_geometric() const { return !is_finite(); }
  /// Largest n with positive weight; only for finite support.
  int max_support() const;
  /// ρ of a geometric measure.
  const Rational& ratio() const;
  const std::variant<FiniteSupport, Geometric>& data() const { return data_; }

  friend bool operator==(const BoundaryMeasure& a, const BoundaryMeasure& b);

 private:
  explicit BoundaryMeasure(std::variant<FiniteSupport, Geometric> d) : data_(std::move(d)) {}
  std::variant<FiniteSupport, Geometric> data_;
};

/// "finite:1,1", "geom:0.5", "delta:2".
BoundaryMeasure parse_measure(std::string_view text);
std::string format_measure(const BoundaryMeasure& measure);

/// Edge weights, both boundary measures and the length. Construction rejects
/// configurations whose normalization constant is not known to be finite:
/// admitted are finite/finite, finite/geometric(any ρ₁ > 0) and
/// geometric(ρ₀ < 1)/geometric(ρ₁) with ρ₀ρ₁ < 1 and constant weights.
class ModelSpec {
 public:
  ModelSpec(WeightConfig weights, BoundaryMeasure alpha, BoundaryMeasure beta, int length);

  const WeightConfig& weights() const { return weights_; }
  const BoundaryMeasure& alpha() const { return alpha_; }
  const BoundaryMeasure& beta() const { return beta_; }
  int length() const { return length_; }

 private:
  WeightConfig weights_;
  BoundaryMeasure alpha_;
  BoundaryMeasure beta_;
  int length_;
};

/// ∏ a^{ε⁺} b^{ε⁰} c^{ε⁻}, indexed by the altitude at the left end of each edge.
Rational path_weight(const MotzkinPath& path, const WeightConfig& weights);

struct ReversedPath {
  std::vector<int> heights;     ///< γ_{L−k}
  std::vector<int> increments;  ///< γ_{L−k} − γ_L; starts at 0, may go negative
};

ReversedPath reverse_path(const MotzkinPath& path);

}  // namespace motzkin
