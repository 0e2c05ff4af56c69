#pragma once

#include "motzkin/rational.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace motzkin {

using Point = std::vector<int>;

struct Atom {
  Point point;
  Rational prob;
};

/// Exact finite probability table over integer tuples.
///
/// Atoms are kept sorted by point and all carry strictly positive mass.
/// `truncated_mass` is the exact mass of atoms that were cut off (infinite
/// supports); atoms plus truncated mass always sum to exactly 1.
class DistTable {
 public:
  DistTable() = default;

  /// Takes probabilities as given; throws std::logic_error unless they sum to 1 − truncated.
  static DistTable from_probabilities(std::map<Point, Rational> atoms, Rational truncated_mass = 0);
  /// Normalizes non-negative weights by their total.
  static DistTable from_weights(std::map<Point, Rational> weights);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Rational& truncated_mass() const { return truncated_mass_; }
  std::size_t size() const { return atoms_.size(); }
  /// Tuple length; 0 for an empty table.
  int dimension() const;

  /// Probability of `point` (0 when absent).
  Rational prob(const Point& point) const;

  /// Law of the selected coordinates.
  DistTable marginal(std::span<const int> coords) const;
  /// Push-forward through `f` (merging atoms that collide).
  DistTable map_points(const std::function<Point(const Point&)>& f) const;

  /// [{support: [...], prob: "p/q", prob_float: x}, ...]
  nlohmann::json to_json() const;
  /// Header x0,…,x{d−1},prob,prob_float; prob as "p/q".
  std::string to_csv() const;

  friend bool operator==(const DistTable& a, const DistTable& b);

 private:
  std::vector<Atom> atoms_;
  Rational truncated_mass_ = 0;
};

/// Independent product: points are concatenated.
DistTable product(const DistTable& first, const DistTable& second);

}  // namespace motzkin
