#include "motzkin/dist_table.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace motzkin {

DistTable DistTable::from_probabilities(std::map<Point, Rational> atoms, Rational truncated_mass) {
  DistTable table;
  Rational total = truncated_mass;
  table.atoms_.reserve(atoms.size());
  for (auto& [point, prob] : atoms) {
    if (sgn(prob) < 0) throw std::logic_error("negative probability");
    if (sgn(prob) == 0) continue;
    total += prob;
    table.atoms_.push_back({point, std::move(prob)});
  }
  if (total != 1) throw std::logic_error("probabilities do not sum to 1: " + to_string(total));
  table.truncated_mass_ = std::move(truncated_mass);
  return table;
}

DistTable DistTable::from_weights(std::map<Point, Rational> weights) {
  Rational total = 0;
  for (const auto& [point, w] : weights) total += w;
  if (sgn(total) <= 0) throw std::invalid_argument("weights have no positive mass");
  for (auto& [point, w] : weights) w /= total;
  return from_probabilities(std::move(weights));
}

int DistTable::dimension() const {
  return atoms_.empty() ? 0 : static_cast<int>(atoms_.front().point.size());
}

Rational DistTable::prob(const Point& point) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                             [](const Atom& a, const Point& p) { return a.point < p; });
  if (it != atoms_.end() && it->point == point) return it->prob;
  return 0;
}

DistTable DistTable::marginal(std::span<const int> coords) const {
  const int dim = dimension();
  for (int c : coords)
    if (c < 0 || c >= dim) throw std::out_of_range("marginal coordinate out of range");
  return map_points([&](const Point& p) {
    Point q;
    q.reserve(coords.size());
    for (int c : coords) q.push_back(p[static_cast<std::size_t>(c)]);
    return q;
  });
}

DistTable DistTable::map_points(const std::function<Point(const Point&)>& f) const {
  std::map<Point, Rational> merged;
  for (const auto& atom : atoms_) merged[f(atom.point)] += atom.prob;
  return from_probabilities(std::move(merged), truncated_mass_);
}

nlohmann::json DistTable::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& atom : atoms_) {
    out.push_back({{"support", atom.point},
                   {"prob", to_string(atom.prob)},
                   {"prob_float", to_double(atom.prob)}});
  }
  return out;
}

std::string DistTable::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  const int dim = dimension();
  for (int i = 0; i < dim; ++i) out << 'x' << i << ',';
  out << "prob,prob_float\n";
  for (const auto& atom : atoms_) {
    for (int x : atom.point) out << x << ',';
    out << to_string(atom.prob) << ',' << to_double(atom.prob) << '\n';
  }
  return out.str();
}

bool operator==(const DistTable& a, const DistTable& b) {
  if (a.truncated_mass_ != b.truncated_mass_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].prob != b.atoms_[i].prob) return false;
  return true;
}

DistTable product(const DistTable& first, const DistTable& second) {
  std::map<Point, Rational> atoms;
  for (const auto& x : first.atoms()) {
    for (const auto& y : second.atoms()) {
      Point p = x.point;
      p.insert(p.end(), y.point.begin(), y.point.end());
      atoms[std::move(p)] = x.prob * y.prob;
    }
  }
  // Mass lost to truncation on either side: 1 − (1 − t₁)(1 − t₂).
  Rational kept = (1 - first.truncated_mass()) * (1 - second.truncated_mass());
  return DistTable::from_probabilities(std::move(atoms), 1 - kept);
}

}  // namespace motzkin
