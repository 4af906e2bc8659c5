#include "qtopo/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qtopo {

std::vector<double> canonical_breakpoints(std::vector<double> angles, double tol) {
  for (auto& a : angles) a = normalize_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || a - out.back() > tol) out.push_back(a);
  if (out.size() > 1 && out.front() + kTwoPi - out.back() <= tol) out.pop_back();
  return out;
}

IndexProfile::IndexProfile(int dim, CircleSubset domain, std::vector<double> breakpoints,
                           std::vector<InertiaTriple> point_values,
                           std::vector<InertiaTriple> arc_values)
    : dim_(dim),
      domain_(std::move(domain)),
      breakpoints_(std::move(breakpoints)),
      point_values_(std::move(point_values)),
      arc_values_(std::move(arc_values)) {
  const std::size_t arcs = breakpoints_.empty() ? 1 : breakpoints_.size();
  if (point_values_.size() != breakpoints_.size() || arc_values_.size() != arcs)
    throw InvalidInput("profile piece counts do not match breakpoints");
  point_in_.resize(breakpoints_.size());
  arc_in_.resize(arcs);
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) point_in_[i] = domain_.contains(breakpoints_[i]);
  for (std::size_t i = 0; i < arcs; ++i) arc_in_[i] = domain_.contains(arc_midpoint(i));
}

double IndexProfile::arc_start(std::size_t i) const {
  return breakpoints_.empty() ? 0.0 : breakpoints_[i];
}

double IndexProfile::arc_length(std::size_t i) const {
  if (breakpoints_.size() <= 1) return kTwoPi;
  const double next = breakpoints_[(i + 1) % breakpoints_.size()];
  return ccw_distance(breakpoints_[i], next);
}

double IndexProfile::arc_midpoint(std::size_t i) const {
  return normalize_angle(arc_start(i) + 0.5 * arc_length(i));
}

CircleSubset IndexProfile::select(const std::function<bool(const InertiaTriple&)>& pred) const {
  std::vector<bool> p(point_values_.size()), a(arc_values_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = point_in_[i] && pred(point_values_[i]);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = arc_in_[i] && pred(arc_values_[i]);
  return CircleSubset::from_pieces(breakpoints_, p, a);
}

std::optional<InertiaTriple> IndexProfile::value_at(double theta, double tol) const {
  theta = normalize_angle(theta);
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    if (circle_distance(theta, breakpoints_[i]) <= tol)
      return point_in_[i] ? std::optional(point_values_[i]) : std::nullopt;
  for (std::size_t i = 0; i < arc_values_.size(); ++i) {
    if (breakpoints_.empty() || ccw_distance(arc_start(i), theta) < arc_length(i))
      return arc_in_[i] ? std::optional(arc_values_[i]) : std::nullopt;
  }
  return std::nullopt;
}

template <typename F>
std::optional<int> IndexProfile::extreme(F field, bool take_max) const {
  std::optional<int> best;
  const auto visit = [&](const InertiaTriple& t) {
    const int v = field(t);
    if (!best || (take_max ? v > *best : v < *best)) best = v;
  };
  for (std::size_t i = 0; i < point_values_.size(); ++i)
    if (point_in_[i]) visit(point_values_[i]);
  for (std::size_t i = 0; i < arc_values_.size(); ++i)
    if (arc_in_[i]) visit(arc_values_[i]);
  return best;
}

std::optional<int> IndexProfile::max_plus() const {
  return extreme([](const InertiaTriple& t) { return t.i_plus; }, true);
}
std::optional<int> IndexProfile::min_plus() const {
  return extreme([](const InertiaTriple& t) { return t.i_plus; }, false);
}
std::optional<int> IndexProfile::min_minus() const {
  return extreme([](const InertiaTriple& t) { return t.i_minus; }, false);
}

IndexProfile build_profile(int dim, const InertiaEvaluator& eval, std::vector<double> breakpoints,
                           const CircleSubset& domain, double tol_angle) {
  for (double b : domain.boundary_angles()) breakpoints.push_back(b);
  breakpoints = canonical_breakpoints(std::move(breakpoints), tol_angle);

  std::vector<InertiaTriple> points(breakpoints.size());
  for (std::size_t i = 0; i < breakpoints.size(); ++i) points[i] = eval(breakpoints[i]);

  const std::size_t arcs = breakpoints.empty() ? 1 : breakpoints.size();
  std::vector<InertiaTriple> values(arcs);
  for (std::size_t i = 0; i < arcs; ++i) {
    const double start = breakpoints.empty() ? 0.7 : breakpoints[i];
    const double len = breakpoints.size() <= 1 ? kTwoPi
                                               : ccw_distance(breakpoints[i], breakpoints[(i + 1) % arcs]);
    const double mid = start + 0.5 * len;
    values[i] = eval(mid);
    if (len < 1e-6 || !domain.contains(normalize_angle(mid))) continue;
    const InertiaTriple check = eval(start + 0.3 * len);
    if (!(check == values[i])) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "inconsistent inertia samples on arc starting at " << normalize_angle(start);
      throw NumericError(msg.str());
    }
  }
  return IndexProfile(dim, domain, std::move(breakpoints), std::move(points), std::move(values));
}

}  // namespace qtopo
