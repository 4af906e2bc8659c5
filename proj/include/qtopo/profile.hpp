#pragma once

// Piecewise-constant inertia data over a subset of the circle.

#include "qtopo/circle.hpp"
#include "qtopo/pencil.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qtopo {

/// Values of a matrix family's inertia over a cyclic partition of S^1 by
/// sorted breakpoints. Arc i is the open arc from breakpoint i to the next
/// one (the last wraps around). With no breakpoints there is one arc, the
/// whole circle. Pieces outside the domain are kept but flagged.
class IndexProfile {
 public:
  IndexProfile() = default;
  IndexProfile(int dim, CircleSubset domain, std::vector<double> breakpoints,
               std::vector<InertiaTriple> point_values, std::vector<InertiaTriple> arc_values);

  int dim() const { return dim_; }
  const CircleSubset& domain() const { return domain_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<InertiaTriple>& point_values() const { return point_values_; }
  const std::vector<InertiaTriple>& arc_values() const { return arc_values_; }
  bool point_in_domain(std::size_t i) const { return point_in_[i]; }
  bool arc_in_domain(std::size_t i) const { return arc_in_[i]; }

  /// Start angle and counterclockwise length of arc i.
  double arc_start(std::size_t i) const;
  double arc_length(std::size_t i) const;
  double arc_midpoint(std::size_t i) const;

  /// The in-domain pieces whose value satisfies `pred`.
  CircleSubset select(const std::function<bool(const InertiaTriple&)>& pred) const;

  /// Value at an angle, or nullopt outside the domain.
  std::optional<InertiaTriple> value_at(double theta, double tol = kDefaultAngleTol) const;

  /// Extremes of i_plus / i_minus over the domain; nullopt on an empty domain.
  std::optional<int> max_plus() const;
  std::optional<int> min_plus() const;
  std::optional<int> min_minus() const;

 private:
  template <typename F>
  std::optional<int> extreme(F field, bool take_max) const;

  int dim_ = 0;
  CircleSubset domain_;
  std::vector<double> breakpoints_;
  std::vector<InertiaTriple> point_values_;
  std::vector<InertiaTriple> arc_values_;
  std::vector<bool> point_in_;
  std::vector<bool> arc_in_;
};

using InertiaEvaluator = std::function<InertiaTriple(double)>;

/// Evaluates `eval` at every breakpoint (the given ones plus the domain
/// boundary) and at the midpoint of every arc. In-domain arcs get a second
/// interior sample; disagreement throws NumericError.
IndexProfile build_profile(int dim, const InertiaEvaluator& eval, std::vector<double> breakpoints,
                           const CircleSubset& domain, double tol_angle = kDefaultAngleTol);

/// Breakpoints sorted, reduced to [0, 2pi) and merged within tol.
std::vector<double> canonical_breakpoints(std::vector<double> angles, double tol = kDefaultAngleTol);

}  // namespace qtopo
