#pragma once

// Semialgebraic subsets of the unit circle and closed convex cones in the
// plane. A subset is stored as a canonical, counterclockwise-sorted list of
// connected components, so component counts fall out of the representation.

#include <Eigen/Dense>

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace qtopo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultAngleTol = 1e-9;

/// Reduce an angle to [0, 2pi).
double normalize_angle(double theta);

/// Counterclockwise distance from `from` to `to`, in [0, 2pi).
double ccw_distance(double from, double to);

/// Shortest distance between two angles on the circle, in [0, pi].
double circle_distance(double a, double b);

/// A point of S^1, stored as its canonical angle in [0, 2pi).
class Angle {
 public:
  Angle() = default;
  explicit Angle(double theta) : theta_(normalize_angle(theta)) {}

  static Angle from_direction(const Eigen::Vector2d& v);

  double radians() const { return theta_; }
  Eigen::Vector2d direction() const;
  Angle antipode() const { return Angle(theta_ + std::numbers::pi); }

  bool approx_equal(Angle other, double tol = kDefaultAngleTol) const {
    return circle_distance(theta_, other.theta_) <= tol;
  }

 private:
  double theta_ = 0.0;
};

struct CircleItem {
  enum class Kind { point, arc };

  Kind kind = Kind::point;
  double start = 0.0;  // canonical angle
  double span = 0.0;   // counterclockwise length; 0 for points, (0, 2pi] for arcs
  bool closed_start = true;
  bool closed_end = true;

  double end() const { return normalize_angle(start + span); }
};

/// A finite union of points and arcs of S^1.
///
/// Every constructor canonicalizes: items are pairwise disjoint, sorted by
/// start angle, and no two items touch through an included endpoint. Each
/// item is therefore exactly one connected component. The full circle is a
/// flag and carries no items.
class CircleSubset {
 public:
  CircleSubset() = default;

  static CircleSubset empty() { return {}; }
  static CircleSubset full_circle();
  static CircleSubset point(double theta);
  /// Counterclockwise arc from `start` to `end`. start == end means the
  /// circle minus (or including) that point.
  static CircleSubset arc(double start, double end, bool closed_start, bool closed_end);
  static CircleSubset from_items(std::span<const CircleItem> items, bool full,
                                 double tol = kDefaultAngleTol);

  /// Build a subset from a cyclic partition of the circle: sorted
  /// breakpoints b_0 < ... < b_{m-1}, membership of each breakpoint, and
  /// membership of each open arc (b_i, b_{i+1}) (the last arc wraps to b_0).
  /// With no breakpoints, arc_in must hold a single flag for the whole circle.
  static CircleSubset from_pieces(std::span<const double> breakpoints,
                                  const std::vector<bool>& point_in,
                                  const std::vector<bool>& arc_in);

  bool is_full() const { return full_; }
  bool is_empty() const { return !full_ && items_.empty(); }
  const std::vector<CircleItem>& items() const { return items_; }

  bool contains(double theta, double tol = kDefaultAngleTol) const;

  /// Endpoint angles of all items (unsorted, may repeat).
  std::vector<double> boundary_angles() const;

  /// The connected components as separate subsets.
  std::vector<CircleSubset> components() const;

  bool approx_equal(const CircleSubset& other, double tol = kDefaultAngleTol) const;

 private:
  bool full_ = false;
  std::vector<CircleItem> items_;
};

enum class SetOp { unite, intersect, subtract };

CircleSubset combine(const CircleSubset& a, const CircleSubset& b, SetOp op,
                     double tol = kDefaultAngleTol);
CircleSubset complement(const CircleSubset& a, double tol = kDefaultAngleTol);
bool is_subset(const CircleSubset& inner, const CircleSubset& outer,
               double tol = kDefaultAngleTol);

struct CircleBetti {
  int b0 = 0;
  int b1 = 0;
  friend bool operator==(const CircleBetti&, const CircleBetti&) = default;
};

CircleBetti betti_circle(const CircleSubset& a);

/// Mod-2 Betti numbers of the pair (A, B), B contained in A.
/// Throws InvalidInput when B is not a subset of A.
CircleBetti betti_pair(const CircleSubset& a, const CircleSubset& b,
                       double tol = kDefaultAngleTol);

int euler_circle(const CircleSubset& a);

/// Closed convex cone in R^2.
class PlanarCone {
 public:
  enum class Kind { zero, ray, line, sector, halfplane, full };

  PlanarCone() = default;

  static PlanarCone zero();
  static PlanarCone full();
  static PlanarCone ray(const Eigen::Vector2d& direction);
  /// The line spanned by `direction` (both rays).
  static PlanarCone line(const Eigen::Vector2d& direction);
  /// Cone spanned by two directions whose angle is strictly between 0 and pi.
  static PlanarCone sector(const Eigen::Vector2d& g1, const Eigen::Vector2d& g2);
  /// The closed half-plane swept counterclockwise from `start` to -start.
  static PlanarCone halfplane(const Eigen::Vector2d& start);
  /// {y0 <= 0, y1 <= 0}.
  static PlanarCone nonpositive_quadrant();

  Kind kind() const { return kind_; }
  const std::vector<Eigen::Vector2d>& generators() const { return generators_; }

  bool contains(const Eigen::Vector2d& y, double tol = 1e-12) const;
  /// Euclidean projection onto the cone.
  Eigen::Vector2d project(const Eigen::Vector2d& y) const;

  bool approx_equal(const PlanarCone& other, double tol = 1e-9) const;

 private:
  PlanarCone(Kind kind, std::vector<Eigen::Vector2d> generators)
      : kind_(kind), generators_(std::move(generators)) {}

  Kind kind_ = Kind::zero;
  std::vector<Eigen::Vector2d> generators_;
};

const char* to_string(PlanarCone::Kind kind);

/// K° = {eta | eta(y) <= 0 for all y in K}.
PlanarCone polar_cone(const PlanarCone& k);

/// Omega = K° ∩ S^1.
CircleSubset omega_set(const PlanarCone& k);

}  // namespace qtopo
