#include "qtopo/circle.hpp"

#include "qtopo/errors.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace qtopo {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double ccw_distance(double from, double to) { return normalize_angle(to - from); }

double circle_distance(double a, double b) {
  const double d = ccw_distance(a, b);
  return std::min(d, kTwoPi - d);
}

Angle Angle::from_direction(const Eigen::Vector2d& v) { return Angle(std::atan2(v.y(), v.x())); }

Eigen::Vector2d Angle::direction() const { return {std::cos(theta_), std::sin(theta_)}; }

namespace {

bool item_contains(const CircleItem& item, double theta, double tol) {
  if (item.kind == CircleItem::Kind::point) return circle_distance(item.start, theta) <= tol;
  const double d = ccw_distance(item.start, theta);
  const bool near_start = d <= tol || kTwoPi - d <= tol;
  const bool near_end = std::abs(d - item.span) <= tol ||
                        (item.span >= kTwoPi - tol && near_start);
  if (near_start && near_end) return item.closed_start || item.closed_end;
  if (near_start) return item.closed_start;
  if (near_end) return item.closed_end;
  return d < item.span;
}

// Sorted, cyclically deduplicated angles.
std::vector<double> sorted_breakpoints(std::vector<double> angles, double tol) {
  for (double& a : angles) a = normalize_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles) {
    if (!out.empty() && a - out.back() <= tol) continue;
    out.push_back(a);
  }
  if (out.size() > 1 && kTwoPi - out.back() + out.front() <= tol) out.pop_back();
  return out;
}

double piece_arc_length(std::span<const double> bp, std::size_t i) {
  if (bp.size() == 1) return kTwoPi;
  const double next = bp[(i + 1) % bp.size()];
  const double len = ccw_distance(bp[i], next);
  return len == 0.0 ? kTwoPi : len;
}

template <typename Member>
CircleSubset rebuild(std::vector<double> angles, double tol, Member&& member) {
  const std::vector<double> bp = sorted_breakpoints(std::move(angles), tol);
  std::vector<bool> point_in(bp.size());
  std::vector<bool> arc_in(std::max<std::size_t>(bp.size(), 1));
  if (bp.empty()) arc_in[0] = member(0.0);
  for (std::size_t i = 0; i < bp.size(); ++i) {
    point_in[i] = member(bp[i]);
    arc_in[i] = member(normalize_angle(bp[i] + 0.5 * piece_arc_length(bp, i)));
  }
  return CircleSubset::from_pieces(bp, point_in, arc_in);
}

}  // namespace

CircleSubset CircleSubset::full_circle() {
  CircleSubset s;
  s.full_ = true;
  return s;
}

CircleSubset CircleSubset::point(double theta) {
  CircleSubset s;
  s.items_.push_back({CircleItem::Kind::point, normalize_angle(theta), 0.0, true, true});
  return s;
}

CircleSubset CircleSubset::arc(double start, double end, bool closed_start, bool closed_end) {
  double span = ccw_distance(start, end);
  if (span == 0.0) span = kTwoPi;
  const CircleItem item{CircleItem::Kind::arc, normalize_angle(start), span, closed_start, closed_end};
  return from_items(std::span<const CircleItem>(&item, 1), false);
}

CircleSubset CircleSubset::from_items(std::span<const CircleItem> items, bool full, double tol) {
  if (full) return full_circle();
  std::vector<double> angles;
  for (const auto& it : items) {
    angles.push_back(it.start);
    if (it.kind == CircleItem::Kind::arc) angles.push_back(it.start + it.span);
  }
  return rebuild(std::move(angles), tol, [&](double theta) {
    return std::any_of(items.begin(), items.end(),
                       [&](const CircleItem& it) { return item_contains(it, theta, tol); });
  });
}

CircleSubset CircleSubset::from_pieces(std::span<const double> bp, const std::vector<bool>& point_in,
                                       const std::vector<bool>& arc_in) {
  const std::size_t m = bp.size();
  if (m == 0) {
    if (arc_in.size() != 1) throw InvalidInput("from_pieces: expected one arc flag");
    return arc_in[0] ? full_circle() : empty();
  }
  if (point_in.size() != m || arc_in.size() != m)
    throw InvalidInput("from_pieces: flag count does not match breakpoints");

  // Pieces in cyclic order: point 0, arc 0, point 1, arc 1, ...
  const std::size_t np = 2 * m;
  auto in = [&](std::size_t p) { return p % 2 == 0 ? point_in[p / 2] : arc_in[p / 2]; };

  std::size_t first_out = np;
  for (std::size_t p = 0; p < np; ++p) {
    if (!in(p)) {
      first_out = p;
      break;
    }
  }
  if (first_out == np) return full_circle();

  CircleSubset out;
  std::size_t p = (first_out + 1) % np;
  for (std::size_t step = 0; step < np; ++step, p = (p + 1) % np) {
    if (!in(p)) continue;
    // Start a run at p and extend it while pieces stay in.
    const std::size_t run_start = p;
    double span = 0.0;
    std::size_t last = p;
    std::size_t q = p;
    while (true) {
      if (q % 2 == 1) span += piece_arc_length(bp, q / 2);
      last = q;
      const std::size_t next = (q + 1) % np;
      if (!in(next) || next == first_out) break;
      q = next;
      ++step;
    }
    CircleItem item;
    const std::size_t si = run_start / 2;
    item.start = bp[si];
    item.closed_start = run_start % 2 == 0;
    item.closed_end = last % 2 == 0;
    if (run_start == last && run_start % 2 == 0) {
      item.kind = CircleItem::Kind::point;
      item.span = 0.0;
    } else {
      item.kind = CircleItem::Kind::arc;
      item.span = std::min(span, kTwoPi);
    }
    out.items_.push_back(item);
    p = last;
  }
  std::sort(out.items_.begin(), out.items_.end(),
            [](const CircleItem& a, const CircleItem& b) { return a.start < b.start; });
  return out;
}

bool CircleSubset::contains(double theta, double tol) const {
  if (full_) return true;
  return std::any_of(items_.begin(), items_.end(),
                     [&](const CircleItem& it) { return item_contains(it, theta, tol); });
}

std::vector<double> CircleSubset::boundary_angles() const {
  std::vector<double> out;
  for (const auto& it : items_) {
    out.push_back(it.start);
    if (it.kind == CircleItem::Kind::arc) out.push_back(it.end());
  }
  return out;
}

std::vector<CircleSubset> CircleSubset::components() const {
  if (full_) return {full_circle()};
  std::vector<CircleSubset> out;
  for (const auto& it : items_) {
    CircleSubset c;
    c.items_.push_back(it);
    out.push_back(std::move(c));
  }
  return out;
}

bool CircleSubset::approx_equal(const CircleSubset& other, double tol) const {
  if (full_ != other.full_ || items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& a = items_[i];
    const auto& b = other.items_[i];
    if (a.kind != b.kind || circle_distance(a.start, b.start) > tol ||
        std::abs(a.span - b.span) > tol)
      return false;
    if (a.kind == CircleItem::Kind::arc &&
        (a.closed_start != b.closed_start || a.closed_end != b.closed_end))
      return false;
  }
  return true;
}

CircleSubset combine(const CircleSubset& a, const CircleSubset& b, SetOp op, double tol) {
  std::vector<double> angles = a.boundary_angles();
  const auto bb = b.boundary_angles();
  angles.insert(angles.end(), bb.begin(), bb.end());
  return rebuild(std::move(angles), tol, [&](double theta) {
    const bool in_a = a.contains(theta, tol);
    const bool in_b = b.contains(theta, tol);
    switch (op) {
      case SetOp::unite:
        return in_a || in_b;
      case SetOp::intersect:
        return in_a && in_b;
      case SetOp::subtract:
        return in_a && !in_b;
    }
    return false;
  });
}

CircleSubset complement(const CircleSubset& a, double tol) {
  return combine(CircleSubset::full_circle(), a, SetOp::subtract, tol);
}

bool is_subset(const CircleSubset& inner, const CircleSubset& outer, double tol) {
  return combine(inner, outer, SetOp::subtract, tol).is_empty();
}

CircleBetti betti_circle(const CircleSubset& a) {
  if (a.is_full()) return {1, 1};
  return {static_cast<int>(a.items().size()), 0};
}

int euler_circle(const CircleSubset& a) {
  const auto b = betti_circle(a);
  return b.b0 - b.b1;
}

CircleBetti betti_pair(const CircleSubset& a, const CircleSubset& b, double tol) {
  if (!is_subset(b, a, tol)) throw InvalidInput("betti_pair: B is not contained in A");
  int b0_rel = 0;
  if (a.is_full()) {
    b0_rel = b.is_empty() ? 1 : 0;
  } else {
    for (const auto& comp : a.components()) {
      if (combine(comp, b, SetOp::intersect, tol).is_empty()) ++b0_rel;
    }
  }
  return {b0_rel, b0_rel - euler_circle(a) + euler_circle(b)};
}

// ---------------------------------------------------------------------------
// Planar cones. Every cone other than {0}, R^2 and a line is a closed arc of
// directions [start, start + width] with width in [0, pi].

namespace {

Eigen::Vector2d unit(const Eigen::Vector2d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cone generator must be a nonzero finite vector");
  // Leave unit vectors untouched so serialized cones round-trip exactly.
  if (std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return v;
  return v / n;
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

struct DirectionArc {
  double start;
  double width;
};

DirectionArc direction_arc(const PlanarCone& k) {
  const auto& g = k.generators();
  const double a = Angle::from_direction(g[0]).radians();
  switch (k.kind()) {
    case PlanarCone::Kind::ray:
      return {a, 0.0};
    case PlanarCone::Kind::halfplane:
      return {a, std::numbers::pi};
    case PlanarCone::Kind::sector:
      return {a, ccw_distance(a, Angle::from_direction(g[1]).radians())};
    default:
      throw InvalidInput("cone has no direction arc");
  }
}

PlanarCone cone_from_arc(double start, double width) {
  const Eigen::Vector2d s = Angle(start).direction();
  if (width <= 1e-12) return PlanarCone::ray(s);
  if (width >= std::numbers::pi - 1e-12) return PlanarCone::halfplane(s);
  return PlanarCone::sector(s, Angle(start + width).direction());
}

}  // namespace

PlanarCone PlanarCone::zero() { return PlanarCone(Kind::zero, {}); }
PlanarCone PlanarCone::full() { return PlanarCone(Kind::full, {}); }
PlanarCone PlanarCone::ray(const Eigen::Vector2d& d) { return PlanarCone(Kind::ray, {unit(d)}); }

PlanarCone PlanarCone::line(const Eigen::Vector2d& d) {
  const Eigen::Vector2d u = unit(d);
  return PlanarCone(Kind::line, {u, -u});
}

PlanarCone PlanarCone::sector(const Eigen::Vector2d& g1, const Eigen::Vector2d& g2) {
  Eigen::Vector2d a = unit(g1);
  Eigen::Vector2d b = unit(g2);
  double w = ccw_distance(Angle::from_direction(a).radians(), Angle::from_direction(b).radians());
  if (w > std::numbers::pi) {
    std::swap(a, b);
    w = kTwoPi - w;
  }
  if (w <= 1e-12 || w >= std::numbers::pi - 1e-12)
    throw InvalidInput("sector generators must span an angle strictly between 0 and pi");
  return PlanarCone(Kind::sector, {a, b});
}

PlanarCone PlanarCone::halfplane(const Eigen::Vector2d& start) {
  const Eigen::Vector2d u = unit(start);
  return PlanarCone(Kind::halfplane, {u, -u});
}

PlanarCone PlanarCone::nonpositive_quadrant() { return sector({-1.0, 0.0}, {0.0, -1.0}); }

bool PlanarCone::contains(const Eigen::Vector2d& y, double tol) const {
  switch (kind_) {
    case Kind::zero:
      return y.norm() <= tol;
    case Kind::full:
      return true;
    case Kind::ray:
      return std::abs(cross(generators_[0], y)) <= tol && generators_[0].dot(y) >= -tol;
    case Kind::line:
      return std::abs(cross(generators_[0], y)) <= tol;
    case Kind::halfplane:
      return cross(generators_[0], y) >= -tol;
    case Kind::sector:
      return cross(generators_[0], y) >= -tol && cross(y, generators_[1]) >= -tol;
  }
  return false;
}

Eigen::Vector2d PlanarCone::project(const Eigen::Vector2d& y) const {
  if (contains(y, 0.0)) return y;
  std::vector<Eigen::Vector2d> candidates{Eigen::Vector2d::Zero()};
  for (const auto& g : generators_) candidates.push_back(std::max(0.0, g.dot(y)) * g);
  if (kind_ == Kind::line || kind_ == Kind::halfplane) {
    const auto& g = generators_[0];
    candidates.push_back(g.dot(y) * g);
  }
  Eigen::Vector2d best = candidates.front();
  for (const auto& c : candidates) {
    if ((c - y).squaredNorm() < (best - y).squaredNorm()) best = c;
  }
  return best;
}

bool PlanarCone::approx_equal(const PlanarCone& other, double tol) const {
  if (kind_ != other.kind_ || generators_.size() != other.generators_.size()) return false;
  if (kind_ == Kind::line) {
    return std::abs(cross(generators_[0], other.generators_[0])) <= tol;
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if ((generators_[i] - other.generators_[i]).norm() > tol) return false;
  }
  return true;
}

const char* to_string(PlanarCone::Kind kind) {
  switch (kind) {
    case PlanarCone::Kind::zero:
      return "zero";
    case PlanarCone::Kind::ray:
      return "ray";
    case PlanarCone::Kind::line:
      return "line";
    case PlanarCone::Kind::sector:
      return "sector";
    case PlanarCone::Kind::halfplane:
      return "halfplane";
    case PlanarCone::Kind::full:
      return "full";
  }
  return "?";
}

PlanarCone polar_cone(const PlanarCone& k) {
  switch (k.kind()) {
    case PlanarCone::Kind::zero:
      return PlanarCone::full();
    case PlanarCone::Kind::full:
      return PlanarCone::zero();
    case PlanarCone::Kind::line: {
      const auto& g = k.generators()[0];
      return PlanarCone::line({-g.y(), g.x()});
    }
    default: {
      const DirectionArc arc = direction_arc(k);
      return cone_from_arc(arc.start + arc.width + 0.5 * std::numbers::pi, std::numbers::pi - arc.width);
    }
  }
}

CircleSubset omega_set(const PlanarCone& k) {
  const PlanarCone polar = polar_cone(k);
  switch (polar.kind()) {
    case PlanarCone::Kind::zero:
      return CircleSubset::empty();
    case PlanarCone::Kind::full:
      return CircleSubset::full_circle();
    case PlanarCone::Kind::line: {
      const double a = Angle::from_direction(polar.generators()[0]).radians();
      return combine(CircleSubset::point(a), CircleSubset::point(a + std::numbers::pi), SetOp::unite);
    }
    case PlanarCone::Kind::ray:
      return CircleSubset::point(Angle::from_direction(polar.generators()[0]).radians());
    default: {
      const DirectionArc arc = direction_arc(polar);
      return CircleSubset::arc(arc.start, arc.start + arc.width, true, true);
    }
  }
}

}  // namespace qtopo
