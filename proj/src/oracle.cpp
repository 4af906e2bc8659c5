#include "qtopo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace qtopo {
namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Residual of q(x) - c against the cone and its Jacobian in x.
struct ConeResidual {
  const QuadraticPencil& p;
  const PlanarCone& cone;
  Eigen::Vector2d c;

  Eigen::Vector2d value(const Eigen::VectorXd& x) const {
    const Eigen::Vector2d y(x.dot(p.q0() * x) - c(0), x.dot(p.q1() * x) - c(1));
    return y - cone.project(y);
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    const Eigen::Vector2d y(x.dot(p.q0() * x) - c(0), x.dot(p.q1() * x) - c(1));
    Eigen::MatrixXd jq(2, x.size());
    jq.row(0) = 2.0 * (p.q0() * x).transpose();
    jq.row(1) = 2.0 * (p.q1() * x).transpose();
    // Derivative of y -> y - proj_K(y) by forward differences; the
    // projection is piecewise linear so this is exact off the kinks.
    const double h = 1e-7 * (1.0 + y.norm());
    const Eigen::Vector2d base = cone.project(y);
    Eigen::Matrix2d dp;
    for (int i = 0; i < 2; ++i) dp.col(i) = (cone.project(y + h * Eigen::Vector2d::Unit(i)) - base) / h;
    return (Eigen::Matrix2d::Identity() - dp) * jq;
  }
};

// Levenberg-Marquardt on the residual; on_sphere keeps ||x|| = 1.
double minimize(const ConeResidual& f, Eigen::VectorXd& x, bool on_sphere, int iterations) {
  double lambda = 1e-3;
  double r = f.value(x).norm();
  for (int it = 0; it < iterations && r > 0.0; ++it) {
    Eigen::MatrixXd j = f.jacobian(x);
    if (on_sphere) j = j * (Eigen::MatrixXd::Identity(x.size(), x.size()) - x * x.transpose());
    const Eigen::Vector2d res = f.value(x);
    const Eigen::Matrix2d normal = j * j.transpose() + lambda * Eigen::Matrix2d::Identity();
    const Eigen::VectorXd step = -j.transpose() * normal.ldlt().solve(res);
    Eigen::VectorXd trial = x + step;
    if (on_sphere) trial.normalize();
    const double rt = f.value(trial).norm();
    if (rt < r) {
      x = trial;
      r = rt;
      lambda = std::max(lambda * 0.3, 1e-12);
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return r;
}

Eigen::VectorXd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(dim);
  for (int i = 0; i < dim; ++i) x(i) = normal(rng);
  return x.normalized();
}

double lambda_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

GridProfile grid_index_profile(const QuadraticPencil& p, const ToleranceConfig& cfg) {
  GridProfile g;
  g.resolution = std::max(cfg.grid_n, 4 * p.dim());
  for (int i = 0; i < g.resolution; ++i) {
    const double theta = kTwoPi * i / g.resolution;
    g.angles.push_back(theta);
    g.samples.push_back(pencil_inertia(p, theta, cfg));
  }
  return g;
}

GridComparison compare_with_profile(const GridProfile& grid, const IndexProfile& profile, double exclusion) {
  GridComparison out;
  for (std::size_t i = 0; i < grid.angles.size(); ++i) {
    const double theta = grid.angles[i];
    const bool near = std::any_of(profile.breakpoints().begin(), profile.breakpoints().end(),
                                  [&](double b) { return circle_distance(b, theta) <= exclusion; });
    if (near) {
      ++out.skipped;
      continue;
    }
    const auto value = profile.value_at(theta, 0.0);
    if (!value) continue;
    ++out.compared;
    if (value->i_plus != grid.samples[i].i_plus || value->i_minus != grid.samples[i].i_minus) {
      ++out.disagreements;
      out.offending.push_back(theta);
    }
  }
  return out;
}

ComponentSample sample_components(const QuadraticPencil& p, const PlanarCone& k, SampleSpace space,
                                  const ToleranceConfig& cfg, int target, double delta) {
  if (p.n() > 3) throw InvalidInput("sampling oracle is limited to n <= 3");
  std::mt19937_64 rng(cfg.seed);
  const double s = p.scale();
  const ConeResidual f{p, k, Eigen::Vector2d::Zero()};

  ComponentSample out;
  std::vector<Eigen::VectorXd> pts;
  const int max_attempts = 6 * target;
  while (out.attempts < max_attempts && static_cast<int>(pts.size()) < target) {
    ++out.attempts;
    Eigen::VectorXd x = random_unit(p.dim(), rng);
    if (minimize(f, x, true, 40) / s < delta) pts.push_back(x);
  }
  out.accepted = static_cast<int>(pts.size());
  if (pts.empty()) return out;
  if (out.accepted < target / 4) {
    std::ostringstream msg;
    msg << "sampling oracle accepted only " << out.accepted << " of " << out.attempts << " points";
    throw NumericError(msg.str());
  }

  const int m = out.accepted;
  const auto dist = [&](int a, int b) {
    const double direct = (pts[a] - pts[b]).norm();
    return space == SampleSpace::projective ? std::min(direct, (pts[a] + pts[b]).norm()) : direct;
  };
  double nn_sum = 0.0;
  for (int a = 0; a < m; ++a) {
    double best = std::numeric_limits<double>::infinity();
    for (int b = 0; b < m; ++b)
      if (a != b) best = std::min(best, dist(a, b));
    nn_sum += std::isfinite(best) ? best : 0.0;
  }
  // Near a singular point the residual vanishes quadratically, so projected
  // samples thin out over a width of order sqrt(delta).
  out.radius = std::max(3.0 * nn_sum / m, 2.0 * std::sqrt(delta));
  DisjointSets sets(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (dist(a, b) <= out.radius) sets.unite(a, b);
  for (int a = 0; a < m; ++a)
    if (sets.find(a) == a) ++out.components;
  return out;
}

FeasibilityResult feasibility_sample(const LevelProblem& l, const ToleranceConfig& cfg, int starts, double tol) {
  const QuadraticPencil& p = l.pencil;
  const PlanarCone cone = l.mode == LevelProblem::Mode::equalities ? PlanarCone::zero() : l.cone;
  const ConeResidual f{p, cone, l.c};
  const double s = p.scale();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> log_radius(-2.0, 2.0);

  FeasibilityResult out;
  out.residual = std::numeric_limits<double>::infinity();
  const double base = std::sqrt(std::max(l.c.norm(), 1e-3 * s) / s);
  for (int i = 0; i < starts; ++i) {
    Eigen::VectorXd x = base * std::pow(10.0, 0.5 * log_radius(rng)) * random_unit(p.dim(), rng);
    const double r = minimize(f, x, false, 200) / s;
    if (r < out.residual) {
      out.residual = r;
      out.witness = x;
    }
    if (r < tol) break;
  }
  out.found = out.residual < tol;
  if (!out.found) out.witness.reset();
  return out;
}

double certificate_margin(const LevelProblem& l, const ToleranceConfig& cfg) {
  const double norm = l.c.norm();
  if (norm == 0.0) return -1.0;
  const Eigen::Vector2d chat = l.c / norm;
  const CircleSubset omega =
      l.mode == LevelProblem::Mode::equalities ? CircleSubset::full_circle() : omega_set(l.cone);
  const double s = l.pencil.scale();
  double best = -std::numeric_limits<double>::infinity();
  const int res = std::max(cfg.grid_n, 64);
  for (int i = 0; i < res; ++i) {
    const double theta = kTwoPi * i / res;
    const Eigen::Vector2d w(std::cos(theta), std::sin(theta));
    if (w.dot(chat) > 0.0 || !omega.contains(theta, 1e-12)) continue;
    best = std::max(best, std::min(lambda_min(l.pencil.at(theta)) / s, -w.dot(chat)));
  }
  // Endpoints of a closed arc domain are not always on the grid.
  for (double b : omega.boundary_angles()) {
    const Eigen::Vector2d w(std::cos(b), std::sin(b));
    if (w.dot(chat) > 0.0) continue;
    best = std::max(best, std::min(lambda_min(l.pencil.at(b)) / s, -w.dot(chat)));
  }
  return std::isfinite(best) ? best : -1.0;
}

MonodromyCheck monodromy_refine(const QuadraticPencil& p, const IndexProfile& profile, const ToleranceConfig& cfg) {
  MonodromyCheck out;
  const MonodromyResult base = stiefel_whitney(p, profile, cfg);
  out.w1_nonzero = base.w1_nonzero;
  if (!base.transported) return out;
  out.resolutions.push_back(base.resolution);
  for (int factor : {2, 4}) {
    const MonodromyResult r = stiefel_whitney(p, profile, cfg, factor * base.resolution);
    out.resolutions.push_back(r.resolution);
    if (r.w1_nonzero != base.w1_nonzero) out.stable = false;
  }
  return out;
}

}  // namespace qtopo
