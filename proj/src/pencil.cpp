#include "qtopo/pencil.hpp"

#include "qtopo/profile.hpp"
#include "qtopo/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qtopo {
namespace {

double cluster_noise(const ToleranceConfig& cfg) { return 1e-13 * std::pow(0.1, cfg.refinement); }

// Eigenvalues of a matrix scaled into unit norm.
Eigen::VectorXd scaled_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  return es.eigenvalues();
}

// Product of the r eigenvalues of largest modulus.
double top_product(Eigen::VectorXd lambda, int r) {
  std::sort(lambda.begin(), lambda.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  double prod = 1.0;
  for (int i = 0; i < r; ++i) prod *= lambda(i);
  return prod;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(tol_eig > 0.0) || !(tol_angle > 0.0) || !(tol_sym > 0.0))
    throw InvalidInput("tolerances must be strictly positive");
  if (epsilon_reg && !(*epsilon_reg > 0.0)) throw InvalidInput("epsilon must be strictly positive");
  if (grid_n < 4) throw InvalidInput("grid resolution must be at least 4");
  if (refinement < 0) throw InvalidInput("refinement level must be nonnegative");
}

Eigen::MatrixXd make_symmetric(const Eigen::MatrixXd& m, const ToleranceConfig& cfg) {
  if (m.rows() != m.cols()) throw InvalidInput("matrix is not square");
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
  const double norm = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > cfg.tol_sym * norm)
    throw InvalidInput("matrix is not symmetric");
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd pencil_at(const QuadraticPencil& p, Angle omega) { return p.at(omega.radians()); }

InertiaTriple pencil_inertia(const QuadraticPencil& p, double theta, const ToleranceConfig& cfg) {
  return inertia_abs(p.at(theta), cfg.tol_eig * p.scale());
}

int DegenerateLocus::real_multiplicity() const {
  int total = 0;
  for (const auto& pt : points) total += pt.multiplicity;
  return total / 2;
}

bool DegenerateLocus::all_simple() const {
  return std::all_of(points.begin(), points.end(), [](const LocusPoint& p) { return p.multiplicity == 1; });
}

std::vector<double> DegenerateLocus::angles() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(pt.angle.radians());
  return out;
}

DegenerateLocus degenerate_locus(const QuadraticPencil& p, const ToleranceConfig& cfg) {
  const double s = p.scale();
  const int dim = p.dim();
  DegenerateLocus locus;

  int rank = 0;
  for (int k = 0; k < 7; ++k) {
    const auto lambda = scaled_eigenvalues(p.at(0.31 + 0.4488 * k) / s);
    rank = std::max(rank, static_cast<int>((lambda.array().abs() > cfg.tol_eig).count()));
  }
  locus.generic_rank = rank;
  locus.degree = rank;
  locus.identically_singular = rank < dim;
  if (rank == 0) return locus;

  const auto g = [&](double theta) { return top_product(scaled_eigenvalues(p.at(theta) / s), rank); };
  const TrigRoots roots = trig_roots(g, rank, true, cluster_noise(cfg));

  int real = 0;
  for (const auto& r : roots.real) {
    locus.points.push_back({Angle(r.angle), r.multiplicity});
    locus.points.push_back({Angle(r.angle + std::numbers::pi), r.multiplicity});
    real += r.multiplicity;
  }
  if ((rank - real) % 2 != 0)
    throw NumericError("degenerate locus: odd number of non-real roots, increase precision");
  locus.theta = (rank - real) / 2;
  std::sort(locus.points.begin(), locus.points.end(),
            [](const LocusPoint& a, const LocusPoint& b) { return a.angle.radians() < b.angle.radians(); });
  return locus;
}

InertiaTriple RegularizedPencil::inertia_at(double theta, const ToleranceConfig& cfg) const {
  return inertia_abs(at(theta), cfg.tol_eig * base.scale());
}

namespace {

struct Trial {
  std::vector<double> roots;
  std::vector<CircleBetti> sublevel;  // Betti numbers of {i_minus <= n - k}, k = 0..n
};

// Roots of det(omega Q - eps shift) and the sublevel Betti numbers, or
// nullopt when the roots are not simple or some jump differs from +-1.
std::optional<Trial> try_epsilon(const QuadraticPencil& p, const Eigen::MatrixXd& shift, double eps,
                                 const ToleranceConfig& cfg) {
  const double s = p.scale();
  const int dim = p.dim();
  const auto f = [&](double theta) -> double {
    const Eigen::MatrixXd m = (p.at(theta) - eps * shift) / s;
    return scaled_eigenvalues(m).prod();
  };
  TrigRoots roots;
  try {
    roots = trig_roots(f, dim, false, cluster_noise(cfg));
  } catch (const NumericError&) {
    return std::nullopt;
  }
  Trial trial;
  for (const auto& r : roots.real) {
    if (r.multiplicity != 1) return std::nullopt;
    trial.roots.push_back(r.angle);
  }
  const double threshold = cfg.tol_eig * s;
  const auto eval = [&](double theta) { return inertia_abs(p.at(theta) - eps * shift, threshold); };

  IndexProfile prof;
  try {
    prof = build_profile(dim, eval, trial.roots, CircleSubset::full_circle(), cfg.tol_angle);
  } catch (const NumericError&) {
    return std::nullopt;
  }
  if (prof.breakpoints().size() != trial.roots.size()) return std::nullopt;
  const auto& arcs = prof.arc_values();
  for (const auto& a : arcs)
    if (a.i_zero != 0) return std::nullopt;
  for (std::size_t i = 0; i < prof.breakpoints().size(); ++i) {
    const auto& before = arcs[(i + arcs.size() - 1) % arcs.size()];
    const auto& after = arcs[i];
    if (std::abs(before.i_minus - after.i_minus) != 1) return std::nullopt;
  }
  for (int k = 0; k <= dim - 1; ++k) {
    const int bound = dim - 1 - k;
    trial.sublevel.push_back(betti_circle(prof.select([bound](const InertiaTriple& t) { return t.i_minus <= bound; })));
  }
  return trial;
}

Eigen::MatrixXd draw_shift(int dim, int draw, std::uint64_t seed) {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  if (draw == 0) return id;
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(draw));
  std::normal_distribution<double> normal;
  Eigen::MatrixXd r = Eigen::MatrixXd::NullaryExpr(dim, dim, [&]() { return normal(rng); });
  r = (0.5 * (r + r.transpose())).eval();
  const double norm = scaled_eigenvalues(r).cwiseAbs().maxCoeff();
  return id + 0.5 * r / norm;
}

}  // namespace

RegularizedPencil regularize(const QuadraticPencil& p, const ToleranceConfig& cfg) {
  cfg.validate();
  const double s = p.scale();
  const double eps0 = cfg.epsilon_reg.value_or(1e-3 * s);
  const double floor = 1000.0 * cfg.tol_eig * s;
  constexpr int kDraws = 6;
  constexpr int kHalvings = 12;

  int attempts = 0;
  for (int draw = 0; draw < kDraws; ++draw) {
    const Eigen::MatrixXd shift = draw_shift(p.dim(), draw, cfg.seed);
    double eps = eps0;
    auto current = try_epsilon(p, shift, eps, cfg);
    ++attempts;
    for (int h = 0; h < kHalvings && eps / 2 >= floor; ++h) {
      auto half = try_epsilon(p, shift, eps / 2, cfg);
      ++attempts;
      if (current && half && current->sublevel == half->sublevel) {
        RegularizedPencil out{p, eps, shift, std::move(current->roots), attempts};
        return out;
      }
      current = std::move(half);
      eps /= 2;
    }
  }
  std::ostringstream msg;
  msg << "regularization failed after " << attempts << " trials (epsilon from " << eps0 << " down to " << floor
      << ")";
  throw NumericError(msg.str());
}

RegularizedPencil with_epsilon(const RegularizedPencil& reg, double epsilon, const ToleranceConfig& cfg) {
  auto trial = try_epsilon(reg.base, reg.shift, epsilon, cfg);
  if (!trial) throw NumericError("shifted pencil has non-simple zeros at the requested epsilon");
  return {reg.base, epsilon, reg.shift, std::move(trial->roots), 1};
}

}  // namespace qtopo
