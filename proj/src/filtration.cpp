#include "qtopo/filtration.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qtopo {
namespace {

constexpr int kMaxRefinement = 2;
constexpr int kMaxResolution = 1 << 18;
constexpr double kOverlapFloor = 0.5;

// Orthonormal basis of the top-mu eigenspace at theta.
Eigen::MatrixXd top_frame(const QuadraticPencil& p, double theta, int mu) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.at(theta));
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  return es.eigenvectors().rightCols(mu);
}

}  // namespace

IndexProfile index_profile(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg,
                           const DegenerateLocus& locus) {
  std::vector<double> cuts;
  for (const auto& pt : locus.points)
    if (omega.contains(pt.angle.radians(), cfg.tol_angle)) cuts.push_back(pt.angle.radians());
  const auto eval = [&](double theta) { return pencil_inertia(p, theta, cfg); };
  return build_profile(p.dim(), eval, std::move(cuts), omega, cfg.tol_angle);
}

IndexProfile index_profile(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg) {
  return index_profile(p, omega, cfg, degenerate_locus(p, cfg));
}

CircleSubset superlevel(const IndexProfile& profile, int j) {
  return profile.select([j](const InertiaTriple& t) { return t.i_plus >= j; });
}

CircleSubset sublevel_eps(const RegularizedPencil& reg, const CircleSubset& omega, int k,
                          const ToleranceConfig& cfg) {
  const int n = reg.base.n();
  const auto at = [&](const RegularizedPencil& r) {
    const auto eval = [&](double theta) { return r.inertia_at(theta, cfg); };
    std::vector<double> cuts;
    for (double z : r.roots)
      if (omega.contains(z, cfg.tol_angle)) cuts.push_back(z);
    const IndexProfile prof = build_profile(reg.base.dim(), eval, std::move(cuts), omega, cfg.tol_angle);
    return prof.select([bound = n - k](const InertiaTriple& t) { return t.i_minus <= bound; });
  };
  CircleSubset set = at(reg);
  const CircleSubset half = at(with_epsilon(reg, 0.5 * reg.epsilon, cfg));
  if (!(betti_circle(set) == betti_circle(half))) {
    std::ostringstream msg;
    msg << "sublevel set for k = " << k << " changes under epsilon halving at epsilon = " << reg.epsilon;
    throw NumericError(msg.str());
  }
  return set;
}

CircleSubset sublevel_eps(const QuadraticPencil& p, const CircleSubset& omega, int k,
                          const ToleranceConfig& cfg) {
  return sublevel_eps(regularize(p, cfg), omega, k, cfg);
}

MonodromyResult stiefel_whitney(const QuadraticPencil& p, const IndexProfile& profile,
                                const ToleranceConfig& cfg, int start_resolution) {
  cfg.validate();
  MonodromyResult out;
  const int mu = profile.max_plus().value_or(0);
  if (mu == 0) {
    out.reason = "rank-zero bundle";
    return out;
  }
  if (!superlevel(profile, mu).is_full()) {
    out.reason = "Omega^mu is not the whole circle";
    return out;
  }
  int resolution = start_resolution > 0 ? start_resolution : std::max(64, 8 * p.dim());
  while (resolution <= kMaxResolution) {
    const Eigen::MatrixXd first = top_frame(p, 0.0, mu);
    Eigen::MatrixXd prev = first;
    int sign = 1;
    bool ok = true;
    double bad_angle = 0.0;
    for (int j = 1; j <= resolution && ok; ++j) {
      const double theta = kTwoPi * j / resolution;
      const Eigen::MatrixXd next = j == resolution ? first : top_frame(p, theta, mu);
      const Eigen::MatrixXd overlap = prev.transpose() * next;
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(overlap);
      if (svd.singularValues().minCoeff() <= kOverlapFloor) {
        ok = false;
        bad_angle = theta;
        break;
      }
      if (overlap.determinant() < 0.0) sign = -sign;
      prev = next;
    }
    if (ok) {
      out.transported = true;
      out.resolution = resolution;
      out.w1_nonzero = sign < 0;
      out.reason = "frame transport";
      return out;
    }
    if (resolution * 2 > kMaxResolution) {
      std::ostringstream msg;
      msg << "frame transport did not resolve near angle " << bad_angle << " at resolution " << resolution;
      throw NumericError(msg.str());
    }
    resolution *= 2;
  }
  throw NumericError("frame transport resolution cap exceeded");
}

const CircleSubset& FiltrationReport::level(int j) const {
  static const CircleSubset kEmpty;
  if (j <= 0) return omega_j.front();
  if (j >= static_cast<int>(omega_j.size())) return kEmpty;
  return omega_j[j];
}

FiltrationReport analyze(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg) {
  cfg.validate();
  ToleranceConfig local = cfg;
  for (;;) {
    try {
      FiltrationReport rep;
      rep.locus = degenerate_locus(p, local);
      rep.profile = index_profile(p, omega, local, rep.locus);
      for (int j = 0; j <= p.dim(); ++j) rep.omega_j.push_back(superlevel(rep.profile, j));
      rep.mu = rep.profile.max_plus().value_or(0);
      rep.nu = rep.profile.min_plus().value_or(0);
      if (omega.is_full() && rep.mu == rep.nu && rep.mu > p.dim() / 2)
        throw ConsistencyError("constant index on the circle exceeds half the dimension");
      rep.w1 = stiefel_whitney(p, rep.profile, local);
      return rep;
    } catch (const ConsistencyError&) {
      throw;
    } catch (const NumericError&) {
      if (local.refinement >= cfg.refinement + kMaxRefinement) throw;
      ++local.refinement;
    }
  }
}

FiltrationReport analyze(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  return analyze(p, omega_set(k), cfg);
}

}  // namespace qtopo
