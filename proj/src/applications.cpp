#include "qtopo/applications.hpp"

#include <cmath>
#include <numbers>

namespace qtopo {
namespace {

double lambda_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  return es.eigenvalues().minCoeff();
}

// Midpoint of the longest component of a nonempty subset.
double longest_midpoint(const CircleSubset& s) {
  if (s.is_full()) return 0.0;
  const CircleItem* best = nullptr;
  for (const auto& item : s.items())
    if (!best || item.span > best->span) best = &item;
  return normalize_angle(best->start + 0.5 * best->span);
}

Certificate positive_combination(const QuadraticPencil& p, const CircleSubset& definite) {
  Certificate cert;
  cert.kind = Certificate::Kind::positive_combination;
  double theta = longest_midpoint(definite);
  double margin = lambda_min(p.at(theta));
  if (definite.is_full()) {
    for (int k = 1; k < 64; ++k) {
      const double t = kTwoPi * k / 64;
      const double m = lambda_min(p.at(t));
      if (m > margin) {
        margin = m;
        theta = t;
      }
    }
  }
  cert.omega = Angle(theta);
  cert.margin = margin;
  return cert;
}

LevelResult solve_on_domain(const QuadraticPencil& p, const Eigen::Vector2d& c, const CircleSubset& omega,
                            const ToleranceConfig& cfg) {
  const int n = p.n();
  LevelResult r;
  r.b_tilde.assign(n + 1, 0);
  if (c.norm() == 0.0) {
    r.nonempty = true;
    return r;
  }
  const double dir = Angle::from_direction(-c).radians();
  const CircleSubset half = CircleSubset::arc(dir - 0.5 * std::numbers::pi, dir + 0.5 * std::numbers::pi, false, false);
  r.domain = combine(omega, half, SetOp::intersect, cfg.tol_angle);

  ToleranceConfig local = cfg;
  IndexProfile prof;
  for (;;) {
    try {
      prof = index_profile(p, r.domain, local);
      break;
    } catch (const ConsistencyError&) {
      throw;
    } catch (const NumericError&) {
      if (local.refinement >= cfg.refinement + 2) throw;
      ++local.refinement;
    }
  }
  r.min_minus = prof.min_minus();
  r.nonempty = !r.min_minus || *r.min_minus != 0;
  if (!r.nonempty) return r;

  const auto sub = [&](int k) {
    return prof.select([k](const InertiaTriple& t) { return t.i_minus <= k; });
  };
  for (int k = 0; k <= n; ++k) {
    r.b_tilde[k] = betti_pair(sub(k + 1), sub(k), cfg.tol_angle).b0 + betti_pair(sub(k + 2), sub(k + 1), cfg.tol_angle).b1;
  }
  return r;
}

}  // namespace

const char* to_string(Certificate::Kind kind) {
  switch (kind) {
    case Certificate::Kind::positive_combination:
      return "positive_combination";
    case Certificate::Kind::emptiness:
      return "emptiness";
    case Certificate::Kind::membership:
      return "membership";
    case Certificate::Kind::refutation:
      return "refutation";
  }
  return "unknown";
}

CalabiResult calabi(const QuadraticPencil& p, const ToleranceConfig& cfg) {
  CalabiResult r;
  const FiltrationReport rep = analyze(p, CircleSubset::full_circle(), cfg);
  r.mu = rep.mu;
  r.equivalence_applies = p.dim() >= 3;
  if (!r.equivalence_applies)
    r.warning = "n + 1 < 3: a definite combination and an empty intersection are not equivalent";
  const CircleSubset& definite = rep.level(p.dim());
  if (!definite.is_empty()) {
    r.certificate = positive_combination(p, definite);
    r.certified = r.certificate.margin > 0.0;
  }
  if (!r.certified) {
    r.certificate = {};
    r.certificate.kind = Certificate::Kind::refutation;
    r.certificate.note = "no positive definite combination; max index " + std::to_string(rep.mu);
  }
  return r;
}

EmptinessResult is_empty_X(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  EmptinessResult r;
  const FiltrationReport rep = analyze(p, k, cfg);
  r.mu = rep.mu;
  const BettiReport x = betti_X(build_table(rep, p.n()));
  r.empty = rep.mu == p.dim() || x.empty;
  if (rep.mu == p.dim()) {
    Certificate cert = positive_combination(p, rep.level(p.dim()));
    if (k.kind() != PlanarCone::Kind::zero) cert.kind = Certificate::Kind::emptiness;
    r.certificate = cert;
  } else if (r.empty) {
    Certificate cert;
    cert.kind = Certificate::Kind::emptiness;
    cert.note = "nontrivial orientation character of the top positive eigenbundle";
    r.certificate = cert;
  }
  return r;
}

MembershipResult image_membership(const QuadraticPencil& p, const Eigen::Vector2d& c, const ToleranceConfig& cfg) {
  if (p.dim() < 3) throw InvalidInput("image membership needs n + 1 >= 3");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(p.dim(), p.dim());
  const QuadraticPencil shifted(p.q0() - c(0) * id, p.q1() - c(1) * id);
  const FiltrationReport rep = analyze(shifted, CircleSubset::full_circle(), cfg);
  MembershipResult r;
  const CircleSubset& definite = rep.level(p.dim());
  r.member = definite.is_empty();
  if (r.member) {
    r.certificate.kind = Certificate::Kind::membership;
    r.certificate.note = "no separating direction";
  } else {
    r.certificate = positive_combination(shifted, definite);
    r.certificate.kind = Certificate::Kind::refutation;
    r.certificate.note = "separating direction";
  }
  return r;
}

double support_function(const QuadraticPencil& p, Angle omega) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.at(omega.radians()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  return es.eigenvalues().maxCoeff();
}

LevelResult level_set_betti(const LevelProblem& l, const ToleranceConfig& cfg) {
  if (l.mode != LevelProblem::Mode::equalities) throw InvalidInput("level_set_betti expects equality mode");
  return solve_on_domain(l.pencil, l.c, CircleSubset::full_circle(), cfg);
}

LevelResult inequality_level_set(const LevelProblem& l, const ToleranceConfig& cfg) {
  if (l.mode != LevelProblem::Mode::inequalities) throw InvalidInput("inequality_level_set expects inequality mode");
  return solve_on_domain(l.pencil, l.c, omega_set(l.cone), cfg);
}

LevelResult solve_level(const LevelProblem& l, const ToleranceConfig& cfg) {
  return l.mode == LevelProblem::Mode::equalities ? level_set_betti(l, cfg) : inequality_level_set(l, cfg);
}

QuadraticPencil extremal_family(int n) {
  if (n < 1) throw InvalidInput("extremal family needs n >= 1");
  Eigen::VectorXd c(n + 1), s(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double a = kTwoPi * k / (n + 1);
    c(k) = std::cos(a);
    s(k) = std::sin(a);
  }
  // Exact zeros keep the congruence with the coordinate-aligned fixtures.
  for (int k = 0; k <= n; ++k) {
    if (std::abs(c(k)) < 1e-15) c(k) = 0.0;
    if (std::abs(s(k)) < 1e-15) s(k) = 0.0;
  }
  return {Eigen::MatrixXd(c.asDiagonal()), Eigen::MatrixXd(s.asDiagonal())};
}

}  // namespace qtopo
