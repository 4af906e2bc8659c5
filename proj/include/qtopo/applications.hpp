#pragma once

// Convexity-type consequences of the filtration: positive-definite
// combinations, emptiness, the image of the sphere under q, level sets.

#include "qtopo/betti.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace qtopo {

struct Certificate {
  enum class Kind { positive_combination, emptiness, membership, refutation };

  Kind kind = Kind::refutation;
  std::optional<Angle> omega;
  std::optional<Eigen::VectorXd> witness;
  double margin = 0.0;  // lambda_min(omega Q) for positive combinations
  std::string note;
};

const char* to_string(Certificate::Kind kind);

struct CalabiResult {
  bool certified = false;  // some omega Q is positive definite
  Certificate certificate;
  int mu = 0;
  bool equivalence_applies = true;  // n + 1 >= 3
  std::string warning;
};

/// Searches Omega^{n+1} over the whole circle for a positive-definite
/// combination; the midpoint of its longest component is returned.
CalabiResult calabi(const QuadraticPencil& p, const ToleranceConfig& cfg = {});

struct EmptinessResult {
  bool empty = false;
  int mu = 0;
  std::optional<Certificate> certificate;
};

EmptinessResult is_empty_X(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});

struct MembershipResult {
  bool member = false;
  Certificate certificate;
};

/// Whether c lies in q(S^n). Needs n + 1 >= 3.
MembershipResult image_membership(const QuadraticPencil& p, const Eigen::Vector2d& c,
                                  const ToleranceConfig& cfg = {});

/// h(omega) = lambda_max(omega Q), the support function of q(S^n).
double support_function(const QuadraticPencil& p, Angle omega);

struct LevelProblem {
  enum class Mode { equalities, inequalities };

  QuadraticPencil pencil;
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  Mode mode = Mode::equalities;
  PlanarCone cone = PlanarCone::nonpositive_quadrant();  // inequalities only
};

struct LevelResult {
  bool nonempty = false;
  std::vector<int> b_tilde;     // reduced Betti numbers of A, k = 0..n
  std::optional<int> min_minus; // min of i- over C; nullopt means C is empty
  CircleSubset domain;          // C
};

/// A = q^{-1}(c) in R^{n+1}.
LevelResult level_set_betti(const LevelProblem& l, const ToleranceConfig& cfg = {});

/// A = {x : q(x) - c in K}.
LevelResult inequality_level_set(const LevelProblem& l, const ToleranceConfig& cfg = {});

/// Dispatches on l.mode.
LevelResult solve_level(const LevelProblem& l, const ToleranceConfig& cfg = {});

/// Diagonal pencil sum_k x_k^2 e^{2 pi i k / (n+1)}.
QuadraticPencil extremal_family(int n);

}  // namespace qtopo
