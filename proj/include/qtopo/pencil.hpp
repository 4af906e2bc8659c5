#pragma once

// Symmetric pencils omega -> cos(theta) Q0 + sin(theta) Q1, their inertia, the
// degenerate locus det(omega Q) = 0 and the positive-definite shift used to
// make that locus simple.

#include "qtopo/circle.hpp"
#include "qtopo/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtopo {

template <typename Scalar>
using SymmetricMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

struct ToleranceConfig {
  double tol_eig = 1e-9;     // relative to the pencil scale
  double tol_angle = 1e-9;   // radians
  double tol_sym = 1e-12;    // relative asymmetry accepted on input
  std::optional<double> epsilon_reg;  // absolute; automatic when unset
  int grid_n = 720;
  std::uint64_t seed = 42;
  // Tightens root clustering; analyze() bumps it when arc samples disagree.
  int refinement = 0;

  void validate() const;
};

struct InertiaTriple {
  int i_plus = 0;
  int i_minus = 0;
  int i_zero = 0;

  int dim() const { return i_plus + i_minus + i_zero; }
  friend bool operator==(const InertiaTriple&, const InertiaTriple&) = default;
};

/// Eigenvalue sign counts with an absolute zero threshold.
template <typename Derived>
InertiaTriple inertia_abs(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar threshold) {
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  InertiaTriple t;
  if (m.rows() == 0) return t;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.derived(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lambda = es.eigenvalues()(i);
    if (lambda > threshold)
      ++t.i_plus;
    else if (lambda < -threshold)
      ++t.i_minus;
    else
      ++t.i_zero;
  }
  return t;
}

/// Inertia with threshold tol_eig * ||M||_2.
template <typename Derived>
InertiaTriple inertia(const Eigen::MatrixBase<Derived>& m, const ToleranceConfig& cfg = {}) {
  if (m.rows() == 0) return {};
  using Matrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.derived(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigen-solver failed to converge");
  const auto norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return inertia_abs(m, cfg.tol_eig * norm);
}

/// Sylvester's law of inertia: inertia(M) == inertia(T^T M T).
template <typename DerivedM, typename DerivedT>
bool sylvester_check(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedT>& t,
                     const ToleranceConfig& cfg = {}) {
  using Matrix = Eigen::Matrix<typename DerivedM::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix congruent = t.transpose() * m * t;
  congruent = (0.5 * (congruent + congruent.transpose())).eval();
  return inertia(m, cfg) == inertia(congruent, cfg);
}

/// A pair of symmetric matrices of equal size n+1.
template <typename Scalar>
class BasicPencil {
 public:
  using Matrix = SymmetricMatrix<Scalar>;

  BasicPencil() = default;
  BasicPencil(Matrix q0, Matrix q1) : q0_(std::move(q0)), q1_(std::move(q1)) {
    if (q0_.rows() != q0_.cols() || q1_.rows() != q1_.cols() || q0_.rows() != q1_.rows())
      throw InvalidInput("pencil matrices must be square and of equal size");
    if (q0_.rows() == 0) throw InvalidInput("pencil matrices must be nonempty");
    const auto spectral = [](const Matrix& m) -> Scalar {
      Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    };
    scale_ = std::max(spectral(q0_), spectral(q1_));
    if (!(scale_ > Scalar(0))) scale_ = Scalar(1);
  }

  const Matrix& q0() const { return q0_; }
  const Matrix& q1() const { return q1_; }
  /// The projective dimension n; forms act on R^{n+1}.
  int n() const { return static_cast<int>(q0_.rows()) - 1; }
  int dim() const { return static_cast<int>(q0_.rows()); }

  auto at(Scalar theta) const { return std::cos(theta) * q0_ + std::sin(theta) * q1_; }
  auto at(const Eigen::Matrix<Scalar, 2, 1>& omega) const { return omega(0) * q0_ + omega(1) * q1_; }

  /// max(||Q0||_2, ||Q1||_2), or 1 for the zero pencil.
  Scalar scale() const { return scale_; }

 private:
  Matrix q0_;
  Matrix q1_;
  Scalar scale_ = Scalar(1);
};

using QuadraticPencil = BasicPencil<double>;

/// Validates symmetry to tol_sym (relative) and returns the symmetric part.
Eigen::MatrixXd make_symmetric(const Eigen::MatrixXd& m, const ToleranceConfig& cfg = {});

Eigen::MatrixXd pencil_at(const QuadraticPencil& p, Angle omega);

/// Inertia of omega Q with the pencil-relative threshold tol_eig * scale.
InertiaTriple pencil_inertia(const QuadraticPencil& p, double theta, const ToleranceConfig& cfg);

struct LocusPoint {
  Angle angle;
  int multiplicity = 1;
};

struct DegenerateLocus {
  std::vector<LocusPoint> points;  // sorted by angle, antipodally symmetric
  int theta = 0;                   // half the number of non-real projective roots
  int degree = 0;                  // degree of the binary form that was solved
  int generic_rank = 0;
  bool identically_singular = false;

  /// Real projective roots counted with multiplicity.
  int real_multiplicity() const;
  bool all_simple() const;
  std::vector<double> angles() const;
};

/// Real zeros on S^1 of det(omega Q). When det vanishes identically the
/// locus of rank drop below the generic rank is returned instead and the
/// flag is set.
DegenerateLocus degenerate_locus(const QuadraticPencil& p, const ToleranceConfig& cfg = {});

/// The shifted family omega Q - epsilon * P with simple zeros.
struct RegularizedPencil {
  QuadraticPencil base;
  double epsilon = 0.0;
  Eigen::MatrixXd shift;     // positive definite
  std::vector<double> roots; // sorted angles where det(omega Q - epsilon shift) = 0
  int attempts = 0;

  Eigen::MatrixXd at(double theta) const { return base.at(theta) - epsilon * shift; }
  InertiaTriple inertia_at(double theta, const ToleranceConfig& cfg) const;
};

RegularizedPencil regularize(const QuadraticPencil& p, const ToleranceConfig& cfg = {});

/// Same shift at a different epsilon. Throws NumericError when the roots
/// are not simple there.
RegularizedPencil with_epsilon(const RegularizedPencil& reg, double epsilon, const ToleranceConfig& cfg = {});

}  // namespace qtopo
