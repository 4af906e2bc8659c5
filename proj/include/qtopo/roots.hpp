#pragma once

// Roots of real trigonometric polynomials on the unit circle, recovered
// from samples through a DFT and a balanced companion matrix.

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace qtopo {

using Complex = std::complex<double>;

struct RootCluster {
  Complex center;
  int multiplicity = 1;
  double spread = 0.0;
};

/// All roots of sum_k coeffs[k] w^k (ascending). Leading zeros must be
/// stripped by the caller.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Taylor coefficient p^(m)(c) / m!.
Complex taylor_coefficient(std::span<const Complex> coeffs, Complex c, int m);

/// Groups computed roots into clusters whose spread is explained by a
/// relative coefficient perturbation of size u.
std::vector<RootCluster> cluster_roots(std::span<const Complex> coeffs,
                                       std::span<const Complex> roots, double u);

struct CircleRoot {
  double angle = 0.0;
  int multiplicity = 1;
};

struct TrigRoots {
  std::vector<CircleRoot> real;  // sorted by angle
  int nonreal = 0;               // roots off the unit circle, including 0 and infinity
  int degree = 0;                // degree of the polynomial in the circle variable
};

/// Zeros of a real trigonometric polynomial f of the given degree.
///
/// homogeneous: f(theta + pi) = (-1)^degree f(theta) and f only carries
/// frequencies of the parity of `degree`; roots are returned as angles in
/// [0, pi) and count projective roots. Otherwise all frequencies up to
/// `degree` are present and angles lie in [0, 2pi).
TrigRoots trig_roots(const std::function<double(double)>& f, int degree, bool homogeneous,
                     double u);

}  // namespace qtopo
