#pragma once

// Homological outputs assembled from the index filtration: Betti numbers of
// X = {q in K} in RP^n, of its complement and of its double cover Y in S^n.

#include "qtopo/filtration.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qtopo {

/// The integer table e^{i,j}, 0 <= i <= 2, 0 <= j <= n, whose antidiagonal
/// sums are the Betti numbers of X.
struct SpectralTable {
  int n = 0;
  int mu = 0;
  int nu = 0;
  int c = 0;
  int d = 0;
  bool w1_nonzero = false;
  std::vector<std::array<int, 3>> rows;  // rows[j] = (e^{0,j}, e^{1,j}, e^{2,j})

  /// e^{i,j}, zero outside the table.
  int e(int i, int j) const;
};

struct BettiReport {
  std::vector<int> b;      // b_0 .. b_n
  int total = 0;
  int chi = 0;
  std::vector<int> ranks;  // rank of H_k(X) -> H_k(RP^n)
  bool empty = false;
};

/// Betti numbers of RP^n minus X, k = 0..n.
std::vector<int> betti_complement(const FiltrationReport& rep, int n);
std::vector<int> betti_complement(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});

SpectralTable build_table(const FiltrationReport& rep, int n);
SpectralTable build_table(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});

BettiReport betti_X(const SpectralTable& table);

/// chi(X) from the Euler characteristics of the filtration alone.
int euler_from_filtration(const FiltrationReport& rep, int n);

/// chi(X), checked against the alternating sum of betti_X. Throws
/// ConsistencyError on mismatch.
int euler_X(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});

struct SphereBetti {
  int k = 0;
  std::optional<int> reduced;   // reduced Betti number of Y, when determined
  std::optional<int> absolute;  // b_k(Y)
  int bound = 0;                // 2 b_k(X)
};

/// Betti numbers of the double cover Y in S^n. Determined for k < n - 2.
std::vector<SphereBetti> betti_Y(const FiltrationReport& rep, const BettiReport& x, int n);
std::vector<SphereBetti> betti_Y(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});

/// Human-readable violations of b(X) <= 2n and, when smooth, b_k <= 2(k+2).
std::vector<std::string> check_bounds(const BettiReport& report, bool smooth);

struct IndexDecomposition {
  int rho_plus = 0;
  int rho_minus = 0;
  int lambda_plus = 0;
  int lambda_minus = 0;
  int theta = 0;
  int predicted = 0;  // rho_plus + lambda_minus + theta
  int measured = 0;   // i+ at omega
};

/// Counts the up- and down-jumps of i+ on [-eta, omega] and [omega, eta]
/// (counterclockwise) and predicts i+ at omega. Requires a simple real
/// degenerate locus and omega strictly inside the arc, off the locus.
IndexDecomposition index_decomposition(const QuadraticPencil& p, Angle eta, Angle omega,
                                       const ToleranceConfig& cfg = {});

/// b0(Omega^{n-k} ∩ C1) + b0(Omega^{n-k} ∩ C2) for k = 0..n, where C1, C2 are
/// the closed half-circles split at +-eta.
std::vector<int> half_circle_bound(const FiltrationReport& rep, int n, Angle eta);
std::vector<int> half_circle_bound(const QuadraticPencil& p, const PlanarCone& k, Angle eta,
                                   const ToleranceConfig& cfg = {});

}  // namespace qtopo
