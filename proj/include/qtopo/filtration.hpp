#pragma once

// The index filtration Omega^j = {omega in Omega : i+(omega Q) >= j}, its
// epsilon-shifted sublevel counterparts and the orientation character of
// the top positive eigenbundle.

#include "qtopo/circle.hpp"
#include "qtopo/pencil.hpp"
#include "qtopo/profile.hpp"

#include <string>
#include <vector>

namespace qtopo {

/// Inertia profile of omega Q over `omega`, cut at the degenerate locus.
IndexProfile index_profile(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg,
                           const DegenerateLocus& locus);
IndexProfile index_profile(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg = {});

/// {omega in domain : i+ >= j}.
CircleSubset superlevel(const IndexProfile& profile, int j);

/// {omega in domain : i-(omega Q - eps P) <= n - k}. Throws NumericError if
/// the Betti numbers change when epsilon is halved.
CircleSubset sublevel_eps(const RegularizedPencil& reg, const CircleSubset& omega, int k,
                          const ToleranceConfig& cfg = {});
CircleSubset sublevel_eps(const QuadraticPencil& p, const CircleSubset& omega, int k,
                          const ToleranceConfig& cfg = {});

struct MonodromyResult {
  bool w1_nonzero = false;
  bool transported = false;  // false when the bundle does not live on the whole circle
  int resolution = 0;
  std::string reason;
};

/// w1 of the bundle of top-mu positive eigenspaces over Omega^mu, by
/// transporting an orthonormal frame around the circle.
MonodromyResult stiefel_whitney(const QuadraticPencil& p, const IndexProfile& profile,
                                const ToleranceConfig& cfg = {}, int start_resolution = 0);

struct FiltrationReport {
  DegenerateLocus locus;
  IndexProfile profile;
  std::vector<CircleSubset> omega_j;  // omega_j[j] = Omega^j, j = 0..n+1
  int mu = 0;
  int nu = 0;
  MonodromyResult w1;

  const CircleSubset& level(int j) const;
};

/// Locus, profile, filtration and w1 for the cone K. Retries with tighter
/// root clustering when arc samples disagree.
FiltrationReport analyze(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg = {});
FiltrationReport analyze(const QuadraticPencil& p, const CircleSubset& omega, const ToleranceConfig& cfg = {});

}  // namespace qtopo
