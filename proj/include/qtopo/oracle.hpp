#pragma once

// Brute-force cross-checks that share no code path with the filtration:
// dense inertia grids, point clouds on the variety, direct feasibility
// search and frame transport at higher resolution.

#include "qtopo/applications.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace qtopo {

struct GridProfile {
  int resolution = 0;
  std::vector<double> angles;
  std::vector<InertiaTriple> samples;
};

/// Inertia at max(grid_n, 4(n+1)) equally spaced angles.
GridProfile grid_index_profile(const QuadraticPencil& p, const ToleranceConfig& cfg = {});

struct GridComparison {
  int compared = 0;
  int skipped = 0;  // samples within the exclusion distance of a breakpoint
  int disagreements = 0;
  std::vector<double> offending;
};

/// Compares in-domain grid samples farther than `exclusion` from every
/// breakpoint with the profile's value there.
GridComparison compare_with_profile(const GridProfile& grid, const IndexProfile& profile, double exclusion);

enum class SampleSpace { sphere, projective };

struct ComponentSample {
  int components = 0;
  int accepted = 0;
  int attempts = 0;
  double radius = 0.0;
};

/// Connected components of {x in S^n : q(x) in K} (or its image in RP^n)
/// from a projected point cloud. Only b0 is estimated. Needs n <= 3.
ComponentSample sample_components(const QuadraticPencil& p, const PlanarCone& k, SampleSpace space,
                                  const ToleranceConfig& cfg = {}, int target = 1500, double delta = 5e-3);

struct FeasibilityResult {
  bool found = false;
  std::optional<Eigen::VectorXd> witness;
  double residual = 0.0;  // best ||q(x) - c - proj_K(q(x) - c)|| / scale
};

/// Multistart Levenberg-Marquardt search for x with q(x) - c in K (K = {0}
/// in equality mode).
FeasibilityResult feasibility_sample(const LevelProblem& l, const ToleranceConfig& cfg = {},
                                     int starts = 48, double tol = 1e-9);

/// max over omega in the closed domain of min(lambda_min(omega Q)/scale,
/// -<omega, c/|c|>), sampled on the grid. Positive values certify an empty
/// level set with that margin; negative values bound how far the instance
/// is from admitting such a certificate.
double certificate_margin(const LevelProblem& l, const ToleranceConfig& cfg = {});

struct MonodromyCheck {
  bool stable = true;
  bool w1_nonzero = false;
  std::vector<int> resolutions;
};

/// Frame transport at the base resolution and at 2x and 4x.
MonodromyCheck monodromy_refine(const QuadraticPencil& p, const IndexProfile& profile,
                                const ToleranceConfig& cfg = {});

}  // namespace qtopo
