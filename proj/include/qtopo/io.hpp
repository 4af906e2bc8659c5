#pragma once

// JSON problem/result formats and CSV profile export.

#include "qtopo/applications.hpp"
#include "qtopo/oracle.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace qtopo {

using json = nlohmann::json;

struct ProblemFile {
  QuadraticPencil pencil;
  PlanarCone cone = PlanarCone::zero();
  std::optional<Eigen::Vector2d> c;
  LevelProblem::Mode mode = LevelProblem::Mode::equalities;
  bool smooth = false;
};

/// Throws InvalidInput on malformed or asymmetric data.
ProblemFile parse_problem(const json& j, const ToleranceConfig& cfg = {});
json to_json(const ProblemFile& p);

json pencil_to_json(const QuadraticPencil& p);
QuadraticPencil pencil_from_json(const json& j, const ToleranceConfig& cfg = {});

json to_json(const PlanarCone& k);
PlanarCone cone_from_json(const json& j);

json to_json(const CircleSubset& s);
json to_json(const Certificate& c);
json to_json(const SpectralTable& t);
json to_json(const LevelResult& r);

/// Result document: b, total, chi, ranks, table (top row first), mu, nu, w1.
json result_json(const BettiReport& x, const SpectralTable& t);

/// theta,i_plus,i_minus,is_breakpoint rows for in-domain breakpoints and arc
/// midpoints, sorted by angle, followed by in-domain grid samples if given.
void write_profile_csv(std::ostream& out, const IndexProfile& profile, const GridProfile* grid = nullptr);

}  // namespace qtopo
