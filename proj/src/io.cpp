#include "qtopo/io.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <tuple>

namespace qtopo {
namespace {

Eigen::MatrixXd matrix_from_json(const json& j, int dim, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw InvalidInput(std::string(name) + " must be an array of " + std::to_string(dim) + " rows");
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InvalidInput(std::string(name) + " row " + std::to_string(r) + " has the wrong length");
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number()) throw InvalidInput(std::string(name) + " has a non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::Vector2d vec2_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(std::string(name) + " must be a pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

QuadraticPencil pencil_from_json(const json& j, const ToleranceConfig& cfg) {
  if (!j.is_object()) throw InvalidInput("problem must be a JSON object");
  if (!j.contains("Q0") || !j.contains("Q1")) throw InvalidInput("problem needs Q0 and Q1");
  int dim = static_cast<int>(j["Q0"].size());
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 0) throw InvalidInput("n must be a nonnegative integer");
    dim = j["n"].get<int>() + 1;
  }
  const Eigen::MatrixXd q0 = make_symmetric(matrix_from_json(j["Q0"], dim, "Q0"), cfg);
  const Eigen::MatrixXd q1 = make_symmetric(matrix_from_json(j["Q1"], dim, "Q1"), cfg);
  return {q0, q1};
}

json pencil_to_json(const QuadraticPencil& p) {
  return {{"n", p.n()}, {"Q0", matrix_to_json(p.q0())}, {"Q1", matrix_to_json(p.q1())}};
}

PlanarCone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidInput("cone needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  std::vector<Eigen::Vector2d> g;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw InvalidInput("cone generators must be an array");
    for (const auto& v : j["generators"]) g.push_back(vec2_from_json(v, "cone generator"));
  }
  for (const auto& v : g)
    if (v.norm() == 0.0) throw InvalidInput("cone generators must be nonzero");
  const auto need = [&](std::size_t count) {
    if (g.size() < count) throw InvalidInput("cone kind " + kind + " needs " + std::to_string(count) + " generator(s)");
  };
  if (kind == "zero") return PlanarCone::zero();
  if (kind == "full") return PlanarCone::full();
  if (kind == "nonpositive_quadrant") return PlanarCone::nonpositive_quadrant();
  if (kind == "sector") {
    need(2);
    return PlanarCone::sector(g[0], g[1]);
  }
  if (kind != "ray" && kind != "line" && kind != "halfplane") throw InvalidInput("unknown cone kind: " + kind);
  need(1);
  if (kind == "ray") return PlanarCone::ray(g[0]);
  if (kind == "line") return PlanarCone::line(g[0]);
  return PlanarCone::halfplane(g[0]);
}

json to_json(const PlanarCone& k) {
  json gens = json::array();
  for (const auto& g : k.generators()) gens.push_back({g.x(), g.y()});
  return {{"kind", to_string(k.kind())}, {"generators", gens}};
}

ProblemFile parse_problem(const json& j, const ToleranceConfig& cfg) {
  ProblemFile p;
  p.pencil = pencil_from_json(j, cfg);
  if (j.contains("cone")) p.cone = cone_from_json(j["cone"]);
  if (j.contains("c")) p.c = vec2_from_json(j["c"], "c");
  if (j.contains("mode")) {
    const std::string mode = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (mode == "eq")
      p.mode = LevelProblem::Mode::equalities;
    else if (mode == "ineq")
      p.mode = LevelProblem::Mode::inequalities;
    else
      throw InvalidInput("mode must be \"eq\" or \"ineq\"");
  }
  if (j.contains("smooth")) {
    if (!j["smooth"].is_boolean()) throw InvalidInput("smooth must be a boolean");
    p.smooth = j["smooth"].get<bool>();
  }
  return p;
}

json to_json(const ProblemFile& p) {
  json j = pencil_to_json(p.pencil);
  j["cone"] = to_json(p.cone);
  if (p.c) j["c"] = {(*p.c)(0), (*p.c)(1)};
  j["mode"] = p.mode == LevelProblem::Mode::equalities ? "eq" : "ineq";
  j["smooth"] = p.smooth;
  return j;
}

json to_json(const CircleSubset& s) {
  json items = json::array();
  for (const auto& it : s.items()) {
    items.push_back({{"type", it.kind == CircleItem::Kind::point ? "point" : "arc"},
                     {"start", it.start},
                     {"end", it.end()},
                     {"closed_start", it.closed_start},
                     {"closed_end", it.closed_end}});
  }
  return {{"full", s.is_full()}, {"items", items}};
}

json to_json(const Certificate& c) {
  json j = {{"kind", to_string(c.kind)}, {"margin", c.margin}};
  if (c.omega) {
    j["omega"] = {std::cos(c.omega->radians()), std::sin(c.omega->radians())};
    j["theta"] = c.omega->radians();
  }
  if (c.witness) j["witness"] = std::vector<double>(c.witness->begin(), c.witness->end());
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const SpectralTable& t) {
  json rows = json::array();
  for (int j = t.n; j >= 0; --j) rows.push_back({t.rows[j][0], t.rows[j][1], t.rows[j][2]});
  return rows;
}

json to_json(const LevelResult& r) {
  json j = {{"nonempty", r.nonempty}, {"b_tilde", r.b_tilde}};
  if (r.min_minus)
    j["min_i_minus"] = *r.min_minus;
  else
    j["min_i_minus"] = nullptr;
  return j;
}

json result_json(const BettiReport& x, const SpectralTable& t) {
  return {{"b", x.b},       {"total", x.total}, {"chi", x.chi}, {"ranks", x.ranks}, {"table", to_json(t)},
          {"mu", t.mu},     {"nu", t.nu},       {"w1", t.w1_nonzero}, {"c", t.c},   {"d", t.d},
          {"empty", x.empty}};
}

void write_profile_csv(std::ostream& out, const IndexProfile& profile, const GridProfile* grid) {
  std::vector<std::tuple<double, int, int, int>> rows;
  for (std::size_t i = 0; i < profile.breakpoints().size(); ++i) {
    if (!profile.point_in_domain(i)) continue;
    const auto& v = profile.point_values()[i];
    rows.emplace_back(profile.breakpoints()[i], v.i_plus, v.i_minus, 1);
  }
  for (std::size_t i = 0; i < profile.arc_values().size(); ++i) {
    if (!profile.arc_in_domain(i)) continue;
    const auto& v = profile.arc_values()[i];
    rows.emplace_back(profile.arc_midpoint(i), v.i_plus, v.i_minus, 0);
  }
  std::sort(rows.begin(), rows.end());
  out << "theta,i_plus,i_minus,is_breakpoint\n";
  out << std::setprecision(17);
  for (const auto& [theta, ip, im, bp] : rows) out << theta << ',' << ip << ',' << im << ',' << bp << '\n';
  if (grid) {
    for (std::size_t i = 0; i < grid->angles.size(); ++i) {
      if (!profile.domain().contains(grid->angles[i])) continue;
      out << grid->angles[i] << ',' << grid->samples[i].i_plus << ',' << grid->samples[i].i_minus << ",0\n";
    }
  }
}

}  // namespace qtopo
