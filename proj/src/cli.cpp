#include "qtopo/cli.hpp"

#include "qtopo/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace qtopo::cli {
namespace {

struct Options {
  std::string input;
  std::string output;
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  bool smooth = false;
  bool verify = false;
  std::vector<double> c;
  double theta = 0.0;
  int n = 4;
  std::string csv;
};

ToleranceConfig make_config(const Options& o) {
  ToleranceConfig cfg;
  if (o.epsilon) cfg.epsilon_reg = *o.epsilon;
  if (o.tol) cfg.tol_eig = *o.tol;
  if (o.grid) cfg.grid_n = *o.grid;
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

ProblemFile read_problem(const Options& o, std::istream& in, const ToleranceConfig& cfg) {
  json j;
  try {
    if (o.input.empty() || o.input == "-") {
      j = json::parse(in);
    } else {
      std::ifstream file(o.input);
      if (!file) throw InvalidInput("cannot open input file " + o.input);
      j = json::parse(file);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  ProblemFile p = parse_problem(j, cfg);
  if (o.smooth) p.smooth = true;
  return p;
}

Eigen::Vector2d level_point(const Options& o, const ProblemFile& p) {
  if (!o.c.empty()) {
    if (o.c.size() != 2) throw InvalidInput("--c takes two numbers");
    return {o.c[0], o.c[1]};
  }
  if (p.c) return *p.c;
  throw InvalidInput("this command needs a point c (problem field \"c\" or --c)");
}

// Oracle cross-checks attached under "oracle"; `ok` turns false on any
// disagreement.
json oracle_block(const ProblemFile& p, const FiltrationReport& rep, const BettiReport& x,
                  const ToleranceConfig& cfg, bool& ok) {
  json j;
  const GridProfile grid = grid_index_profile(p.pencil, cfg);
  const GridComparison cmp = compare_with_profile(grid, rep.profile, 10.0 * cfg.tol_angle);
  j["grid"] = {{"resolution", grid.resolution}, {"compared", cmp.compared}, {"disagreements", cmp.disagreements}};
  if (cmp.disagreements > 0) ok = false;

  if (p.pencil.n() <= 3) {
    const ComponentSample s = sample_components(p.pencil, p.cone, SampleSpace::projective, cfg);
    j["components"] = {{"sampled", s.components}, {"accepted", s.accepted}, {"b0", x.b[0]}};
    if (s.components != x.b[0]) ok = false;
  }
  if (rep.w1.transported) {
    const MonodromyCheck m = monodromy_refine(p.pencil, rep.profile, cfg);
    j["monodromy"] = {{"stable", m.stable}, {"w1", m.w1_nonzero}, {"resolutions", m.resolutions}};
    if (!m.stable || m.w1_nonzero != rep.w1.w1_nonzero) ok = false;
  }
  j["agree"] = ok;
  return j;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw std::runtime_error("cannot open output file " + o.output);
  file << text << '\n';
}

int dispatch(const std::string& cmd, const Options& o, std::istream& in, std::ostream& out) {
  const ToleranceConfig cfg = make_config(o);

  if (cmd == "extremal") {
    ProblemFile p;
    p.pencil = extremal_family(o.n);
    emit(o, out, to_json(p).dump(2));
    return kSuccess;
  }

  const ProblemFile p = read_problem(o, in, cfg);
  const int n = p.pencil.n();
  json result;
  bool ok = true;

  if (cmd == "betti-x" || cmd == "table" || cmd == "euler" || cmd == "betti-y" || cmd == "betti-complement" ||
      cmd == "verify") {
    const FiltrationReport rep = analyze(p.pencil, p.cone, cfg);
    const SpectralTable table = build_table(rep, n);
    const BettiReport x = betti_X(table);
    if (cmd == "betti-x" || cmd == "verify") {
      result = result_json(x, table);
      const auto violations = check_bounds(x, p.smooth && rep.locus.all_simple());
      result["bound_violations"] = violations;
    } else if (cmd == "table") {
      result = {{"table", to_json(table)}, {"mu", table.mu}, {"nu", table.nu},
                {"w1", table.w1_nonzero}, {"c", table.c},   {"d", table.d}};
    } else if (cmd == "euler") {
      const int chi = euler_from_filtration(rep, n);
      if (chi != x.chi) throw ConsistencyError("Euler characteristic disagrees with the Betti numbers");
      result = {{"chi", chi}};
    } else if (cmd == "betti-complement") {
      result = {{"b_complement", betti_complement(rep, n)}};
    } else {
      json entries = json::array();
      for (const auto& e : betti_Y(rep, x, n)) {
        entries.push_back({{"k", e.k},
                           {"reduced", e.reduced ? json(*e.reduced) : json(nullptr)},
                           {"absolute", e.absolute ? json(*e.absolute) : json(nullptr)},
                           {"bound", e.bound}});
      }
      result = {{"Y", entries}};
    }
    if (o.verify || cmd == "verify") result["oracle"] = oracle_block(p, rep, x, cfg, ok);
  } else if (cmd == "level-set") {
    LevelProblem l{p.pencil, level_point(o, p), p.mode, p.cone};
    const LevelResult r = solve_level(l, cfg);
    result = to_json(r);
    if (o.verify) {
      const double margin = certificate_margin(l, cfg);
      const FeasibilityResult f = feasibility_sample(l, cfg);
      const bool decisive = std::abs(margin) > 1e-3;
      result["oracle"] = {{"found", f.found}, {"residual", f.residual}, {"margin", margin}, {"decisive", decisive}};
      if (decisive && f.found != r.nonempty) ok = false;
    }
  } else if (cmd == "calabi") {
    const CalabiResult r = calabi(p.pencil, cfg);
    result = {{"certified", r.certified}, {"mu", r.mu}, {"certificate", to_json(r.certificate)},
              {"equivalence_applies", r.equivalence_applies}};
    if (!r.warning.empty()) result["warning"] = r.warning;
  } else if (cmd == "member") {
    const MembershipResult r = image_membership(p.pencil, level_point(o, p), cfg);
    result = {{"member", r.member}, {"certificate", to_json(r.certificate)}};
  } else if (cmd == "support") {
    result = {{"theta", o.theta}, {"h", support_function(p.pencil, Angle(o.theta))}};
  } else if (cmd == "profile") {
    const FiltrationReport rep = analyze(p.pencil, p.cone, cfg);
    std::ostringstream csv;
    const GridProfile grid = o.grid ? grid_index_profile(p.pencil, cfg) : GridProfile{};
    write_profile_csv(csv, rep.profile, o.grid ? &grid : nullptr);
    if (o.csv.empty() || o.csv == "-") {
      out << csv.str();
    } else {
      std::ofstream file(o.csv);
      if (!file) throw std::runtime_error("cannot open CSV file " + o.csv);
      file << csv.str();
    }
    return kSuccess;
  }

  emit(o, out, result.dump(2));
  if (!ok) throw OracleDisagreement("oracle cross-check disagreed with the analytic result");
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topology of sets defined by two quadratic forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--input,-i", o.input, "Problem JSON (default: standard input)");
  app.add_option("--output,-o", o.output, "Result file (default: standard output)");
  app.add_option("--epsilon", o.epsilon, "Initial regularization epsilon");
  app.add_option("--tol", o.tol, "Relative eigenvalue threshold");
  app.add_option("--grid", o.grid, "Oracle grid resolution");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_flag("--smooth", o.smooth, "Assert a nonsingular intersection");
  app.add_flag("--verify", o.verify, "Run oracle cross-checks");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"betti-x", "Betti numbers of X in RP^n"},
      {"betti-y", "Betti numbers of the double cover Y in S^n"},
      {"betti-complement", "Betti numbers of the complement of X"},
      {"euler", "Euler characteristic of X"},
      {"table", "The spectral table"},
      {"level-set", "Reduced Betti numbers of a level set"},
      {"calabi", "Positive definite combination search"},
      {"member", "Membership of c in q(S^n)"},
      {"support", "Support function of q(S^n)"},
      {"extremal", "Emit the extremal pencil of size n"},
      {"profile", "Index profile as CSV"},
      {"verify", "Betti numbers with all oracle checks"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "level-set" || name == "member") sub->add_option("--c", o.c, "Point c as two numbers")->expected(2);
    if (name == "support") sub->add_option("--theta", o.theta, "Direction angle in radians")->required();
    if (name == "extremal") sub->add_option("--n", o.n, "Projective dimension")->required();
    if (name == "profile") sub->add_option("--csv", o.csv, "CSV output path (default: standard output)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cmd, o, in, out);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const OracleDisagreement& e) {
    err << "oracle disagreement: " << e.what() << '\n';
    return kOracleDisagreement;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}

}  // namespace qtopo::cli
