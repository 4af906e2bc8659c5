#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtopo/cli.hpp"
#include "qtopo/fixtures.hpp"
#include "qtopo/io.hpp"
#include "test_oracles.hpp"

#include <sstream>

using namespace qtopo;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "qtopo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  RunResult r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string problem(const QuadraticPencil& p) {
  ProblemFile f;
  f.pencil = p;
  return to_json(f).dump();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

int breakpoint_rows(const std::string& csv, int* plus_one = nullptr) {
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.back() != '1') continue;
    ++rows;
    if (plus_one && line.find(",1,") != std::string::npos) ++*plus_one;
  }
  return rows;
}

}  // namespace

TEST_CASE("problem round trip is bit exact") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    ProblemFile f;
    f.pencil = fixtures::random_pencil(1 + trial % 6, rng);
    f.cone = trial % 2 ? PlanarCone::nonpositive_quadrant() : PlanarCone::sector({1.0, 0.3}, {-0.2, 1.0});
    f.c = Eigen::Vector2d(0.1 * trial + 1.0 / 3.0, -std::sqrt(2.0));
    f.mode = trial % 3 ? LevelProblem::Mode::equalities : LevelProblem::Mode::inequalities;
    f.smooth = trial % 5 == 0;
    const ProblemFile g = parse_problem(json::parse(to_json(f).dump()));
    CHECK(g.pencil.q0() == f.pencil.q0());
    CHECK(g.pencil.q1() == f.pencil.q1());
    CHECK(g.cone.approx_equal(f.cone, 0.0));
    CHECK(*g.c == *f.c);
    CHECK(g.mode == f.mode);
    CHECK(g.smooth == f.smooth);
  }
}

TEST_CASE("malformed problems are rejected") {
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"n": 1, "Q0": [[1, 0], [0, 1]], "Q1": [[1]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1, 2], [0, 1]], "Q1": [[0, 0], [0, 0]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1]], "Q1": [["a"]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1]], "Q1": [[1]], "cone": {"kind": "cube"}})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1]], "Q1": [[1]], "cone": {"kind": "ray"}})")), InvalidInput);
  CHECK_THROWS_AS(parse_problem(json::parse(R"({"Q0": [[1]], "Q1": [[1]], "mode": "both"})")), InvalidInput);
}

TEST_CASE("profile CSV") {
  SUBCASE("bouquet") {
    const IndexProfile prof = index_profile(fixtures::bouquet(), CircleSubset::full_circle());
    std::ostringstream csv;
    write_profile_csv(csv, prof);
    CHECK(csv.str().rfind("theta,i_plus,i_minus,is_breakpoint\n", 0) == 0);
    int ones = 0;
    CHECK(breakpoint_rows(csv.str(), &ones) == 2);
    CHECK(ones == 2);
  }
  SUBCASE("extremal n = 4") {
    const IndexProfile prof = index_profile(extremal_family(4), CircleSubset::full_circle());
    std::ostringstream csv;
    write_profile_csv(csv, prof);
    CHECK(breakpoint_rows(csv.str()) == 10);
    CHECK(count_lines(csv.str()) == 21);
  }
  SUBCASE("single point domain") {
    const CircleSubset omega = omega_set(PlanarCone::halfplane({1.0, 0.0}));
    REQUIRE(omega.items().size() == 1);
    const IndexProfile prof = index_profile(fixtures::bouquet(), omega);
    std::ostringstream csv;
    write_profile_csv(csv, prof);
    CHECK(count_lines(csv.str()) == 2);
  }
  SUBCASE("grid rows") {
    const QuadraticPencil p = fixtures::bouquet();
    ToleranceConfig cfg;
    cfg.grid_n = 36;
    const GridProfile g = grid_index_profile(p, cfg);
    std::ostringstream csv;
    write_profile_csv(csv, index_profile(p, CircleSubset::full_circle()), &g);
    CHECK(count_lines(csv.str()) == 1 + 4 + 36);
  }
}

TEST_CASE("command line") {
  const std::string bouquet = problem(fixtures::bouquet());

  SUBCASE("betti-x on the bouquet") {
    const RunResult r = run({"betti-x"}, bouquet);
    REQUIRE(r.code == cli::kSuccess);
    const json j = json::parse(r.out);
    CHECK(j["b"] == json({1, 3, 0, 0}));
    CHECK(j["chi"] == -2);
  }
  SUBCASE("extremal piped into betti-x") {
    const RunResult gen = run({"extremal", "--n", "5"});
    REQUIRE(gen.code == cli::kSuccess);
    const RunResult r = run({"betti-x"}, gen.out);
    CHECK(json::parse(r.out)["total"] == 10);
  }
  SUBCASE("calabi on the identity") {
    const RunResult r = run({"calabi"}, problem(fixtures::identity(3)));
    const json j = json::parse(r.out);
    CHECK(j["certified"] == true);
    CHECK(j["certificate"]["margin"].get<double>() == doctest::Approx(1.0));
    CHECK(j["certificate"]["omega"][0].get<double>() == doctest::Approx(1.0));
  }
  SUBCASE("other subcommands") {
    CHECK(json::parse(run({"euler"}, bouquet).out)["chi"] == -2);
    CHECK(json::parse(run({"table"}, bouquet).out)["table"] == json({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(json::parse(run({"betti-complement"}, bouquet).out)["b_complement"][1] == 3);
    CHECK(json::parse(run({"betti-y"}, bouquet).out)["Y"][0]["absolute"] == 1);
    const std::string sq = problem(fixtures::complex_squaring());
    const json level = json::parse(run({"level-set", "--c", "1", "0"}, sq).out);
    CHECK(level["nonempty"] == true);
    CHECK(level["b_tilde"][0] == 1);
    CHECK(json::parse(run({"support", "--theta", "0"}, problem(fixtures::identity(2))).out)["h"] == 1.0);
    CHECK(json::parse(run({"member", "--c", "0.5", "0"}, problem(fixtures::identity(2))).out)["member"] == false);
    const RunResult csv = run({"profile"}, bouquet);
    CHECK(breakpoint_rows(csv.out) == 2);
  }
  SUBCASE("verify attaches oracle verdicts") {
    const RunResult r = run({"verify"}, bouquet);
    CHECK(r.code == cli::kSuccess);
    const json j = json::parse(r.out);
    CHECK(j["oracle"]["agree"] == true);
    CHECK(j["oracle"]["components"]["sampled"] == 1);
  }
  SUBCASE("outputs are deterministic") {
    CHECK(run({"verify"}, bouquet).out == run({"verify"}, bouquet).out);
  }
  SUBCASE("exit codes") {
    CHECK(run({"--help"}).code == cli::kSuccess);
    CHECK(run({}).code == cli::kInvalidInput);
    CHECK(run({"betti-x"}, "{not json").code == cli::kInvalidInput);
    CHECK(run({"betti-x", "--input", "/nonexistent/file.json"}).code == cli::kInvalidInput);
    CHECK(run({"level-set"}, bouquet).code == cli::kInvalidInput);
    CHECK(run({"member", "--c", "1", "0"}, problem(fixtures::complex_squaring())).code == cli::kInvalidInput);
    CHECK(run({"extremal", "--n", "0"}).code == cli::kInvalidInput);
    const RunResult bad = run({"betti-x", "--grid", "1"}, bouquet);
    CHECK(bad.code == cli::kInvalidInput);
    CHECK_FALSE(bad.err.empty());
  }
}
