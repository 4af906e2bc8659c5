#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtopo/fixtures.hpp"
#include "qtopo/oracle.hpp"

#include <numbers>

using namespace qtopo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("grid profiles") {
  SUBCASE("bouquet") {
    const GridProfile g = grid_index_profile(fixtures::bouquet());
    CHECK(g.resolution == 720);
    for (std::size_t i = 0; i < g.angles.size(); ++i) {
      const bool near = circle_distance(g.angles[i], kPi / 2) < 1e-9 || circle_distance(g.angles[i], 3 * kPi / 2) < 1e-9;
      CHECK(g.samples[i].i_plus == (near ? 1 : 2));
    }
  }
  SUBCASE("extremal n = 4 has ten blocks") {
    const GridProfile g = grid_index_profile(extremal_family(4));
    // The roots sit on the grid; compare consecutive nonsingular samples.
    std::vector<int> values;
    for (const auto& s : g.samples)
      if (s.i_zero == 0) values.push_back(s.i_plus);
    int changes = 0;
    for (std::size_t i = 0; i < values.size(); ++i) changes += values[i] != values[(i + 1) % values.size()];
    CHECK(changes == 10);
    CHECK(values.size() == 710);
  }
  SUBCASE("identity halves") {
    ToleranceConfig cfg;
    cfg.grid_n = 8;
    const GridProfile g = grid_index_profile(fixtures::identity(3), cfg);
    CHECK(g.resolution == 16);
    int fours = 0, zeros = 0;
    for (const auto& s : g.samples) {
      fours += s.i_plus == 4;
      zeros += s.i_plus == 0;
    }
    CHECK(fours == 7);
    CHECK(zeros == 9);
  }
}

TEST_CASE("grid comparison flags a corrupted profile") {
  const QuadraticPencil p = fixtures::bouquet();
  const IndexProfile good = index_profile(p, CircleSubset::full_circle());
  const GridProfile g = grid_index_profile(p);
  CHECK(compare_with_profile(g, good, 1e-6).disagreements == 0);
  std::vector<InertiaTriple> arcs = good.arc_values();
  arcs[0].i_plus = 3;
  const IndexProfile bad(good.dim(), good.domain(), good.breakpoints(), good.point_values(), arcs);
  const GridComparison cmp = compare_with_profile(g, bad, 1e-6);
  CHECK(cmp.disagreements > 300);
  CHECK(cmp.offending.size() == static_cast<std::size_t>(cmp.disagreements));
}

TEST_CASE("component sampling") {
  const PlanarCone zero = PlanarCone::zero();
  CHECK(sample_components(fixtures::four_lines(), zero, SampleSpace::sphere).components == 1);
  CHECK(sample_components(fixtures::bouquet(), zero, SampleSpace::projective).components == 1);
  const ComponentSample empty = sample_components(fixtures::identity(3), zero, SampleSpace::projective);
  CHECK(empty.components == 0);
  CHECK(empty.accepted == 0);
  CHECK(sample_components(fixtures::point_pair(), zero, SampleSpace::sphere).components == 2);
  CHECK(sample_components(fixtures::doubled_squaring(), zero, SampleSpace::projective).components == 2);
  CHECK_THROWS_AS(sample_components(extremal_family(4), zero, SampleSpace::sphere), InvalidInput);
}

TEST_CASE("sampling is reproducible from the seed") {
  ToleranceConfig cfg;
  cfg.seed = 1234;
  const ComponentSample a = sample_components(fixtures::bouquet(), PlanarCone::zero(), SampleSpace::sphere, cfg, 400);
  const ComponentSample b = sample_components(fixtures::bouquet(), PlanarCone::zero(), SampleSpace::sphere, cfg, 400);
  CHECK(a.components == b.components);
  CHECK(a.attempts == b.attempts);
  CHECK(a.radius == b.radius);
}

TEST_CASE("feasibility search") {
  const FeasibilityResult sq = feasibility_sample({fixtures::complex_squaring(), {1.0, 0.0}});
  REQUIRE(sq.found);
  CHECK(std::abs(std::abs((*sq.witness)(0)) - 1.0) < 1e-6);
  CHECK(std::abs((*sq.witness)(1)) < 1e-6);

  const QuadraticPencil norm(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3));
  const FeasibilityResult none = feasibility_sample({norm, {-1.0, 0.0}});
  CHECK_FALSE(none.found);
  CHECK_FALSE(none.witness);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 5;
    const QuadraticPencil p = fixtures::random_pencil(dim - 1, rng);
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = normal(rng);
    const Eigen::Vector2d c(x.dot(p.q0() * x), x.dot(p.q1() * x));
    CHECK(feasibility_sample({p, c}).found);
  }
}

TEST_CASE("certificate margin") {
  const QuadraticPencil norm(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3));
  // |x|^2 = -1: omega = (1, 0) certifies with margin min(1, 1) = 1.
  CHECK(certificate_margin({norm, {-1.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(certificate_margin({norm, {1.0, 0.0}}) < 0.0);
  CHECK(certificate_margin({norm, {0.0, 0.0}}) == -1.0);
}

TEST_CASE("monodromy refinement") {
  const QuadraticPencil sq = fixtures::complex_squaring();
  const MonodromyCheck a = monodromy_refine(sq, index_profile(sq, CircleSubset::full_circle()));
  CHECK(a.stable);
  CHECK(a.w1_nonzero);
  CHECK(a.resolutions.size() == 3);
  const QuadraticPencil dsq = fixtures::doubled_squaring();
  const MonodromyCheck b = monodromy_refine(dsq, index_profile(dsq, CircleSubset::full_circle()));
  CHECK(b.stable);
  CHECK_FALSE(b.w1_nonzero);
  const QuadraticPencil bq = fixtures::bouquet();
  CHECK(monodromy_refine(bq, index_profile(bq, CircleSubset::full_circle())).resolutions.empty());
}
