#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtopo/fixtures.hpp"
#include "qtopo/pencil.hpp"
#include "test_oracles.hpp"

#include <numbers>

using namespace qtopo;
constexpr double kPi = std::numbers::pi;

namespace {

bool has_root_near(const DegenerateLocus& z, double theta, int multiplicity, double tol = 1e-6) {
  for (const auto& p : z.points)
    if (circle_distance(p.angle.radians(), theta) < tol && p.multiplicity == multiplicity) return true;
  return false;
}

}  // namespace

TEST_CASE("inertia examples") {
  CHECK(inertia(Eigen::MatrixXd::Identity(4, 4)) == InertiaTriple{4, 0, 0});
  CHECK(inertia(Eigen::MatrixXd::Zero(4, 4)) == InertiaTriple{0, 0, 4});
  const QuadraticPencil b = fixtures::bouquet();
  CHECK(pencil_inertia(b, kPi / 2, {}) == InertiaTriple{1, 1, 2});
}

TEST_CASE("pencil evaluation") {
  const QuadraticPencil id = fixtures::identity(3);
  CHECK(pencil_at(id, Angle(0.0)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
  CHECK(pencil_at(id, Angle(kPi)).isApprox(-Eigen::MatrixXd::Identity(4, 4)));
  const QuadraticPencil b = fixtures::bouquet();
  CHECK(pencil_at(b, Angle(kPi / 2)).isApprox(b.q1(), 1e-15));
  CHECK(b.scale() == doctest::Approx(1.0));
}

TEST_CASE("input validation") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  CHECK_THROWS_AS(make_symmetric(a), InvalidInput);
  a << 1, 2, 2 + 1e-14, 4;
  CHECK(make_symmetric(a).isApprox(make_symmetric(a).transpose()));
  CHECK_THROWS_AS(QuadraticPencil(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)), InvalidInput);
  ToleranceConfig bad;
  bad.grid_n = 2;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("Sylvester law of inertia") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, -1;
  std::mt19937_64 rng(5);
  CHECK(sylvester_check(m, testing::random_symmetric(2, rng) + 3 * Eigen::MatrixXd::Identity(2, 2)));
  CHECK(sylvester_check(Eigen::MatrixXd::Identity(3, 3), 2 * Eigen::MatrixXd::Identity(3, 3)));

  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_int_distribution<int> rank_drop(0, 3);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = dim(rng);
    // Random inertia with a planted kernel.
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(d, d);
    std::normal_distribution<double> normal;
    const int zeros = std::min(d - 1, rank_drop(rng));
    for (int i = zeros; i < d; ++i) diag(i, i) = normal(rng) > 0 ? 1.0 + std::abs(normal(rng)) : -1.0 - std::abs(normal(rng));
    const Eigen::MatrixXd u = Eigen::HouseholderQR<Eigen::MatrixXd>(testing::random_symmetric(d, rng)).householderQ();
    const Eigen::MatrixXd mm = u * diag * u.transpose();
    Eigen::MatrixXd t = Eigen::MatrixXd::Random(d, d);
    // Keep T well conditioned so the kernel threshold stays meaningful.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
    if (svd.singularValues().minCoeff() < 0.1 * svd.singularValues().maxCoeff())
      t += d * Eigen::MatrixXd::Identity(d, d);
    CHECK(sylvester_check(mm, t, {}));
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("inertia of the negated matrix swaps signs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd m = testing::random_symmetric(1 + trial % 8, rng);
    const InertiaTriple a = inertia(m), b = inertia(Eigen::MatrixXd(-m));
    CHECK(a.i_plus == b.i_minus);
    CHECK(a.i_minus == b.i_plus);
  }
}

TEST_CASE("degenerate locus of fixtures") {
  SUBCASE("identity") {
    const DegenerateLocus z = degenerate_locus(fixtures::identity(3));
    CHECK_FALSE(z.identically_singular);
    REQUIRE(z.points.size() == 2);
    CHECK(has_root_near(z, kPi / 2, 4));
    CHECK(has_root_near(z, 3 * kPi / 2, 4));
    CHECK(z.theta == 0);
  }
  SUBCASE("bouquet") {
    // det(omega Q) = omega_0^4: a single projective root of multiplicity 4.
    const DegenerateLocus z = degenerate_locus(fixtures::bouquet());
    REQUIRE(z.points.size() == 2);
    CHECK(has_root_near(z, kPi / 2, 4));
    CHECK(has_root_near(z, 3 * kPi / 2, 4));
    CHECK(z.theta == 0);
  }
  SUBCASE("four lines") {
    const DegenerateLocus z = degenerate_locus(fixtures::four_lines());
    REQUIRE(z.points.size() == 4);
    for (double t : {0.0, kPi / 2, kPi, 3 * kPi / 2}) CHECK(has_root_near(z, t, 2));
    CHECK(z.theta == 0);
  }
  SUBCASE("complex squaring has no real roots") {
    const DegenerateLocus z = degenerate_locus(fixtures::complex_squaring());
    CHECK(z.points.empty());
    CHECK(z.theta == 1);
  }
  SUBCASE("identically singular") {
    const DegenerateLocus z = degenerate_locus(fixtures::rank_one());
    CHECK(z.identically_singular);
    CHECK(z.generic_rank == 1);
    REQUIRE(z.points.size() == 2);
    CHECK(has_root_near(z, 3 * kPi / 4, 1));
  }
}

TEST_CASE("root count and antipodal symmetry on random pencils") {
  std::mt19937_64 rng(123);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      const QuadraticPencil p = fixtures::random_pencil(n, rng);
      const DegenerateLocus z = degenerate_locus(p);
      CHECK_FALSE(z.identically_singular);
      CHECK(z.real_multiplicity() + 2 * z.theta == n + 1);
      for (const auto& pt : z.points) {
        CHECK(has_root_near(z, pt.angle.radians() + kPi, pt.multiplicity, 1e-9));
        // A real root is a zero of the smallest eigenvalue in magnitude.
        const Eigen::VectorXd ev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p.at(pt.angle.radians())).eigenvalues();
        CHECK(ev.cwiseAbs().minCoeff() < 1e-6 * p.scale());
      }
      // Off the locus the form is nondegenerate and i+(-w) = n+1 - i+(w).
      for (int s = 0; s < 7; ++s) {
        const double t = 0.37 + 0.9 * s;
        int plus = 0, minus = 0;
        if (!testing::robust_signs(p.at(t), plus, minus)) continue;
        CHECK(pencil_inertia(p, t + kPi, {}).i_plus == n + 1 - pencil_inertia(p, t, {}).i_plus);
      }
    }
  }
}

TEST_CASE("regularization") {
  SUBCASE("simple locus is accepted at the first trial") {
    std::mt19937_64 rng(3);
    const QuadraticPencil q = fixtures::random_pencil(3, rng);
    const RegularizedPencil r = regularize(q);
    // The first epsilon and its half are the only two trials.
    CHECK(r.attempts == 2);
    CHECK(r.epsilon == doctest::Approx(1e-3 * q.scale()));
    CHECK(r.shift.isApprox(Eigen::MatrixXd::Identity(4, 4)));
  }
  SUBCASE("four lines splits into eight simple roots") {
    const RegularizedPencil r = regularize(fixtures::four_lines());
    CHECK(r.roots.size() == 8);
  }
  SUBCASE("identically singular pencil becomes generic") {
    const RegularizedPencil r = regularize(fixtures::rank_one());
    CHECK_FALSE(r.roots.empty());
    CHECK(r.roots.size() % 2 == 0);
  }
  SUBCASE("with_epsilon keeps the shift") {
    const RegularizedPencil r = regularize(fixtures::four_lines());
    const RegularizedPencil half = with_epsilon(r, r.epsilon / 2);
    CHECK(half.shift.isApprox(r.shift));
    CHECK(half.roots.size() == r.roots.size());
  }
}

TEST_CASE("index jumps by one across regularized roots") {
  std::mt19937_64 rng(77);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const QuadraticPencil p = fixtures::random_pencil(n, rng);
      const RegularizedPencil r = regularize(p);
      const std::size_t m = r.roots.size();
      for (std::size_t i = 0; i < m; ++i) {
        const double a = r.roots[i];
        const double b = r.roots[(i + 1) % m];
        const double before = a - 0.5 * ccw_distance(r.roots[(i + m - 1) % m], a);
        const double after = a + 0.5 * ccw_distance(a, b);
        const int jump = r.inertia_at(after, {}).i_minus - r.inertia_at(before, {}).i_minus;
        CHECK(std::abs(jump) == 1);
      }
    }
  }
}
