#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtopo/filtration.hpp"
#include "qtopo/fixtures.hpp"
#include "qtopo/oracle.hpp"
#include "test_oracles.hpp"

#include <numbers>

using namespace qtopo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("bouquet profile and filtration") {
  const QuadraticPencil p = fixtures::bouquet();
  const IndexProfile prof = index_profile(p, CircleSubset::full_circle());
  REQUIRE(prof.breakpoints().size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(prof.arc_values()[i].i_plus == 2);
    CHECK(prof.point_values()[i].i_plus == 1);
  }
  CHECK(superlevel(prof, 0).is_full());
  CHECK(superlevel(prof, 1).is_full());
  const CircleSubset two = superlevel(prof, 2);
  CHECK(two.approx_equal(complement(combine(CircleSubset::point(kPi / 2), CircleSubset::point(3 * kPi / 2),
                                            SetOp::unite))));
  CHECK(superlevel(prof, 3).is_empty());
  CHECK(superlevel(prof, 4).is_empty());
}

TEST_CASE("identity profile") {
  const QuadraticPencil p = fixtures::identity(3);
  const IndexProfile prof = index_profile(p, CircleSubset::full_circle());
  CHECK(prof.value_at(0.0)->i_plus == 4);
  CHECK(prof.value_at(kPi)->i_plus == 0);
  CHECK(prof.value_at(kPi / 2)->i_plus == 0);
  CHECK(prof.value_at(kPi / 2)->i_zero == 4);
  CHECK(superlevel(prof, 4).approx_equal(CircleSubset::arc(3 * kPi / 2, kPi / 2, false, false)));
}

TEST_CASE("extremal profile alternates") {
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    const IndexProfile prof = index_profile(extremal_family(n), CircleSubset::full_circle());
    const int hi = (n + 2) / 2;
    const std::size_t arcs = prof.arc_values().size();
    if (n % 2 == 0) {
      // Simple roots: 2(n+1) arcs whose values alternate.
      REQUIRE(arcs == static_cast<std::size_t>(2 * (n + 1)));
      int count_hi = 0, count_lo = 0;
      for (std::size_t i = 0; i < arcs; ++i) {
        const int v = prof.arc_values()[i].i_plus;
        CHECK(v != prof.arc_values()[(i + 1) % arcs].i_plus);
        count_hi += v == hi;
        count_lo += v == hi - 1;
      }
      CHECK(count_hi == n + 1);
      CHECK(count_lo == n + 1);
    } else {
      // Antipodal entries share their zeros: the lower value sits on the
      // n+1 double roots between n+1 arcs of the upper value.
      REQUIRE(arcs == static_cast<std::size_t>(n + 1));
      for (const auto& v : prof.arc_values()) CHECK(v.i_plus == hi);
      for (const auto& v : prof.point_values()) CHECK(v.i_plus == hi - 1);
    }
  }
}

TEST_CASE("profile restricted to a cone's omega") {
  const QuadraticPencil p = fixtures::bouquet();
  const CircleSubset omega = omega_set(PlanarCone::nonpositive_quadrant());
  const IndexProfile prof = index_profile(p, omega);
  CHECK(prof.domain().approx_equal(omega));
  CHECK(superlevel(prof, 0).approx_equal(omega));
  // The closed quarter arc ends at pi/2 where i+ drops to 1.
  CHECK(superlevel(prof, 2).approx_equal(CircleSubset::arc(0.0, kPi / 2, true, false)));
  CHECK(prof.value_at(kPi) == std::nullopt);
}

TEST_CASE("profile invariants on random pencils agree with the grid oracle") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const QuadraticPencil p = fixtures::random_pencil(n, rng);
      const FiltrationReport rep = analyze(p, PlanarCone::zero());
      const IndexProfile& prof = rep.profile;
      const std::size_t m = prof.breakpoints().size();
      for (std::size_t i = 0; i < m; ++i) {
        const InertiaTriple& at = prof.point_values()[i];
        CHECK(at.i_plus <= prof.arc_values()[i].i_plus);
        CHECK(at.i_plus <= prof.arc_values()[(i + m - 1) % m].i_plus);
      }
      for (const auto& v : prof.arc_values()) CHECK(v.i_plus + v.i_minus <= n + 1);
      for (int j = 0; j <= n; ++j) CHECK(is_subset(rep.level(j + 1), rep.level(j)));
      CHECK(rep.level(rep.mu).is_empty() == false);
      CHECK(rep.level(rep.mu + 1).is_empty());
      const GridComparison cmp = compare_with_profile(grid_index_profile(p), prof, 1e-6);
      CHECK(cmp.disagreements == 0);
    }
  }
}

TEST_CASE("sublevel sets after regularization") {
  const QuadraticPencil p = fixtures::bouquet();
  const CircleSubset full = CircleSubset::full_circle();
  const FiltrationReport rep = analyze(p, full);
  const CircleSubset s1 = sublevel_eps(p, full, 1);
  CHECK(betti_circle(s1).b0 == 2);
  CHECK(betti_circle(s1).b0 == betti_circle(rep.level(2)).b0);
  for (const auto& item : s1.items()) {
    CHECK(item.kind == CircleItem::Kind::arc);
    CHECK(item.closed_start);
    CHECK(item.closed_end);
  }
  // Omega^1 = Omega gives the whole domain, Omega^4 = empty gives nothing.
  CHECK(sublevel_eps(p, full, 0).is_full());
  CHECK(sublevel_eps(p, full, 3).is_empty());
}

TEST_CASE("sublevel and superlevel sets have matching homology on random pencils") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const QuadraticPencil p = fixtures::random_pencil(n, rng);
      const CircleSubset full = CircleSubset::full_circle();
      const FiltrationReport rep = analyze(p, full);
      const RegularizedPencil reg = regularize(p);
      for (int k = 0; k <= n; ++k) {
        const CircleSubset sub = sublevel_eps(reg, full, k);
        CHECK(betti_circle(sub) == betti_circle(rep.level(k + 1)));
      }
    }
  }
}

TEST_CASE("orientation character of the top eigenbundle") {
  SUBCASE("complex squaring") {
    const QuadraticPencil p = fixtures::complex_squaring();
    const FiltrationReport rep = analyze(p, PlanarCone::zero());
    CHECK(rep.mu == 1);
    CHECK(rep.w1.transported);
    CHECK(rep.w1.w1_nonzero);
  }
  SUBCASE("bouquet is not transported") {
    const FiltrationReport rep = analyze(fixtures::bouquet(), PlanarCone::zero());
    CHECK(rep.mu == 2);
    CHECK_FALSE(rep.w1.transported);
    CHECK_FALSE(rep.w1.w1_nonzero);
  }
  SUBCASE("doubled squaring is orientable") {
    const QuadraticPencil p = fixtures::doubled_squaring();
    const FiltrationReport rep = analyze(p, PlanarCone::zero());
    CHECK(rep.mu == 2);
    CHECK(rep.w1.transported);
    CHECK_FALSE(rep.w1.w1_nonzero);
    // Sum of two Mobius bundles; the verdict holds at a much finer resolution.
    CHECK(stiefel_whitney(p, rep.profile, {}, 1024).w1_nonzero == false);
  }
}

TEST_CASE("filtration on an empty domain") {
  const FiltrationReport rep = analyze(fixtures::bouquet(), PlanarCone::full());
  CHECK(rep.mu == 0);
  CHECK(rep.level(0).is_empty());
  CHECK(rep.level(1).is_empty());
}
