#include "qtopo/betti.hpp"

#include <numbers>
#include <sstream>

namespace qtopo {

int SpectralTable::e(int i, int j) const {
  if (i < 0 || i > 2 || j < 0 || j >= static_cast<int>(rows.size())) return 0;
  return rows[j][i];
}

std::vector<int> betti_complement(const FiltrationReport& rep, int n) {
  std::vector<int> b(n + 1, 0);
  b[0] = betti_circle(rep.level(1)).b0;
  for (int k = 1; k <= n; ++k) b[k] = betti_circle(rep.level(k + 1)).b0 + betti_circle(rep.level(k)).b1;
  return b;
}

std::vector<int> betti_complement(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  return betti_complement(analyze(p, k, cfg), p.n());
}

SpectralTable build_table(const FiltrationReport& rep, int n) {
  SpectralTable t;
  t.n = n;
  t.mu = rep.mu;
  t.nu = rep.nu;
  t.w1_nonzero = rep.w1.w1_nonzero;
  const CircleBetti top = betti_circle(rep.level(rep.mu));
  if (t.w1_nonzero) {
    t.c = 0;
    t.d = 0;
  } else {
    t.c = 1;
    t.d = rep.mu > 0 ? top.b1 : 0;
  }
  t.rows.assign(n + 1, {0, 0, 0});
  for (int j = 0; j <= n; ++j) {
    if (j > t.mu) {
      t.rows[j] = {1, 0, 0};
    } else if (j == t.mu) {
      t.rows[j] = {t.c, 0, 0};
    } else if (j == t.mu - 1) {
      t.rows[j] = {0, top.b0 - 1, t.d};
    } else {
      const CircleBetti level = betti_circle(rep.level(j + 1));
      t.rows[j] = {0, level.b0 - 1, level.b1};
    }
  }
  return t;
}

SpectralTable build_table(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  return build_table(analyze(p, k, cfg), p.n());
}

BettiReport betti_X(const SpectralTable& table) {
  BettiReport r;
  const int n = table.n;
  r.b.assign(n + 1, 0);
  r.ranks.assign(n + 1, 0);
  if (table.mu == n + 1) {
    r.empty = true;
    return r;
  }
  for (int k = 0; k <= n; ++k) {
    r.b[k] = table.e(0, n - k) + table.e(1, n - k - 1) + table.e(2, n - k - 2);
    r.ranks[k] = table.e(0, n - k);
    r.total += r.b[k];
    r.chi += (k % 2 == 0 ? 1 : -1) * r.b[k];
  }
  r.empty = r.total == 0;
  return r;
}

int euler_from_filtration(const FiltrationReport& rep, int n) {
  // (-1)^n chi(X) = (-1)^n chi(RP^n) + sum_j (-1)^{j+1} chi(Omega^{j+1}).
  int rhs = n % 2 == 0 ? 1 : 0;
  for (int j = 0; j <= n; ++j) rhs += (j % 2 == 0 ? -1 : 1) * euler_circle(rep.level(j + 1));
  return n % 2 == 0 ? rhs : -rhs;
}

int euler_X(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  const FiltrationReport rep = analyze(p, k, cfg);
  const int chi = euler_from_filtration(rep, p.n());
  const BettiReport x = betti_X(build_table(rep, p.n()));
  if (chi != x.chi) {
    std::ostringstream msg;
    msg << "Euler characteristic mismatch: filtration gives " << chi << ", Betti numbers give " << x.chi;
    throw ConsistencyError(msg.str());
  }
  return chi;
}

std::vector<SphereBetti> betti_Y(const FiltrationReport& rep, const BettiReport& x, int n) {
  std::vector<SphereBetti> out;
  for (int k = 0; k <= n; ++k) {
    SphereBetti e;
    e.k = k;
    e.bound = 2 * x.b[k];
    if (x.empty) {
      e.reduced = 0;
      e.absolute = 0;
    } else if (k < n - 2) {
      const int value = betti_pair(rep.level(n - k), rep.level(n - k + 1)).b0 +
                        betti_pair(rep.level(n - k - 1), rep.level(n - k)).b1;
      e.reduced = value;
      e.absolute = k == 0 ? value + 1 : value;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<SphereBetti> betti_Y(const QuadraticPencil& p, const PlanarCone& k, const ToleranceConfig& cfg) {
  const FiltrationReport rep = analyze(p, k, cfg);
  return betti_Y(rep, betti_X(build_table(rep, p.n())), p.n());
}

std::vector<std::string> check_bounds(const BettiReport& report, bool smooth) {
  std::vector<std::string> out;
  const int n = static_cast<int>(report.b.size()) - 1;
  if (n >= 1 && report.total > 2 * n) {
    std::ostringstream msg;
    msg << "b(X) = " << report.total << " exceeds 2n = " << 2 * n;
    out.push_back(msg.str());
  }
  if (smooth) {
    for (int k = 0; k <= n; ++k) {
      if (report.b[k] > 2 * (k + 2)) {
        std::ostringstream msg;
        msg << "b_" << k << "(X) = " << report.b[k] << " exceeds 2(k+2) = " << 2 * (k + 2);
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

IndexDecomposition index_decomposition(const QuadraticPencil& p, Angle eta, Angle omega,
                                       const ToleranceConfig& cfg) {
  const DegenerateLocus locus = degenerate_locus(p, cfg);
  if (locus.identically_singular || !locus.all_simple())
    throw InvalidInput("index decomposition needs a simple degenerate locus");
  if (pencil_inertia(p, eta.radians(), cfg).i_zero != 0 || pencil_inertia(p, omega.radians(), cfg).i_zero != 0)
    throw InvalidInput("eta and omega must avoid the degenerate locus");

  const double start = eta.antipode().radians();
  const double w = ccw_distance(start, omega.radians());
  if (w <= cfg.tol_angle || w >= std::numbers::pi - cfg.tol_angle)
    throw InvalidInput("omega must lie strictly inside the arc from -eta to eta");

  const IndexProfile prof = index_profile(p, CircleSubset::full_circle(), cfg, locus);
  const auto& bps = prof.breakpoints();
  const auto& arcs = prof.arc_values();
  IndexDecomposition out;
  out.theta = locus.theta;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const int jump = arcs[i].i_plus - arcs[(i + arcs.size() - 1) % arcs.size()].i_plus;
    const double pos = ccw_distance(start, bps[i]);
    if (pos > std::numbers::pi) continue;
    if (jump == 0) throw NumericError("index does not jump across a simple root");
    if (pos < w)
      (jump > 0 ? out.rho_plus : out.rho_minus) += 1;
    else
      (jump > 0 ? out.lambda_plus : out.lambda_minus) += 1;
  }
  out.predicted = out.rho_plus + out.lambda_minus + out.theta;
  out.measured = pencil_inertia(p, omega.radians(), cfg).i_plus;
  return out;
}

std::vector<int> half_circle_bound(const FiltrationReport& rep, int n, Angle eta) {
  const double a = eta.radians();
  const CircleSubset c1 = CircleSubset::arc(a, a + std::numbers::pi, true, true);
  const CircleSubset c2 = CircleSubset::arc(a + std::numbers::pi, a, true, true);
  std::vector<int> out(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    const CircleSubset& level = rep.level(n - k);
    out[k] = betti_circle(combine(level, c1, SetOp::intersect)).b0 +
             betti_circle(combine(level, c2, SetOp::intersect)).b0;
  }
  return out;
}

std::vector<int> half_circle_bound(const QuadraticPencil& p, const PlanarCone& k, Angle eta,
                                   const ToleranceConfig& cfg) {
  if (pencil_inertia(p, eta.radians(), cfg).i_zero != 0) throw InvalidInput("eta lies on the degenerate locus");
  return half_circle_bound(analyze(p, k, cfg), p.n(), eta);
}

}  // namespace qtopo
