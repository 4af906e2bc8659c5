#include "qtopo/roots.hpp"

#include "qtopo/circle.hpp"
#include "qtopo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qtopo {
namespace {

constexpr double kClusterFactor = 10.0;
constexpr double kStripTol = 1e-12;
constexpr double kTaylorFactor = 10.0;

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Row/column scaling by powers of two, without permutations.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(a(j, i));
        r += abs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Coefficients carry absolute noise of order u * max|p_k| (they come from a
// DFT of sampled values). Bound on the j-th Taylor coefficient at modulus x
// under unit noise: max|p_k| * sum_k C(k, j) x^(k-j).
double abs_taylor_bound(std::span<const Complex> coeffs, double x, int j) {
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  const std::vector<Complex> mags(coeffs.size(), Complex{cmax, 0.0});
  return std::abs(taylor_coefficient(mags, Complex{x, 0.0}, j));
}

// An m-fold root at c of a polynomial within relative distance u of p:
// all lower Taylor coefficients at c must be at noise level.
bool is_multiple_root(std::span<const Complex> coeffs, Complex c, int m, double u) {
  for (int j = 0; j < m; ++j)
    if (std::abs(taylor_coefficient(coeffs, c, j)) > kTaylorFactor * u * abs_taylor_bound(coeffs, std::abs(c), j))
      return false;
  return true;
}

// Perturbation radius of an m-fold root at c under relative coefficient noise u.
double root_radius(std::span<const Complex> coeffs, Complex c, int m, double u) {
  const double am = std::abs(taylor_coefficient(coeffs, c, m));
  const double noise = u * abs_taylor_bound(coeffs, std::abs(c), 0);
  if (am == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(noise / am, 1.0 / m);
}

void split_cluster(std::span<const Complex> coeffs, std::vector<Complex> group, double u,
                   std::vector<RootCluster>& out) {
  const int m = static_cast<int>(group.size());
  Complex center{0.0, 0.0};
  for (const auto& z : group) center += z;
  center /= static_cast<double>(m);
  double spread = 0.0;
  for (const auto& z : group) spread = std::max(spread, std::abs(z - center));

  if (m == 1 || (spread <= kClusterFactor * root_radius(coeffs, center, m, u) &&
                 is_multiple_root(coeffs, center, m, u))) {
    out.push_back({center, m, spread});
    return;
  }

  // Divisive step: drop the longest edge of the minimum spanning tree.
  std::vector<int> parent(m, -1);
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(m, false);
  best[0] = 0.0;
  int cut = -1;
  double cut_len = -1.0;
  for (int step = 0; step < m; ++step) {
    int v = -1;
    for (int i = 0; i < m; ++i)
      if (!in_tree[i] && (v < 0 || best[i] < best[v])) v = i;
    in_tree[v] = true;
    if (parent[v] >= 0 && best[v] > cut_len) {
      cut_len = best[v];
      cut = v;
    }
    for (int i = 0; i < m; ++i) {
      const double d = std::abs(group[i] - group[v]);
      if (!in_tree[i] && d < best[i]) {
        best[i] = d;
        parent[i] = v;
      }
    }
  }
  // Vertices whose tree path to the root passes through `cut`.
  std::vector<int> side(m, -1);
  side[0] = 0;
  side[cut] = 1;
  const auto resolve = [&](auto&& self, int v) -> int {
    if (side[v] >= 0) return side[v];
    return side[v] = self(self, parent[v]);
  };
  std::vector<Complex> left, right;
  for (int i = 0; i < m; ++i) (resolve(resolve, i) == 0 ? left : right).push_back(group[i]);
  split_cluster(coeffs, std::move(left), u, out);
  split_cluster(coeffs, std::move(right), u, out);
}

}  // namespace

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree < 1) return {};
  if (coeffs.back() == Complex{0.0, 0.0}) throw NumericError("polynomial has a zero leading coefficient");
  if (degree == 1) return {-coeffs[0] / coeffs[1]};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  for (int k = 0; k < degree; ++k) companion(k, degree - 1) = -coeffs[k] / coeffs.back();
  balance(companion);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  if (es.info() != Eigen::Success) throw NumericError("companion eigen-solver failed to converge");
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

Complex taylor_coefficient(std::span<const Complex> coeffs, Complex c, int m) {
  // Repeated synthetic division by (w - c): the m-th remainder is the answer.
  std::vector<Complex> work(coeffs.begin(), coeffs.end());
  Complex remainder{0.0, 0.0};
  for (int pass = 0; pass <= m; ++pass) {
    const int top = static_cast<int>(work.size()) - 1;
    if (top < 0) return {0.0, 0.0};
    Complex acc = work[top];
    std::vector<Complex> quotient(top);
    for (int k = top - 1; k >= 0; --k) {
      quotient[k] = acc;
      acc = work[k] + acc * c;
    }
    remainder = acc;
    work = std::move(quotient);
  }
  return remainder;
}

std::vector<RootCluster> cluster_roots(std::span<const Complex> coeffs,
                                       std::span<const Complex> roots, double u) {
  std::vector<RootCluster> out;
  if (roots.empty()) return out;
  split_cluster(coeffs, {roots.begin(), roots.end()}, u, out);
  return out;
}

TrigRoots trig_roots(const std::function<double(double)>& f, int degree, bool homogeneous,
                     double u) {
  TrigRoots result;
  if (degree <= 0) return result;

  const int samples = homogeneous ? std::max(2 * (degree + 1), 8) : std::max(2 * (2 * degree + 1), 16);
  const double period = homogeneous ? std::numbers::pi : kTwoPi;
  std::vector<double> values(samples);
  for (int j = 0; j < samples; ++j) values[j] = f(period * j / samples);

  // Frequencies -degree..degree (step 2 when homogeneous) map to powers of
  // w = e^{2i theta} or z = e^{i theta}.
  const int step = homogeneous ? 2 : 1;
  const int terms = (2 * degree) / step + 1;
  std::vector<Complex> coeffs(terms);
  for (int m = 0; m < terms; ++m) {
    const int k = -degree + step * m;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < samples; ++j) acc += values[j] * std::polar(1.0, -k * period * j / samples);
    coeffs[m] = acc / static_cast<double>(samples);
  }

  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) throw NumericError("trigonometric polynomial vanishes identically");

  std::size_t lo = 0, hi = coeffs.size();
  while (lo < hi && std::abs(coeffs[lo]) <= kStripTol * cmax) ++lo;
  while (hi > lo && std::abs(coeffs[hi - 1]) <= kStripTol * cmax) --hi;
  result.degree = terms - 1;
  result.nonreal = static_cast<int>(lo + (coeffs.size() - hi));
  std::span<const Complex> poly(coeffs.data() + lo, hi - lo);

  const auto roots = polynomial_roots(poly);
  for (const auto& cl : cluster_roots(poly, roots, u)) {
    const double radius = root_radius(poly, cl.center, cl.multiplicity, u);
    const double tol = std::max(1e-8, 2.0 * (radius + cl.spread));
    if (std::abs(std::abs(cl.center) - 1.0) > tol) {
      result.nonreal += cl.multiplicity;
      continue;
    }
    double angle = std::arg(cl.center);
    if (homogeneous) {
      angle = 0.5 * normalize_angle(angle);
    } else {
      angle = normalize_angle(angle);
    }
    result.real.push_back({angle, cl.multiplicity});
  }
  std::sort(result.real.begin(), result.real.end(),
            [](const CircleRoot& a, const CircleRoot& b) { return a.angle < b.angle; });
  return result;
}

}  // namespace qtopo
