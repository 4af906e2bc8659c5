#include "qtopo/fixtures.hpp"

#include "qtopo/applications.hpp"

namespace qtopo::fixtures {
namespace {

QuadraticPencil diagonal(std::initializer_list<double> a, std::initializer_list<double> b) {
  const Eigen::VectorXd d0 = Eigen::Map<const Eigen::VectorXd>(a.begin(), static_cast<Eigen::Index>(a.size()));
  const Eigen::VectorXd d1 = Eigen::Map<const Eigen::VectorXd>(b.begin(), static_cast<Eigen::Index>(b.size()));
  return {Eigen::MatrixXd(d0.asDiagonal()), Eigen::MatrixXd(d1.asDiagonal())};
}

}  // namespace

QuadraticPencil bouquet() {
  Eigen::MatrixXd q0 = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(4, 4);
  q0(1, 1) = 1.0;
  q0(0, 2) = q0(2, 0) = 1.0;
  q0(3, 3) = -1.0;
  q1(1, 2) = q1(2, 1) = 0.5;
  return {q0, q1};
}

QuadraticPencil four_lines() { return diagonal({1, 0, -1, 0}, {0, 1, 0, -1}); }

QuadraticPencil complex_squaring() {
  Eigen::MatrixXd q0(2, 2), q1(2, 2);
  q0 << 1, 0, 0, -1;
  q1 << 0, 1, 1, 0;
  return {q0, q1};
}

QuadraticPencil doubled_squaring() {
  const QuadraticPencil one = complex_squaring();
  Eigen::MatrixXd q0 = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(4, 4);
  q0.topLeftCorner(2, 2) = q0.bottomRightCorner(2, 2) = one.q0();
  q1.topLeftCorner(2, 2) = q1.bottomRightCorner(2, 2) = one.q1();
  return {q0, q1};
}

QuadraticPencil identity(int n) {
  return {Eigen::MatrixXd::Identity(n + 1, n + 1), Eigen::MatrixXd::Zero(n + 1, n + 1)};
}

QuadraticPencil point_pair() { return diagonal({0, 1, 0, 0}, {0, 0, 1, 1}); }

QuadraticPencil rank_one() { return diagonal({1, 0}, {1, 0}); }

std::optional<QuadraticPencil> by_name(const std::string& name, int n) {
  if (name == "bouquet") return bouquet();
  if (name == "four-lines") return four_lines();
  if (name == "complex-squaring") return complex_squaring();
  if (name == "doubled-squaring") return doubled_squaring();
  if (name == "identity") return identity(n);
  if (name == "point-pair") return point_pair();
  if (name == "rank-one") return rank_one();
  if (name == "extremal") return extremal_family(n);
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"bouquet", "four-lines", "complex-squaring", "doubled-squaring", "identity", "point-pair", "rank-one", "extremal"};
}

QuadraticPencil random_pencil(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto draw = [&]() {
    Eigen::MatrixXd m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    return m;
  };
  Eigen::MatrixXd q0 = draw();
  Eigen::MatrixXd q1 = draw();
  return {q0, q1};
}

}  // namespace qtopo::fixtures
