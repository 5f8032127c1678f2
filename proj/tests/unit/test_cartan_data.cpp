#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "orbconv/cartan_data.hpp"
#include "orbconv/error.hpp"

using namespace orbconv;

namespace {

SpaceDescriptor space(std::string_view family, std::initializer_list<int> p) {
  const std::vector<int> v(p);
  return build_space(family, v);
}

// Dimension of the eigenvalue-1 eigenspace of ad(H) on so(n,1), H the unit
// boost in the (e_1, e_{n+1}) plane. This is m_alpha.
int boost_eigenspace(int n) {
  const int m = n + 1;
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m, m);
      x(i, j) = 1.0;
      x(j, i) = -1.0;
      basis.push_back(x);
    }
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
    b(i, n) = 1.0;
    b(n, i) = 1.0;
    basis.push_back(b);
  }
  const Eigen::MatrixXd& h = basis[static_cast<std::size_t>(n - 1)];  // boost on e_1
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd flat(m * m, d);
  for (int k = 0; k < d; ++k) flat.col(k) = Eigen::Map<const Eigen::VectorXd>(basis[k].data(), m * m);
  Eigen::MatrixXd ad(d, d);
  for (int k = 0; k < d; ++k) {
    const Eigen::MatrixXd c = h * basis[k] - basis[k] * h;
    ad.col(k) = flat.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(c.data(), m * m));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(ad);
  int count = 0;
  for (int k = 0; k < d; ++k) {
    if (std::abs(es.eigenvalues()[k] - 1.0) < 1e-9) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("real hyperbolic structure data") {
  for (int n = 2; n <= 7; ++n) {
    const auto s = space("real-hyperbolic", {n});
    CHECK(s.rank == 1);
    CHECK(s.dim == n);
    CHECK(s.weyl_order == 2);
    CHECK(s.multiplicity_alpha() == n - 1);
    CHECK(s.multiplicity_2alpha() == 0);
    CHECK(rho(s).coords[0] == doctest::Approx((n - 1) / 2.0));
  }
}

TEST_CASE("root multiplicity equals the ad(H) eigenspace dimension on so(n,1)") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(space("real-hyperbolic", {n}).multiplicity_alpha() == boost_eigenspace(n));
  }
}

TEST_CASE("complex hyperbolic carries the 2 alpha root") {
  const auto s = space("complex-hyperbolic", {3});
  CHECK(s.dim == 6);
  CHECK(s.multiplicity_alpha() == 4);
  CHECK(s.multiplicity_2alpha() == 1);
  CHECK(rho(s).coords[0] == doctest::Approx(3.0));
  const auto line = space("complex-hyperbolic", {1});
  CHECK(line.dim == 2);
  CHECK(line.multiplicity_alpha() == 0);
  CHECK(line.multiplicity_2alpha() == 1);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(space("real-hyperbolic", {1}), Error);
  CHECK_THROWS_AS(space("complex-hyperbolic", {0}), Error);
  CHECK_THROWS_AS(space("generic-rank-one", {0, 0}), Error);
  CHECK_THROWS_AS(space("no-such-family", {2}), Error);
  CHECK_THROWS_AS(space("real-hyperbolic", {2, 3}), Error);
}

TEST_CASE("descriptor JSON round trip") {
  const auto s = space("generic-rank-one", {4, 3});
  const nlohmann::json j = s;
  const auto back = j.get<SpaceDescriptor>();
  CHECK(back.name == s.name);
  CHECK(back.dim == s.dim);
  CHECK(back.multiplicity_alpha() == 4);
  CHECK(back.multiplicity_2alpha() == 3);
  auto broken = j;
  broken["dim"] = 99;
  CHECK_THROWS_AS(broken.get<SpaceDescriptor>(), Error);
}

TEST_CASE("generic higher-rank descriptor") {
  // SL(3,R)/SO(3): A2 roots, multiplicity 1, dim 5, |W| = 6.
  const double h = std::sqrt(3.0) / 2.0;
  const auto s = make_generic_space("sl3", 2, {{{1.0, 0.0}, 1}, {{-0.5, h}, 1}, {{0.5, h}, 1}}, 6);
  CHECK(s.dim == 5);
  const auto r = rho(s).coords;
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(r[1] == doctest::Approx(h));
  const RadialPoint p{{0.3, 0.4}};
  double expected = 1.0;
  for (const auto& a : s.positive_roots) expected *= std::sinh(pairing(a.vector, p.coords));
  CHECK(radial_jacobian(s, p) == doctest::Approx(expected));
}

TEST_CASE("radial Jacobian in rank one") {
  const auto s = space("complex-hyperbolic", {2});
  for (double t : {0.1, 1.0, 3.0}) {
    CHECK(radial_jacobian(s, t) == doctest::Approx(std::pow(std::sinh(t), 2) * std::sinh(2 * t)));
  }
  CHECK(radial_jacobian(space("real-hyperbolic", {2}), 0.0) == 0.0);
}

TEST_CASE("separation constant: rank one is |alpha|") {
  for (double a : {1.0, 0.25, 3.5, -2.0}) {
    const std::vector<RestrictedRoot> roots{{{a}, 1}};
    CHECK(root_separation_constant(roots) == std::abs(a));
  }
}

TEST_CASE("separation constant: rank two against the angular grid") {
  const double pi = std::acos(-1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi);
  std::uniform_real_distribution<double> len(0.3, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RestrictedRoot> roots;
    std::vector<double> xy;
    const int count = 2 + trial % 3;
    for (int i = 0; i < count; ++i) {
      const double a = ang(rng), l = len(rng);
      roots.push_back({{l * std::cos(a), l * std::sin(a)}, 1});
      xy.push_back(l * std::cos(a));
      xy.push_back(l * std::sin(a));
    }
    CHECK(root_separation_constant(roots) == doctest::Approx(oracle::separation_grid(xy, 200000)).epsilon(1e-4));
  }
  const std::vector<RestrictedRoot> pair{{{1.0, 0.0}, 1}, {{std::cos(2 * pi / 3), std::sin(2 * pi / 3)}, 1}};
  CHECK(root_separation_constant(pair) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("separation constant: orthonormal basis in rank three") {
  const std::vector<RestrictedRoot> roots{{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}};
  CHECK(root_separation_constant(roots) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-3));
}

TEST_CASE("separation constant requires a spanning set") {
  const std::vector<RestrictedRoot> roots{{{1.0, 0.0}, 1}, {{2.0, 0.0}, 1}};
  CHECK_THROWS_AS(root_separation_constant(roots), Error);
}
