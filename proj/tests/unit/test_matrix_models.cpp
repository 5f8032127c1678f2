#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orbconv/error.hpp"
#include "orbconv/matrix_models.hpp"

using namespace orbconv;

namespace {

GroupElement random_element(const GroupModel& model, Rng& rng) {
  std::uniform_real_distribution<double> t(0.0, 4.0);
  return sample_K(model, rng) * exp_radial(model, t(rng)) * sample_K(model, rng) * exp_radial(model, t(rng)) *
         sample_K(model, rng);
}

std::vector<GroupModel> models() { return {GroupModel::sl2(), GroupModel::so_n1(2), GroupModel::so_n1(3),
                                           GroupModel::so_n1(5)}; }

}  // namespace

TEST_CASE("Iwasawa reconstruction on 1000 random elements") {
  for (const auto& model : models()) {
    Rng rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto g = random_element(model, rng);
      const auto p = iwasawa(g);
      CHECK(is_compact(p.k));
      const Eigen::MatrixXd back = p.k.matrix * exp_radial(model, p.H).matrix * p.n;
      // Rounding in the factors scales with the condition number |g|^2.
      const double cond = g.matrix.squaredNorm();
      worst = std::max(worst, (back - g.matrix).norm() / g.matrix.norm() / cond);
      // n is unipotent: (n - 1) is nilpotent.
      const Eigen::MatrixXd u = p.n - Eigen::MatrixXd::Identity(p.n.rows(), p.n.cols());
      Eigen::MatrixXd pw = u;
      for (int k = 1; k < p.n.rows(); ++k) pw = pw * u;
      CHECK(pw.norm() < 1e-6 * std::max(1.0, std::pow(u.norm(), static_cast<double>(p.n.rows()))));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Cartan reconstruction on 1000 random elements") {
  for (const auto& model : models()) {
    Rng rng(12);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto g = random_element(model, rng);
      const auto p = cartan(g);
      CHECK(p.t >= 0.0);
      CHECK(is_compact(p.k1));
      CHECK(is_compact(p.k2));
      const Eigen::MatrixXd back = p.k1.matrix * exp_radial(model, p.t).matrix * p.k2.matrix;
      // Rounding in the factors scales with the condition number |g|^2.
      const double cond = g.matrix.squaredNorm();
      worst = std::max(worst, (back - g.matrix).norm() / g.matrix.norm() / cond);
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("radial part of k a_t k' is t") {
  for (const auto& model : models()) {
    Rng rng(3);
    for (double t : {0.0, 1e-8, 0.5, 3.0, 12.0}) {
      const auto g = sample_K(model, rng) * exp_radial(model, t) * sample_K(model, rng);
      CHECK(cartan_radial(g) == doctest::Approx(t).epsilon(1e-10));
    }
  }
}

TEST_CASE("Iwasawa projection of a_t k depends on the polar cosine only") {
  for (const auto& model : models()) {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
      const auto k = sample_K(model, rng);
      const double t = 0.1 + 0.1 * i;
      const double h = iwasawa_H(exp_radial(model, t) * k);
      CHECK(h == doctest::Approx(iwasawa_H_polar(t, polar_cosine(model, k))).epsilon(1e-11));
    }
  }
}

TEST_CASE("Haar samples on SO(2) pass a KS test") {
  Rng rng(99);
  const auto model = GroupModel::sl2();
  const double pi = std::acos(-1.0);
  std::vector<double> angles;
  for (int i = 0; i < 20000; ++i) {
    const auto k = sample_K(model, rng);
    angles.push_back(std::atan2(k.matrix(1, 0), k.matrix(0, 0)));
  }
  const double d = oracle::ks_statistic(angles, [&](double a) { return (a + pi) / (2 * pi); });
  CHECK(oracle::kolmogorov_survival(d * std::sqrt(20000.0)) > 1e-3);
}

TEST_CASE("Haar samples on SO(n): first column uniform on the sphere") {
  for (int n : {3, 4}) {
    Rng rng(7);
    const auto model = GroupModel::so_n1(n);
    std::vector<double> x;
    for (int i = 0; i < 20000; ++i) x.push_back(polar_cosine(model, sample_K(model, rng)));
    // n = 3: x uniform on [-1, 1]; n = 4: density (2/pi) sqrt(1 - x^2).
    auto cdf = [n](double v) {
      if (n == 3) return 0.5 * (v + 1.0);
      return 0.5 + (v * std::sqrt(1 - v * v) + std::asin(v)) / std::acos(-1.0);
    };
    const double d = oracle::ks_statistic(x, cdf);
    CHECK(oracle::kolmogorov_survival(d * std::sqrt(20000.0)) > 1e-3);
  }
}

TEST_CASE("radial part of a product obeys the triangle inequality") {
  for (const auto& model : models()) {
    Rng rng(21);
    std::vector<double> samples;
    const std::vector<double> t{1.2, 0.7};
    for (int i = 0; i < 2000; ++i) {
      const std::vector<CompactElement> ks{sample_K(model, rng), sample_K(model, rng), sample_K(model, rng)};
      samples.push_back(radial_of_product(model, t, ks));
    }
    CHECK(oracle::triangle_band(samples, 1.2, 0.7));
  }
}

TEST_CASE("long products stay on the group") {
  const auto model = GroupModel::so_n1(3);
  Rng rng(1);
  std::vector<double> t(40, 2.0);
  std::vector<CompactElement> ks;
  for (int i = 0; i < 41; ++i) ks.push_back(sample_K(model, rng));
  const double r = radial_of_product(model, t, ks);
  CHECK(r <= 80.0 + 1e-9);
  CHECK(r > 0.0);
}

TEST_CASE("realization checks") {
  const auto model = GroupModel::so_n1(3);
  auto g = exp_radial(model, 1.0);
  CHECK_NOTHROW(check_realization(g));
  g.matrix(0, 1) += 1e-3;
  CHECK_THROWS_AS(check_realization(g), Error);
  CHECK(has_matrix_realization(build_space("real-hyperbolic", std::vector<int>{4})));
  CHECK_FALSE(has_matrix_realization(build_space("complex-hyperbolic", std::vector<int>{2})));
  const auto inv = inverse(exp_radial(model, 0.7)) * exp_radial(model, 0.7);
  CHECK((inv.matrix - identity(model).matrix).norm() < 1e-13);
}
