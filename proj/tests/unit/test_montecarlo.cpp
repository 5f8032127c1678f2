#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orbconv/error.hpp"
#include "orbconv/montecarlo.hpp"

using namespace orbconv;

namespace {

SpaceDescriptor hyperbolic(int n) { return build_space("real-hyperbolic", std::vector<int>{n}); }

}  // namespace

TEST_CASE("sampling is deterministic and thread-count independent") {
  const auto conv = OrbitalConvolution::make(hyperbolic(3), {1.0, 0.5, 2.0});
  const auto a = sample_convolution(conv, 140000, 5, 1);
  const auto b = sample_convolution(conv, 140000, 5, 4);
  const auto c = sample_convolution(conv, 140000, 6, 1);
  CHECK(a == b);
  CHECK(a != c);
  for (double s : a) {
    CHECK(s >= 0.0);
    CHECK(s <= 3.5 + 1e-9);
  }
}

TEST_CASE("two generators stay in the triangle band") {
  for (int n : {2, 4}) {
    const auto s = sample_convolution(OrbitalConvolution::make(hyperbolic(n), {2.0, 0.5}), 20000, 1);
    CHECK(oracle::triangle_band(s, 2.0, 0.5));
  }
}

TEST_CASE("a single generator samples exactly t") {
  const auto s = sample_convolution(OrbitalConvolution::make(hyperbolic(2), {1.0}), 1000, 7);
  for (double v : s) CHECK(v == 1.0);
}

TEST_CASE("empirical transform on H^3 matches the closed form") {
  // nu_a * nu_b on H^3 has transform phi(a) phi(b) with phi = sin(l t)/(l sinh t).
  const auto h3 = hyperbolic(3);
  const auto s = sample_convolution(OrbitalConvolution::make(h3, {0.8, 1.3}), 50000, 2);
  for (double l : {0.5, 2.0}) {
    const auto e = empirical_transform(h3, s, l);
    const double exact = std::sin(l * 0.8) / (l * std::sinh(0.8)) * std::sin(l * 1.3) / (l * std::sinh(1.3));
    CHECK(std::abs(e.mean.real() - exact) < 4.0 * e.standard_error);
  }
}

TEST_CASE("two-step convolution on H^3 has the hyperbolic-law density") {
  // For r = 2 on H^3 the radial law of k_0 a_1 k_1 a_2 is cosh T = cosh a cosh b + sinh a sinh b x
  // with x uniform on [-1, 1].
  const double a = 0.9, b = 0.6;
  const auto s = sample_convolution(OrbitalConvolution::make(hyperbolic(3), {a, b}), 40000, 17);
  auto cdf = [&](double t) {
    const double x = (std::cosh(t) - std::cosh(a) * std::cosh(b)) / (std::sinh(a) * std::sinh(b));
    return std::clamp(0.5 * (x + 1.0), 0.0, 1.0);
  };
  const double d = oracle::ks_statistic(s, cdf);
  CHECK(oracle::kolmogorov_survival(d * std::sqrt(40000.0)) > 1e-3);
}

TEST_CASE("histogram invariants") {
  const auto h2 = hyperbolic(2);
  const std::vector<double> s{0.1, 0.2, 0.2, 0.95, 1.0};
  const auto h = histogram(h2, s, 10, 0.0, 1.0);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == 5);
  CHECK(h.counts.back() == 2);
  CHECK(h.centers()[0] == doctest::Approx(0.05));
  CHECK(h.density_estimate[2] == doctest::Approx(2.0 / (5 * 0.1 * std::sinh(0.25))));
  CHECK_THROWS_AS(histogram(h2, s, 5, 0.0, 1.0), Error);
  CHECK_THROWS_AS(histogram(h2, s, 10, 0.0, 0.5), Error);
  CHECK_THROWS_AS(histogram(h2, std::vector<double>{}, 10, 0.0, 1.0), Error);
}

TEST_CASE("compare against an exact profile") {
  // Uniform radial law on [0, 1] w.r.t. dt has density 1/J on H^2.
  const auto h2 = hyperbolic(2);
  DensityProfile prof;
  for (int i = 0; i <= 2000; ++i) {
    const double t = i / 2000.0;
    prof.grid.push_back(t);
    const double j = radial_jacobian(h2, t);
    prof.jacobian.push_back(j);
    prof.values.push_back(t > 0 ? 1.0 / j : 0.0);
  }
  prof.values[0] = prof.values[1];
  std::vector<double> s;
  for (int i = 0; i < 10000; ++i) s.push_back((i + 0.5) / 10000.0);
  const auto cmp = compare(histogram(h2, s, 20, 0.0, 1.0), prof);
  CHECK(cmp.l1 < 1e-3);
  CHECK(cmp.ks < 1e-3);
  const auto far = histogram(h2, std::vector<double>{2.0, 3.0}, 10, 2.0, 3.0);
  CHECK_THROWS_AS(compare(far, prof), Error);
}
