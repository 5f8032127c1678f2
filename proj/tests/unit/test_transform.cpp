#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orbconv/error.hpp"
#include "orbconv/numerics.hpp"
#include "orbconv/transform.hpp"

using namespace orbconv;

namespace {

SpaceDescriptor hyperbolic(int n) { return build_space("real-hyperbolic", std::vector<int>{n}); }

}  // namespace

TEST_CASE("transform is the product of spherical functions") {
  const auto h2 = hyperbolic(2);
  const auto conv = OrbitalConvolution::make(h2, {0.4, 1.1, 2.0});
  for (double lambda : {0.0, 1.5, 7.0}) {
    const double expected = oracle::conical_function(lambda, 0.4) * oracle::conical_function(lambda, 1.1) *
                            oracle::conical_function(lambda, 2.0);
    CHECK(std::abs(transform_of_convolution(conv, lambda) - expected) < 1e-9);
  }
  const std::vector<double> with_zero{0.0, 1.1};
  CHECK(std::abs(transform_of_generators(h2, with_zero, 2.0) - oracle::conical_function(2.0, 1.1)) < 1e-9);
}

TEST_CASE("convolution construction") {
  CHECK_THROWS_AS(OrbitalConvolution::make(hyperbolic(2), {1.0, 0.0}), Error);
  CHECK_THROWS_AS(OrbitalConvolution::make(hyperbolic(2), {}), Error);
  const double h = std::sqrt(3.0) / 2.0;
  const auto sl3 = make_generic_space("sl3", 2, {{{1.0, 0.0}, 1}, {{-0.5, h}, 1}, {{0.5, h}, 1}}, 6);
  try {
    OrbitalConvolution::make(sl3, {1.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported);
  }
  CHECK(OrbitalConvolution::make(hyperbolic(2), {1.0, 2.5}).support_radius() == doctest::Approx(3.5));
}

TEST_CASE("L^2 tail exponents on H^2 and H^3") {
  // |phi|^2 ~ lambda^{1-n} and w ~ lambda^{n-1}: exponent (n - 1)(1 - r).
  for (int n : {2, 3}) {
    for (int r : {2, 3, 4}) {
      const auto rep = l2_norm_sq(OrbitalConvolution::make(hyperbolic(n), std::vector<double>(r, 1.0)));
      CHECK(rep.tail_exponent == doctest::Approx((n - 1) * (1.0 - r)).epsilon(0.03));
      const bool finite = (n - 1) * (1.0 - r) < -1.1;
      CHECK((rep.verdict == Verdict::finite) == finite);
      CHECK(rep.value.has_value() == finite);
      if (finite) CHECK(*rep.value >= rep.truncated_value);
      CHECK(rep.threshold_r == n + 1);
    }
  }
}

TEST_CASE("L^2 value is stable under refinement") {
  const auto conv = OrbitalConvolution::make(hyperbolic(2), {1.0, 1.0, 1.0, 1.0});
  auto coarse = SpectralConfig::l2_defaults();
  coarse.lambda_max = 500.0;
  coarse.lambda_points = 5001;
  const double a = *l2_norm_sq(conv).value;
  const double b = *l2_norm_sq(conv, coarse).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-4));
}

TEST_CASE("density: mass, fast path and support") {
  const auto conv = OrbitalConvolution::make(hyperbolic(3), {1.0, 0.8, 1.2, 0.9});
  DensityEvaluator ev(conv);
  const auto grid = ev.default_grid(1201);
  const auto prof = ev.profile(grid);
  CHECK(prof.mass == doctest::Approx(1.0).epsilon(1e-3));
  for (double t : {0.0, 0.3, 1.7, 2.9}) {
    const std::vector<double> one{t};
    CHECK(ev.fast_values(one)[0] == doctest::Approx(ev.value(t)).epsilon(1e-9));
  }
  double peak = 0.0;
  for (double v : prof.values) peak = std::max(peak, v);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > conv.support_radius() + ev.leakage_width()) CHECK(std::abs(prof.values[i]) < 1e-4 * peak);
  }
}

TEST_CASE("density derivatives against finite differences") {
  const auto conv = OrbitalConvolution::make(hyperbolic(2), {1.0, 1.0, 1.0, 1.0, 1.0});
  DensityEvaluator ev(conv, SpectralConfig::density_defaults(), 2);
  const double h = 1e-3;
  for (double t : {0.6, 1.4}) {
    const double d2 = ev.derivative(t, 2);
    const double fd2 = (ev.value(t + h) - 2 * ev.value(t) + ev.value(t - h)) / (h * h);
    CHECK(d2 == doctest::Approx(fd2).epsilon(1e-3));
    const std::vector<double> one{t};
    CHECK(ev.fast_values(one, 1)[0] == doctest::Approx(ev.derivative(t, 1)).epsilon(1e-8));
  }
  CHECK(std::abs(ev.derivative(0.0, 1)) < 1e-9);
  CHECK_THROWS_AS(ev.derivative(1.0, 3), Error);
  CHECK_THROWS_AS(ev.derivative(0.0, 2), Error);
}

TEST_CASE("threshold refusals") {
  try {
    density_at(OrbitalConvolution::make(hyperbolic(3), {1.0, 1.0, 1.0}), 1.0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::below_threshold);
  }
  try {
    density_derivative(OrbitalConvolution::make(hyperbolic(2), {1.0, 1.0, 1.0}), 1.0, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::below_threshold);
    CHECK(std::string(e.what()).find("C^1") != std::string::npos);
  }
}

TEST_CASE("regularity report arithmetic") {
  for (int n : {2, 3, 5}) {
    for (int r = 1; r <= 9; ++r) {
      const auto rep = regularity_report(OrbitalConvolution::make(hyperbolic(n), std::vector<double>(r, 1.0)));
      CHECK(rep.threshold_r == n + 1);
      CHECK(rep.l2_threshold_met == (r > n));
      CHECK(rep.ck_max == (r > n ? r - n - 1 : -1));
    }
  }
}

TEST_CASE("Plancherel identity at r = 5") {
  const auto conv = OrbitalConvolution::make(hyperbolic(2), {1.0, 1.0, 1.0, 1.0, 1.0});
  DensityEvaluator ev(conv);
  const double real = real_space_l2(ev.profile(ev.default_grid(3001)));
  CHECK(real == doctest::Approx(*l2_norm_sq(conv).value).epsilon(1e-3));
}
