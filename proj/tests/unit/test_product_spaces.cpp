#include <doctest.h>

#include <cmath>
#include <vector>

#include "orbconv/error.hpp"
#include "orbconv/product_spaces.hpp"

using namespace orbconv;

namespace {

SpaceDescriptor hyperbolic(int n) { return build_space("real-hyperbolic", std::vector<int>{n}); }

}  // namespace

TEST_CASE("product density factors") {
  const auto space = ProductSpace::make({hyperbolic(2), hyperbolic(3)});
  CHECK(space.dim() == 5);
  CHECK(space.max_factor_dim() == 3);
  const auto pc = ProductConvolution::make(space, std::vector<std::vector<double>>(4, {1.0, 0.7}));
  const double at[2] = {1.2, 0.9};
  const double expected = density_at(pc.factor(0), 1.2) * density_at(pc.factor(1), 0.9);
  CHECK(product_density_at(pc, at) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(product_profile(pc, 801).mass == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("product L^2 verdict needs every factor") {
  const auto h2 = hyperbolic(2);
  const auto h3 = hyperbolic(3);
  const auto mixed = ProductConvolution::make(ProductSpace::make({h2, h3}),
                                              std::vector<std::vector<double>>(2, {1.0, 1.0}));
  const auto rep = product_l2_norm_sq(mixed);
  CHECK(rep.factors[0].verdict == Verdict::divergent);
  CHECK(rep.factors[1].verdict == Verdict::finite);
  CHECK(rep.verdict == Verdict::divergent);
  CHECK_FALSE(rep.value.has_value());
}

TEST_CASE("product regularity arithmetic") {
  for (int d2 : {2, 3, 4}) {
    for (int r = 1; r <= 7; ++r) {
      const auto pc = ProductConvolution::make(ProductSpace::make({hyperbolic(2), hyperbolic(d2)}),
                                               std::vector<std::vector<double>>(r, {1.0, 1.0}));
      const auto rep = product_regularity_report(pc);
      const int m = std::max(2, d2);
      CHECK(rep.max_dim == m);
      CHECK(rep.threshold_r == m + 1);
      CHECK(rep.l2_threshold_met == (r > m));
      CHECK(rep.absolute_continuity_met == (r >= m));
      CHECK(rep.ck_max == std::max(-1, r - m - 1));
    }
  }
}

TEST_CASE("construction and refusal messages") {
  const auto space = ProductSpace::make({hyperbolic(2), hyperbolic(3)});
  CHECK_THROWS_AS(ProductConvolution::make(space, {{1.0}}), Error);
  CHECK_THROWS_AS(ProductConvolution::make(space, {{1.0, -1.0}}), Error);
  CHECK_THROWS_AS(ProductSpace::make({}), Error);
  const auto pc = ProductConvolution::make(space, std::vector<std::vector<double>>(3, {1.0, 1.0}));
  const double at[2] = {1.0, 1.0};
  try {
    product_density_at(pc, at);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::below_threshold);
    CHECK(std::string(e.what()).find("factor 2") != std::string::npos);
  }
}
