#include "orbconv/product_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbconv/error.hpp"

namespace orbconv {

namespace {

[[noreturn]] void rethrow_for_factor(const Error& e, int j, const SpaceDescriptor& space) {
  fail(e.kind(), "factor " + std::to_string(j + 1) + " (" + space.name + "): " + e.what());
}

}  // namespace

ProductSpace ProductSpace::make(std::vector<SpaceDescriptor> factors) {
  require(!factors.empty(), "a product space needs at least one factor");
  for (const auto& f : factors) {
    validate(f);
    if (!f.is_rank_one()) fail(ErrorKind::unsupported, "product factors must be rank one (got '" + f.name + "')");
  }
  return {std::move(factors)};
}

int ProductSpace::dim() const {
  int d = 0;
  for (const auto& f : factors) d += f.dim;
  return d;
}

int ProductSpace::max_factor_dim() const {
  int d = 0;
  for (const auto& f : factors) d = std::max(d, f.dim);
  return d;
}

ProductConvolution ProductConvolution::make(ProductSpace space, std::vector<std::vector<double>> generators) {
  require(!generators.empty(), "a product convolution needs at least one generator");
  for (const auto& a : generators) {
    require(static_cast<int>(a.size()) == space.s(), "each generator needs one component per factor (" +
                                                          std::to_string(space.s()) + ")");
    for (double t : a) require(std::isfinite(t) && t > 0.0, "generator components must satisfy t > 0");
  }
  return {std::move(space), std::move(generators)};
}

OrbitalConvolution ProductConvolution::factor(int j) const {
  require(j >= 0 && j < space.s(), "factor index out of range");
  std::vector<double> t;
  t.reserve(generators.size());
  for (const auto& a : generators) t.push_back(a[static_cast<std::size_t>(j)]);
  return OrbitalConvolution::make(space.factors[static_cast<std::size_t>(j)], std::move(t));
}

double product_density_at(const ProductConvolution& pconv, std::span<const double> t, const SpectralConfig& config) {
  require(static_cast<int>(t.size()) == pconv.space.s(), "point needs one radial coordinate per factor");
  double value = 1.0;
  // Check every factor's threshold before any quadrature runs.
  for (int j = 0; j < pconv.space.s(); ++j) {
    const auto& f = pconv.space.factors[static_cast<std::size_t>(j)];
    if (pconv.r() < f.dim + 1) {
      fail(ErrorKind::below_threshold, "factor " + std::to_string(j + 1) + " (" + f.name + ", dim " +
                                           std::to_string(f.dim) + ") needs r >= " + std::to_string(f.dim + 1) +
                                           ", got r = " + std::to_string(pconv.r()));
    }
  }
  for (int j = 0; j < pconv.space.s(); ++j) {
    try {
      value *= density_at(pconv.factor(j), t[static_cast<std::size_t>(j)], config);
    } catch (const Error& e) {
      rethrow_for_factor(e, j, pconv.space.factors[static_cast<std::size_t>(j)]);
    }
  }
  return value;
}

ProductProfile product_profile(const ProductConvolution& pconv, std::size_t points, const SpectralConfig& config) {
  ProductProfile out;
  out.mass = 1.0;
  for (int j = 0; j < pconv.space.s(); ++j) {
    try {
      DensityEvaluator ev(pconv.factor(j), config, 0);
      out.factors.push_back(ev.profile(ev.default_grid(points)));
    } catch (const Error& e) {
      rethrow_for_factor(e, j, pconv.space.factors[static_cast<std::size_t>(j)]);
    }
    out.mass *= out.factors.back().mass;
  }
  return out;
}

ProductL2Report product_l2_norm_sq(const ProductConvolution& pconv, const SpectralConfig& config) {
  ProductL2Report out;
  double value = 1.0;
  bool all_finite = true;
  bool any_divergent = false;
  for (int j = 0; j < pconv.space.s(); ++j) {
    out.factors.push_back(l2_norm_sq(pconv.factor(j), config));
    const auto& rep = out.factors.back();
    if (rep.verdict == Verdict::finite) {
      value *= *rep.value;
    } else {
      all_finite = false;
      if (rep.verdict == Verdict::divergent) any_divergent = true;
    }
  }
  if (all_finite) {
    out.verdict = Verdict::finite;
    out.value = value;
  } else {
    out.verdict = any_divergent ? Verdict::divergent : Verdict::marginal;
  }
  return out;
}

ProductRegularityReport product_regularity_report(const ProductConvolution& pconv) {
  ProductRegularityReport rep;
  rep.max_dim = pconv.space.max_factor_dim();
  rep.threshold_r = rep.max_dim + 1;
  rep.l2_threshold_met = pconv.r() >= rep.max_dim + 1;
  rep.ck_max = std::max(-1, pconv.r() - rep.max_dim - 1);
  rep.absolute_continuity_met = pconv.r() >= rep.max_dim;
  return rep;
}

}  // namespace orbconv
