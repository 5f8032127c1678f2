#pragma once

// Products X_1 x ... x X_s of rank-one spaces with componentwise orbital
// convolutions. Densities and L^2 norms factor over the components; the
// thresholds use the largest factor dimension.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbconv/transform.hpp"

namespace orbconv {

struct ProductSpace {
  std::vector<SpaceDescriptor> factors;

  static ProductSpace make(std::vector<SpaceDescriptor> factors);

  int s() const { return static_cast<int>(factors.size()); }
  int dim() const;
  int max_factor_dim() const;
};

struct ProductConvolution {
  ProductSpace space;
  // generators[i][j]: component j of the i-th generator a_i.
  std::vector<std::vector<double>> generators;

  static ProductConvolution make(ProductSpace space, std::vector<std::vector<double>> generators);

  int r() const { return static_cast<int>(generators.size()); }
  OrbitalConvolution factor(int j) const;
};

// Product of the factor densities at (t_1, ..., t_s). Refuses with
// below_threshold, naming the factor, when r < dim X_j + 1.
double product_density_at(const ProductConvolution& pconv, std::span<const double> t,
                          const SpectralConfig& config = SpectralConfig::density_defaults());

struct ProductProfile {
  std::vector<DensityProfile> factors;
  double mass = 0.0;  // product of factor masses
};

ProductProfile product_profile(const ProductConvolution& pconv, std::size_t points = 2001,
                               const SpectralConfig& config = SpectralConfig::density_defaults());

struct ProductL2Report {
  std::vector<ConvergenceReport> factors;
  Verdict verdict = Verdict::marginal;  // finite only if every factor is
  std::optional<double> value;          // product of factor values
};

ProductL2Report product_l2_norm_sq(const ProductConvolution& pconv,
                                   const SpectralConfig& config = SpectralConfig::l2_defaults());

struct ProductRegularityReport {
  bool l2_threshold_met = false;           // r >= max dim + 1
  int ck_max = -1;                         // max(-1, r - max dim - 1)
  int max_dim = 0;
  int threshold_r = 0;                     // max dim + 1
  bool absolute_continuity_met = false;    // r >= max dim
};

ProductRegularityReport product_regularity_report(const ProductConvolution& pconv);

}  // namespace orbconv
