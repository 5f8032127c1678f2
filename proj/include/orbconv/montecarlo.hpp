#pragma once

// Direct sampling of nu_{a_1} * ... * nu_{a_r}: radial parts of
// k_0 a_1 k_1 ... a_r k_r with k_i independent Haar draws on K, plus
// histograms and comparisons against an analytic profile.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orbconv/transform.hpp"

namespace orbconv {

// Samples are produced in chunks of this size; chunk c draws from a
// generator seeded with derive_seed(seed, c).
inline constexpr std::size_t kSampleChunk = 65536;

// Throws invariant_violation if any sample exceeds the support radius.
std::vector<double> sample_convolution(const OrbitalConvolution& conv, std::size_t n, std::uint64_t seed,
                                       unsigned threads = 0);

struct RadialHistogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::size_t n_samples = 0;
  std::vector<double> jacobian;          // J at bin centers
  std::vector<double> density_estimate;  // counts / (n * width * J(center))

  std::vector<double> centers() const;
};

// Bins on [lo, hi]; the top edge is closed.
RadialHistogram histogram(const SpaceDescriptor& space, std::span<const double> samples, int bins, double lo,
                          double hi);
// Range [0, max sample] (or [0, 1] if every sample is 0).
RadialHistogram histogram(const SpaceDescriptor& space, std::span<const double> samples, int bins);

struct Comparison {
  double l1 = 0.0;   // sum over bins |count / n - analytic bin probability|
  double sup = 0.0;  // max over bins |estimate - analytic bin average|
  double ks = 0.0;   // max over bin edges of the CDF difference
};

// The analytic CDF is the running integral of rho J on the profile grid.
Comparison compare(const RadialHistogram& hist, const DensityProfile& profile);

struct EmpiricalTransform {
  double lambda = 0.0;
  std::complex<double> mean;
  double standard_error = 0.0;  // of the real part
};

// Sample mean of phi_lambda(g^{-1}) = phi_lambda(a_t) over radial samples.
EmpiricalTransform empirical_transform(const SpaceDescriptor& space, std::span<const double> samples, double lambda,
                                       const QuadratureConfig& quad = {}, unsigned threads = 0);

}  // namespace orbconv
