#pragma once

// Spectral side of an orbital convolution nu_{a_1} * ... * nu_{a_r} on a
// rank-one space: its spherical transform prod_i phi_lambda(a_i), the
// Plancherel L^2 norm with a fitted tail, the inversion-formula density and
// its radial derivatives, and the regularity thresholds r >= n + k + 1.

#include <complex>
#include <cstddef>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbconv/cartan_data.hpp"
#include "orbconv/spherical.hpp"

namespace orbconv {

struct OrbitalConvolution {
  SpaceDescriptor space;
  std::vector<double> generators;  // t_1..t_r, each > 0

  // Validates rank one and t_i > 0.
  static OrbitalConvolution make(SpaceDescriptor space, std::vector<double> generators);

  int r() const { return static_cast<int>(generators.size()); }
  double support_radius() const;  // sum of t_i
};

// Lambda grid lambda_j = j * lambda_max / (lambda_points - 1).
struct SpectralConfig {
  double lambda_max = 1000.0;
  std::size_t lambda_points = 10001;
  // Heat-kernel window exp(-s (lambda^2 + rho^2)) for densities; negative
  // selects s = 30 / lambda_max^2.
  double heat_time = -1.0;
  QuadratureConfig quad;             // polar orders for phi at the generators
  int density_max_order = 1 << 18;   // polar order cap at density points
  int tail_blocks = 10;
  double margin = 0.1;
  unsigned threads = 0;              // 0: default_thread_count()

  static SpectralConfig l2_defaults();
  static SpectralConfig density_defaults();

  double step() const;
  double effective_heat_time() const;
};

std::complex<double> transform_of_convolution(const OrbitalConvolution& conv, double lambda,
                                              const QuadratureConfig& quad = {});
// Same product for raw generators; t_i = 0 contributes a factor 1.
std::complex<double> transform_of_generators(const SpaceDescriptor& space, std::span<const double> generators,
                                             double lambda, const QuadratureConfig& quad = {});

// prod_i phi_lambda(a_i) on the config's lambda grid (real part; the
// imaginary part vanishes for real lambda).
std::vector<double> transform_on_grid(const OrbitalConvolution& conv, const SpectralConfig& config);

enum class Verdict { finite, divergent, marginal };
std::string to_string(Verdict v);

struct ConvergenceReport {
  double tail_exponent = 0.0;
  double tail_exponent_stderr = 0.0;
  double tail_amplitude = 0.0;  // A in A lambda^p
  Verdict verdict = Verdict::marginal;
  std::optional<double> value;  // L^2 norm squared, finite verdict only
  double truncated_value = 0.0;
  double tail_completion = 0.0;
  int threshold_r = 0;          // n + 1
  double lambda_max = 0.0;
  std::size_t lambda_points = 0;
  std::string note;             // reason for a marginal verdict
};

// int_0^Lambda |prod phi|^2 w dlambda plus a fitted power-law tail.
// Verdict: finite when p < -1 - margin, divergent when p >= -1 - margin,
// marginal when the fit over the last decade is not a stable power law.
ConvergenceReport l2_norm_sq(const OrbitalConvolution& conv, const SpectralConfig& config = SpectralConfig::l2_defaults());

struct DensityProfile {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> jacobian;
  double mass = 0.0;
};

// Density of nu_1 * ... * nu_r (times the heat kernel h_s, see SpectralConfig)
// with respect to Haar measure, as a function of the radial coordinate.
// Construction refuses (below_threshold) when r < n + max_order + 1.
class DensityEvaluator {
 public:
  DensityEvaluator(const OrbitalConvolution& conv, const SpectralConfig& config = SpectralConfig::density_defaults(),
                   int max_order = 0);

  // Direct spectral sum at one point.
  double value(double t) const;
  double derivative(double t, int k) const;

  // Tabulated spectral sums with quintic Hermite interpolation in the
  // Iwasawa coordinate; agrees with the direct path to interpolation error.
  std::vector<double> fast_values(std::span<const double> ts, int k = 0) const;
  DensityProfile profile(std::span<const double> grid) const;

  // Uniform grid [0, support_radius + margin] with `points` nodes.
  std::vector<double> default_grid(std::size_t points = 2001) const;

  const OrbitalConvolution& convolution() const { return conv_; }
  double heat_time() const { return heat_time_; }
  double support_radius() const { return conv_.support_radius(); }
  // Distance beyond the support after which the heat-window leakage is
  // below 1e-4 of the peak: 8 sqrt(s).
  double leakage_width() const;

 private:
  double sum_direct(double t, int k) const;
  int polar_order(double t) const;
  double sum_fast(double t, int k, int order) const;
  void ensure_table(double u_max, int k) const;

  OrbitalConvolution conv_;
  SpectralConfig config_;
  int max_order_;
  double rho_ = 0.0;
  double heat_time_ = 0.0;
  std::vector<double> lambda_;
  std::vector<double> coeff_;  // transform * weight * window * trapezoid weight
  mutable std::mutex table_mutex_;
  mutable std::vector<std::vector<double>> table_;  // U_i(m h), i = 0..table_k_ + 2
  mutable double table_h_ = 0.0;
  mutable double table_u_max_ = -1.0;
  mutable int table_k_ = -1;
};

double density_at(const OrbitalConvolution& conv, double t,
                  const SpectralConfig& config = SpectralConfig::density_defaults());
double density_derivative(const OrbitalConvolution& conv, double t, int k,
                          const SpectralConfig& config = SpectralConfig::density_defaults());

// int rho^2 J dt on the profile grid.
double real_space_l2(const DensityProfile& profile);

struct RegularityReport {
  bool l2_threshold_met = false;
  int ck_max = -1;  // -1: not even C^0 guaranteed
  int threshold_r = 0;
};

RegularityReport regularity_report(const OrbitalConvolution& conv);

}  // namespace orbconv
