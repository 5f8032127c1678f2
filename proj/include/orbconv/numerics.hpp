#pragma once

// Quadrature rules, regression and special functions shared by the
// spectral and real-space code paths.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace orbconv {

// Nodes x in [-1, 1] and weights for the weight function
// (1 - x)^alpha (1 + x)^beta.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_jacobi(int order, double alpha, double beta);

// Quadrature for the polar angle theta of k e_1, k Haar on SO(n):
// theta has density proportional to sin^{n-2}(theta). Nodes are cos(theta),
// weights sum to 1. For n = 2 this is the midpoint rule on the circle
// (spectrally accurate for periodic integrands); for n >= 3 it is
// Gauss-Jacobi with alpha = beta = (n - 3) / 2 in x = cos(theta).
// Rules are cached; the returned reference stays valid for the process.
struct PolarRule {
  std::vector<double> cos_theta;
  std::vector<double> weight;
};

const PolarRule& polar_rule(int n, int order);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double correlation = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Composite Simpson on a uniform grid (falls back to a trapezoid panel
// for the last interval when the point count is even).
double simpson(std::span<const double> y, double h);

// Running trapezoid integral on an arbitrary increasing grid; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y);

// log Gamma(z) for Re z > 0 (Lanczos, g = 7).
std::complex<double> log_gamma(std::complex<double> z);

// Smallest power of two >= n (n >= 1).
int next_pow2(long long n);

// splitmix64 mixing of a master seed with a stream index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace orbconv
