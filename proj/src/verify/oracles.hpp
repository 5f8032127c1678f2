#pragma once

// Reference computations that share no code with the library paths they
// check.

#include <cstddef>
#include <span>
#include <vector>

namespace orbconv::oracle {

// Conical function P_{-1/2 + i lambda}(cosh t), which is the H^2 spherical
// function, from the Mehler-Dirichlet integral
//   (sqrt 2 / pi) int_0^t cos(lambda s) / sqrt(cosh t - cosh s) ds
// by tanh-sinh quadrature. The difference of cosh values is taken as
// 2 sinh((t + s) / 2) sinh((t - s) / 2) so the endpoint singularity keeps
// full relative precision.
double conical_function(double lambda, double t);

// P(K > x) for the Kolmogorov distribution.
double kolmogorov_survival(double x);

// One-sample KS statistic of samples against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf);

// min over unit u in R^2 of max_i |<u, alpha_i>| on a uniform angular grid
// with `points` directions in [0, pi).
double separation_grid(std::span<const double> roots_xy, std::size_t points = 2000000);

// |t_1 - t_2| - tol <= t <= t_1 + t_2 + tol for every sample.
bool triangle_band(std::span<const double> samples, double t1, double t2, double tol = 1e-9);

// |c(lambda)|^{-2} for H^n in closed form for n = 2 (lambda tanh(pi lambda))
// and n = 3 (lambda^2), up to constants.
double hyperbolic_c_minus2(int n, double lambda);

}  // namespace orbconv::oracle

#include <algorithm>
#include <cmath>

template <class Cdf>
double orbconv::oracle::ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}
