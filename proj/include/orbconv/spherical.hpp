#pragma once

// Spherical functions phi_lambda(a_t) = int_K exp((i lambda - rho) H(a_t k)) dk
// for real hyperbolic spaces, the rank-one Plancherel weight and the decay
// envelope of the spherical functions.
//
// The K-integral reduces to the polar angle of k: H(a_t k) = L(t, x) with
// L = log(cosh t + sinh t x), x = cos(theta), and theta distributed with
// density proportional to sin^{n-2}(theta).

#include <complex>
#include <cstddef>
#include <vector>

#include "orbconv/cartan_data.hpp"

namespace orbconv {

struct QuadratureConfig {
  int min_order = 64;
  int max_order = 4096;
  double tolerance = 1e-9;  // agreement of successive orders
};

struct SphericalValue {
  std::complex<double> value;
  double lambda = 0.0;
  double t = 0.0;
  int order = 0;  // polar quadrature order that converged
};

// Smallest order that resolves the oscillation of exp(i lambda L) in theta.
// The phase derivative in theta is bounded by |lambda| sinh t, and an
// N-point rule is exact below frequency 2N.
long long oscillation_guard(double lambda, double t);

// Errors: unsupported when the space has no realization (rank > 1 or a 2alpha
// root); quadrature_budget when the guard or the order ladder exceeds
// quad.max_order.
SphericalValue spherical_fn(const SpaceDescriptor& space, double lambda, double t,
                            const QuadratureConfig& quad = {});

// phi_lambda(a_t) at lambda_j = j * step, j = 0..count-1, all with one order
// chosen for the largest lambda and checked against the next order.
struct SphericalGrid {
  std::vector<std::complex<double>> values;
  double step = 0.0;
  int order = 0;
};

SphericalGrid spherical_on_grid(const SpaceDescriptor& space, double t, double step, std::size_t count,
                                const QuadratureConfig& quad = {});

// d^k/dt^k phi_lambda(a_t) at a fixed polar order (t >= 0).
std::complex<double> spherical_derivative(const SpaceDescriptor& space, double lambda, double t, int k,
                                          int order);

// kappa |c(lambda)|^{-2}: the spectral density of the inversion formula
// f(t) = int_0^inf fhat(lambda) phi_lambda(t) w(lambda) dlambda, normalized
// against the radial Jacobian sinh^{m_a}(t) sinh^{m_2a}(2t). Even in lambda;
// zero at lambda = 0.
double plancherel_weight(const SpaceDescriptor& space, double lambda);

// prod over positive roots (1 + |<lambda, alpha>|)^{-m_alpha / 2}. Requires t
// strictly inside the chamber.
double decay_envelope(const SpaceDescriptor& space, double t, double lambda);

namespace polar {

// L(t, x) and its t-derivative p = L'(t, x), both without cancellation.
double log_kernel(double t, double x);
double log_kernel_dt(double t, double x);

// Values of d^j L / dt^j for j = 1..k given p = L'. Uses L'' = 1 - p^2.
std::vector<double> kernel_derivatives(double p, int k);

// Coefficients y[m][d] with d^m/dt^m exp(c L) = exp(c L) sum_d y[m][d] c^d,
// m = 0..k, from the t-derivatives of L.
std::vector<std::vector<double>> bell_coefficients(double p, int k);

}  // namespace polar

}  // namespace orbconv
