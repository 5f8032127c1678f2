#include "orbconv/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "orbconv/error.hpp"
#include "orbconv/matrix_models.hpp"
#include "orbconv/numerics.hpp"

namespace orbconv {

namespace {

constexpr int kReseedInterval = 256;

void require_realized(const SpaceDescriptor& space) {
  if (!has_matrix_realization(space)) {
    fail(ErrorKind::unsupported, "spherical functions are evaluated for real hyperbolic spaces only (got '" +
                                     space.name + "')");
  }
}

void check_quad(const QuadratureConfig& quad) {
  require(quad.min_order >= 16, "quadrature order must be at least 16");
  require(quad.max_order >= quad.min_order, "max quadrature order below min order");
  require(quad.tolerance > 0.0, "quadrature tolerance must be positive");
}

double rho_of(const SpaceDescriptor& space) {
  return 0.5 * space.multiplicity_alpha() + space.multiplicity_2alpha();
}

std::complex<double> evaluate(int n, double rho, double lambda, double t, int order) {
  const PolarRule& rule = polar_rule(n, order);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < rule.cos_theta.size(); ++i) {
    const double l = polar::log_kernel(t, rule.cos_theta[i]);
    sum += rule.weight[i] * std::polar(std::exp(-rho * l), lambda * l);
  }
  return sum;
}

// Phasor recurrence over the lambda grid; nodes form the inner loop.
std::vector<std::complex<double>> evaluate_grid(int n, double rho, double t, double step, std::size_t count,
                                                int order) {
  const PolarRule& rule = polar_rule(n, order);
  const std::size_t m = rule.cos_theta.size();
  std::vector<double> l(m), amp(m), cr(m), ci(m), sr(m), si(m);
  for (std::size_t i = 0; i < m; ++i) {
    l[i] = polar::log_kernel(t, rule.cos_theta[i]);
    amp[i] = rule.weight[i] * std::exp(-rho * l[i]);
    sr[i] = std::cos(step * l[i]);
    si[i] = std::sin(step * l[i]);
  }
  std::vector<std::complex<double>> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (j % kReseedInterval == 0) {
      const double lambda = step * static_cast<double>(j);
      for (std::size_t i = 0; i < m; ++i) {
        cr[i] = amp[i] * std::cos(lambda * l[i]);
        ci[i] = amp[i] * std::sin(lambda * l[i]);
      }
    }
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      re += cr[i];
      im += ci[i];
    }
    out[j] = {re, im};
    for (std::size_t i = 0; i < m; ++i) {
      const double a = cr[i] * sr[i] - ci[i] * si[i];
      ci[i] = cr[i] * si[i] + ci[i] * sr[i];
      cr[i] = a;
    }
  }
  return out;
}

int starting_order(const QuadratureConfig& quad, double lambda, double t) {
  const long long guard = oscillation_guard(lambda, t);
  if (guard > quad.max_order) {
    fail(ErrorKind::quadrature_budget,
         "lambda = " + num(lambda) + ", t = " + num(t) + " needs polar order >= " +
             std::to_string(guard) + " but max order is " + std::to_string(quad.max_order));
  }
  return std::max(next_pow2(quad.min_order), next_pow2(guard));
}

[[noreturn]] void ladder_exhausted(double lambda, double t, const QuadratureConfig& quad) {
  char tol[32];
  std::snprintf(tol, sizeof tol, "%g", quad.tolerance);
  fail(ErrorKind::quadrature_budget, std::string("polar quadrature did not converge to ") + tol +
                                         " by order " + std::to_string(quad.max_order) +
                                         " (lambda = " + num(lambda) +
                                         ", t = " + num(t) + ")");
}

}  // namespace

long long oscillation_guard(double lambda, double t) {
  // An N-point polar rule integrates theta-frequencies below 2N exactly.
  const double need = 0.5 * std::abs(lambda) * std::sinh(std::abs(t));
  if (!(need < 1e15)) return (1LL << 50);
  return 64 + static_cast<long long>(std::ceil(need));
}

SphericalValue spherical_fn(const SpaceDescriptor& space, double lambda, double t, const QuadratureConfig& quad) {
  require_realized(space);
  check_quad(quad);
  require(std::isfinite(lambda), "lambda must be finite");
  require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
  const int n = space.dim;
  const double rho = rho_of(space);
  SphericalValue out{std::complex<double>(1.0, 0.0), lambda, t, 0};
  if (t == 0.0) {
    // L vanishes identically; the rule still sums its weights to 1.
    out.value = evaluate(n, rho, lambda, 0.0, quad.min_order);
    out.order = quad.min_order;
    return out;
  }
  int order = starting_order(quad, lambda, t);
  std::complex<double> prev = evaluate(n, rho, lambda, t, order);
  for (int next = order * 2; next <= quad.max_order; next *= 2) {
    const std::complex<double> cur = evaluate(n, rho, lambda, t, next);
    if (std::abs(cur - prev) <= quad.tolerance) {
      out.value = cur;
      out.order = next;
      return out;
    }
    prev = cur;
  }
  ladder_exhausted(lambda, t, quad);
}

SphericalGrid spherical_on_grid(const SpaceDescriptor& space, double t, double step, std::size_t count,
                                const QuadratureConfig& quad) {
  require_realized(space);
  check_quad(quad);
  require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
  require(step > 0.0 && count >= 1, "lambda grid needs a positive step and at least one point");
  const int n = space.dim;
  const double rho = rho_of(space);
  const double lambda_max = step * static_cast<double>(count - 1);
  SphericalGrid grid;
  grid.step = step;
  if (t == 0.0) {
    grid.values.assign(count, std::complex<double>(1.0, 0.0));
    grid.order = quad.min_order;
    return grid;
  }
  const int order = starting_order(quad, lambda_max, t);
  auto prev = evaluate_grid(n, rho, t, step, count, order);
  for (int next = order * 2; next <= quad.max_order; next *= 2) {
    auto cur = evaluate_grid(n, rho, t, step, count, next);
    double diff = 0.0;
    for (std::size_t j = 0; j < count; ++j) diff = std::max(diff, std::abs(cur[j] - prev[j]));
    if (diff <= quad.tolerance) {
      grid.values = std::move(cur);
      grid.order = next;
      return grid;
    }
    prev = std::move(cur);
  }
  ladder_exhausted(lambda_max, t, quad);
}

std::complex<double> spherical_derivative(const SpaceDescriptor& space, double lambda, double t, int k,
                                          int order) {
  require_realized(space);
  require(k >= 0, "derivative order must be nonnegative");
  require(order >= 16, "quadrature order must be at least 16");
  require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
  const double rho = rho_of(space);
  const std::complex<double> c(-rho, lambda);
  const PolarRule& rule = polar_rule(space.dim, order);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < rule.cos_theta.size(); ++i) {
    const double x = rule.cos_theta[i];
    const double l = polar::log_kernel(t, x);
    const auto y = polar::bell_coefficients(polar::log_kernel_dt(t, x), k);
    std::complex<double> poly = 0.0;
    for (int d = k; d >= 0; --d) poly = poly * c + y[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
    sum += rule.weight[i] * std::exp(c * l) * poly;
  }
  return sum;
}

double plancherel_weight(const SpaceDescriptor& space, double lambda) {
  require(space.is_rank_one(), "the Plancherel weight is implemented in rank one");
  require(std::isfinite(lambda), "lambda must be finite");
  const double ma = space.multiplicity_alpha();
  const double m2a = space.multiplicity_2alpha();
  const double a = 0.5 * (ma + m2a - 1.0);
  const double b = 0.5 * (m2a - 1.0);
  const double rho = a + b + 1.0;
  const double x = std::abs(lambda);
  if (x == 0.0) return 0.0;
  // 1/|Gamma(i x)|^2 = x sinh(pi x) / pi, taken in logs.
  const double pix = std::numbers::pi * x;
  const double log_sinh = pix + std::log1p(-std::exp(-2.0 * pix)) - std::log(2.0);
  const double log_inv_gamma_ix = std::log(x) + log_sinh - std::log(std::numbers::pi);
  const double g1 = log_gamma({0.5 * rho, 0.5 * x}).real();
  const double g2 = log_gamma({0.5 * (a - b + 1.0), 0.5 * x}).real();
  const double log_c = log_inv_gamma_ix + 2.0 * g1 + 2.0 * g2 - rho * std::log(4.0) - 2.0 * std::lgamma(a + 1.0);
  const double kappa = std::pow(2.0, ma + m2a) / (2.0 * std::numbers::pi);
  return kappa * std::exp(log_c);
}

double decay_envelope(const SpaceDescriptor& space, double t, double lambda) {
  require(space.is_rank_one(), "the decay envelope is implemented in rank one");
  if (!(t > 0.0)) {
    fail(ErrorKind::invalid_argument, "decay envelope requires a regular point (t > 0), got t = " + num(t));
  }
  const double x = std::abs(lambda);
  double env = 1.0;
  for (const auto& root : space.positive_roots) {
    env *= std::pow(1.0 + x * std::abs(root.vector[0]), -0.5 * root.multiplicity);
  }
  return env;
}

namespace polar {

double log_kernel(double t, double x) {
  if (t == 0.0) return 0.0;
  return iwasawa_H_polar(t, x);
}

double log_kernel_dt(double t, double x) {
  const double ep = std::exp(t) * (1.0 + x);
  const double em = std::exp(-t) * (1.0 - x);
  return (ep - em) / (ep + em);
}

std::vector<double> kernel_derivatives(double p, int k) {
  // L^{(j)} = P_j(p) with P_1 = p and P_{j+1} = P_j'(p) (1 - p^2).
  std::vector<double> out(static_cast<std::size_t>(std::max(k, 0)) + 1, 0.0);
  std::vector<double> poly = {0.0, 1.0};
  for (int j = 1; j <= k; ++j) {
    double v = 0.0;
    for (std::size_t d = poly.size(); d-- > 0;) v = v * p + poly[d];
    out[static_cast<std::size_t>(j)] = v;
    std::vector<double> deriv(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
    for (std::size_t d = 1; d < poly.size(); ++d) deriv[d - 1] = static_cast<double>(d) * poly[d];
    std::vector<double> next(deriv.size() + 2, 0.0);
    for (std::size_t d = 0; d < deriv.size(); ++d) {
      next[d] += deriv[d];
      next[d + 2] -= deriv[d];
    }
    poly = std::move(next);
  }
  return out;
}

std::vector<std::vector<double>> bell_coefficients(double p, int k) {
  const auto lder = kernel_derivatives(p, k);
  std::vector<std::vector<double>> y(static_cast<std::size_t>(k) + 1);
  y[0] = {1.0};
  for (int m = 0; m < k; ++m) {
    // Y_{m+1} = sum_j C(m, j) Y_{m-j} c L^{(j+1)}
    std::vector<double> next(static_cast<std::size_t>(m) + 2, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      const auto& prev = y[static_cast<std::size_t>(m - j)];
      const double f = binom * lder[static_cast<std::size_t>(j + 1)];
      for (std::size_t d = 0; d < prev.size(); ++d) next[d + 1] += f * prev[d];
      binom = binom * (m - j) / (j + 1);
    }
    y[static_cast<std::size_t>(m) + 1] = std::move(next);
  }
  return y;
}

}  // namespace polar

}  // namespace orbconv
