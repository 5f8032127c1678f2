#include "oracles.hpp"

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace orbconv::oracle {

double conical_function(double lambda, double t) {
  if (t == 0.0) return 1.0;
  const double pi = boost::math::constants::pi<double>();
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  auto f = [&](double s, double sc) {
    // sc is the signed distance to the nearer endpoint.
    const double gap = sc > 0.0 ? sc : t - s;
    if (gap <= 0.0) return 0.0;
    const double d = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * gap);
    return std::cos(lambda * s) / std::sqrt(d);
  };
  // Split at the oscillation period so each panel sees a few oscillations.
  const int panels = std::max(1, static_cast<int>(std::ceil(lambda * t / pi)));
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = t * p / panels;
    const double b = t * (p + 1) / panels;
    if (p + 1 < panels) {
      sum += integrator.integrate([&](double s) { return f(s, -1.0); }, a, b, 1e-13);
    } else {
      sum += integrator.integrate([&](double s, double sc) { return f(s, sc); }, a, b, 1e-13);
    }
  }
  return std::sqrt(2.0) / pi * sum;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double separation_grid(std::span<const double> roots_xy, std::size_t points) {
  const double pi = boost::math::constants::pi<double>();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double th = pi * static_cast<double>(i) / static_cast<double>(points);
    const double ux = std::cos(th);
    const double uy = std::sin(th);
    double worst = 0.0;
    for (std::size_t r = 0; r + 1 < roots_xy.size(); r += 2) {
      worst = std::max(worst, std::abs(ux * roots_xy[r] + uy * roots_xy[r + 1]));
    }
    best = std::min(best, worst);
  }
  return best;
}

bool triangle_band(std::span<const double> samples, double t1, double t2, double tol) {
  const double lo = std::abs(t1 - t2) - tol;
  const double hi = t1 + t2 + tol;
  for (double s : samples) {
    if (s < lo || s > hi) return false;
  }
  return true;
}

double hyperbolic_c_minus2(int n, double lambda) {
  const double pi = boost::math::constants::pi<double>();
  if (n == 2) return lambda * std::tanh(pi * lambda);
  return lambda * lambda;
}

}  // namespace orbconv::oracle
