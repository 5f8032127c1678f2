#include "orbconv/numerics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include "orbconv/error.hpp"

namespace orbconv {

namespace {

struct JacobiValues {
  double p;       // P_n(x)
  double p_prev;  // P_{n-1}(x)
  double dp;      // P_n'(x)
};

JacobiValues jacobi_eval(int n, double a, double b, double x) {
  const double ab = a + b;
  double p1 = 1.0;
  double p2 = 0.5 * (a - b + (ab + 2.0) * x);
  for (int j = 2; j <= n; ++j) {
    const double p3 = p1;
    p1 = p2;
    const double c = 2.0 * j + ab;
    const double a1 = 2.0 * j * (j + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * c;
    p2 = ((a2 + a3 * x) * p1 - a4 * p3) / a1;
  }
  const double c = 2.0 * n + ab;
  const double dp = (n * (a - b - c * x) * p2 + 2.0 * (n + a) * (n + b) * p1) / (c * (1.0 - x * x));
  return {p2, p1, dp};
}

}  // namespace

GaussRule gauss_jacobi(int order, double alpha, double beta) {
  require(order >= 1, "gauss_jacobi: order must be positive");
  require(alpha > -1.0 && beta > -1.0, "gauss_jacobi: alpha, beta must exceed -1");
  const int n = order;
  const double ab = alpha + beta;
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double log_norm = std::lgamma(alpha + n) + std::lgamma(beta + n) - std::lgamma(n + 1.0) -
                          std::lgamma(n + ab + 1.0);
  const bool symmetric = alpha == beta;
  const int count = symmetric ? (n + 1) / 2 : n;
  for (int k = 0; k < count; ++k) {
    // Asymptotic (Gatteschi-type) starting value, roots in decreasing order.
    double x = std::cos(std::numbers::pi * (k + 1 + 0.5 * alpha - 0.25) / (n + 0.5 * (ab + 1.0)));
    if (symmetric && n % 2 == 1 && k == n / 2) x = 0.0;
    JacobiValues v{};
    for (int it = 0; it < 100; ++it) {
      v = jacobi_eval(n, alpha, beta, x);
      const double dx = v.p / v.dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    v = jacobi_eval(n, alpha, beta, x);
    const double temp = 2.0 * n + ab;
    const double w = std::exp(log_norm) * temp * std::pow(2.0, ab) / (v.dp * v.p_prev);
    rule.nodes[static_cast<std::size_t>(k)] = x;
    rule.weights[static_cast<std::size_t>(k)] = w;
    if (symmetric) {
      rule.nodes[static_cast<std::size_t>(n - 1 - k)] = -x;
      rule.weights[static_cast<std::size_t>(n - 1 - k)] = w;
    }
  }
  if (symmetric && n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

const PolarRule& polar_rule(int n, int order) {
  require(n >= 2, "polar_rule: K = SO(n) needs n >= 2");
  require(order >= 1, "polar_rule: order must be positive");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PolarRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, order}];
  if (!slot) {
    auto rule = std::make_unique<PolarRule>();
    rule->cos_theta.resize(static_cast<std::size_t>(order));
    rule->weight.resize(static_cast<std::size_t>(order));
    if (n == 2) {
      for (int k = 0; k < order; ++k) {
        rule->cos_theta[static_cast<std::size_t>(k)] = std::cos((k + 0.5) * std::numbers::pi / order);
        rule->weight[static_cast<std::size_t>(k)] = 1.0 / order;
      }
    } else {
      const double a = 0.5 * (n - 3);
      auto g = gauss_jacobi(order, a, a);
      double total = 0.0;
      for (double w : g.weights) total += w;
      for (int k = 0; k < order; ++k) {
        rule->cos_theta[static_cast<std::size_t>(k)] = g.nodes[static_cast<std::size_t>(k)];
        rule->weight[static_cast<std::size_t>(k)] = g.weights[static_cast<std::size_t>(k)] / total;
      }
    }
    slot = std::move(rule);
  }
  return *slot;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two matching points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.correlation = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 1.0;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.intercept + fit.slope * x[i]);
      ssr += e * e;
    }
    fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return fit;
}

double simpson(std::span<const double> y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  const std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
  double s = y[0] + y[last];
  for (std::size_t i = 1; i < last; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  double total = s * h / 3.0;
  if (last != n - 1) total += 0.5 * h * (y[n - 2] + y[n - 1]);
  return total;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "cumulative_trapezoid: size mismatch");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return out;
}

std::complex<double> log_gamma(std::complex<double> z) {
  static constexpr double kCoef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                      771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection; only the real part (log |Gamma|) is branch independent.
    // log sin(pi z) is taken in the half plane where exp(2 i pi z) is small.
    const bool upper = z.imag() >= 0.0;
    const std::complex<double> w = upper ? z : std::conj(z);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> log_sin =
        -i * std::numbers::pi * w - std::log(-2.0 * i) + std::log(1.0 - std::exp(2.0 * i * std::numbers::pi * w));
    const std::complex<double> out = std::log(std::numbers::pi) - log_sin - log_gamma(1.0 - w);
    return upper ? out : std::conj(out);
  }
  z -= 1.0;
  std::complex<double> x = kCoef[0];
  for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

int next_pow2(long long n) {
  require(n >= 1 && n <= (1LL << 30), "next_pow2: argument out of range");
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master ^ (stream * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace orbconv
