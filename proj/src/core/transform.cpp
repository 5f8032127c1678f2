#include "orbconv/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>

#include "orbconv/error.hpp"
#include "orbconv/matrix_models.hpp"
#include "orbconv/numerics.hpp"
#include "orbconv/parallel.hpp"

namespace orbconv {

namespace {

constexpr int kMaxDerivative = 6;
constexpr int kReseedInterval = 256;
constexpr double kTableStepsPerWave = 8.0;

std::string describe_generators(const std::vector<double>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t[i]);
    s += buf;
  }
  return s;
}

// U_i(u) = Re sum_j c_j (i lambda_j)^i exp(i lambda_j u) for i = 0..order at
// every u. lambda_j = j * step.
std::vector<std::vector<double>> spectral_sums(const std::vector<double>& coeff, double step,
                                               std::span<const double> us, int order, unsigned threads) {
  const std::size_t m = us.size();
  std::vector<std::vector<double>> acc(static_cast<std::size_t>(order) + 1, std::vector<double>(m, 0.0));
  std::size_t last = coeff.size();
  while (last > 0 && coeff[last - 1] == 0.0) --last;
  const std::size_t chunk = 2048;
  const std::size_t chunks = (m + chunk - 1) / chunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    const std::size_t end = std::min(m, begin + chunk);
    const std::size_t len = end - begin;
    std::vector<double> pr(len), pi(len), sr(len), si(len);
    for (std::size_t q = 0; q < len; ++q) {
      sr[q] = std::cos(step * us[begin + q]);
      si[q] = std::sin(step * us[begin + q]);
    }
    std::array<double, kMaxDerivative + 3> cl{};
    for (std::size_t j = 0; j < last; ++j) {
      if (j % kReseedInterval == 0) {
        const double lambda = step * static_cast<double>(j);
        for (std::size_t q = 0; q < len; ++q) {
          pr[q] = std::cos(lambda * us[begin + q]);
          pi[q] = std::sin(lambda * us[begin + q]);
        }
      }
      const double lambda = step * static_cast<double>(j);
      double w = coeff[j];
      for (int i = 0; i <= order; ++i) {
        cl[static_cast<std::size_t>(i)] = w;
        w *= lambda;
      }
      if (coeff[j] != 0.0) {
        for (int i = 0; i <= order; ++i) {
          const double ci = cl[static_cast<std::size_t>(i)];
          double* out = acc[static_cast<std::size_t>(i)].data() + begin;
          const double* src = (i % 2 == 0) ? pr.data() : pi.data();
          for (std::size_t q = 0; q < len; ++q) out[q] += ci * src[q];
        }
      }
      for (std::size_t q = 0; q < len; ++q) {
        const double a = pr[q] * sr[q] - pi[q] * si[q];
        pi[q] = pr[q] * si[q] + pi[q] * sr[q];
        pr[q] = a;
      }
    }
  });
  // i^i: +cos, -sin, -cos, +sin
  for (int i = 0; i <= order; ++i) {
    if (i % 4 == 1 || i % 4 == 2) {
      for (double& v : acc[static_cast<std::size_t>(i)]) v = -v;
    }
  }
  return acc;
}

// Coefficients g_i with d^k/dt^k exp((i lambda - rho) L) =
// exp((i lambda - rho) L) sum_i g_i (i lambda)^i, given p = dL/dt.
struct DerivativeWeights {
  std::array<double, kMaxDerivative + 1> g{};
};

DerivativeWeights derivative_weights(double p, int k, double rho) {
  DerivativeWeights out;
  if (k == 0) {
    out.g[0] = 1.0;
    return out;
  }
  // d^j L/dt^j as polynomials in p: P_1 = p, P_{j+1} = P_j' (1 - p^2).
  std::array<double, kMaxDerivative + 2> lder{};
  {
    std::array<double, 2 * kMaxDerivative + 2> poly{};
    std::array<double, 2 * kMaxDerivative + 2> next{};
    poly[1] = 1.0;
    int deg = 1;
    for (int j = 1; j <= k; ++j) {
      double v = 0.0;
      for (int d = deg; d >= 0; --d) v = v * p + poly[static_cast<std::size_t>(d)];
      lder[static_cast<std::size_t>(j)] = v;
      next.fill(0.0);
      for (int d = 1; d <= deg; ++d) {
        const double c = d * poly[static_cast<std::size_t>(d)];
        next[static_cast<std::size_t>(d - 1)] += c;
        next[static_cast<std::size_t>(d + 1)] -= c;
      }
      poly = next;
      deg += 1;
    }
  }
  // Y_{m+1} = sum_j C(m, j) Y_{m-j} c L^{(j+1)}, Y as polynomials in c.
  std::array<std::array<double, kMaxDerivative + 1>, kMaxDerivative + 1> y{};
  y[0][0] = 1.0;
  for (int m = 0; m < k; ++m) {
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      const double f = binom * lder[static_cast<std::size_t>(j + 1)];
      const auto& prev = y[static_cast<std::size_t>(m - j)];
      for (int d = 0; d <= m - j; ++d) y[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(d + 1)] += f * prev[static_cast<std::size_t>(d)];
      binom = binom * (m - j) / (j + 1);
    }
  }
  // Shift c = -rho + z and collect powers of z.
  const auto& yk = y[static_cast<std::size_t>(k)];
  for (int d = 0; d <= k; ++d) {
    const double coef = yk[static_cast<std::size_t>(d)];
    if (coef == 0.0) continue;
    double binom = 1.0;
    for (int i = 0; i <= d; ++i) {
      out.g[static_cast<std::size_t>(i)] += coef * binom * std::pow(-rho, d - i);
      binom = binom * (d - i) / (i + 1);
    }
  }
  return out;
}

void check_derivative_order(int k) {
  require(k >= 0 && k <= kMaxDerivative, "derivative order must be in [0, " + std::to_string(kMaxDerivative) + "]");
}

}  // namespace

OrbitalConvolution OrbitalConvolution::make(SpaceDescriptor space, std::vector<double> generators) {
  validate(space);
  if (!space.is_rank_one()) {
    fail(ErrorKind::unsupported, "orbital convolutions are evaluated on rank-one spaces only");
  }
  require(!generators.empty(), "a convolution needs at least one generator");
  for (double t : generators) {
    require(std::isfinite(t) && t > 0.0,
            "generators must be strictly inside the chamber (t > 0), got " + describe_generators(generators));
  }
  return {std::move(space), std::move(generators)};
}

double OrbitalConvolution::support_radius() const {
  return std::accumulate(generators.begin(), generators.end(), 0.0);
}

SpectralConfig SpectralConfig::l2_defaults() { return {}; }

SpectralConfig SpectralConfig::density_defaults() {
  SpectralConfig c;
  c.lambda_max = 600.0;
  c.lambda_points = 6001;
  return c;
}

double SpectralConfig::step() const {
  require(lambda_max > 0.0 && lambda_points >= 3, "lambda grid needs lambda_max > 0 and at least 3 points");
  return lambda_max / static_cast<double>(lambda_points - 1);
}

double SpectralConfig::effective_heat_time() const {
  return heat_time < 0.0 ? 30.0 / (lambda_max * lambda_max) : heat_time;
}

std::complex<double> transform_of_generators(const SpaceDescriptor& space, std::span<const double> generators,
                                             double lambda, const QuadratureConfig& quad) {
  std::complex<double> prod = 1.0;
  for (double t : generators) {
    require(std::isfinite(t) && t >= 0.0, "generators must satisfy t >= 0");
    if (t == 0.0) continue;
    prod *= spherical_fn(space, lambda, t, quad).value;
  }
  return prod;
}

std::complex<double> transform_of_convolution(const OrbitalConvolution& conv, double lambda,
                                              const QuadratureConfig& quad) {
  return transform_of_generators(conv.space, conv.generators, lambda, quad);
}

std::vector<double> transform_on_grid(const OrbitalConvolution& conv, const SpectralConfig& config) {
  const double step = config.step();
  std::map<double, std::vector<double>> cache;
  for (double t : conv.generators) cache.emplace(t, std::vector<double>{});
  std::vector<double> keys;
  for (auto& [t, v] : cache) keys.push_back(t);
  std::vector<std::vector<double>> values(keys.size());
  parallel_for(keys.size(), config.threads, [&](std::size_t i) {
    auto grid = spherical_on_grid(conv.space, keys[i], step, config.lambda_points, config.quad);
    values[i].resize(grid.values.size());
    for (std::size_t j = 0; j < grid.values.size(); ++j) values[i][j] = grid.values[j].real();
  });
  for (std::size_t i = 0; i < keys.size(); ++i) cache[keys[i]] = std::move(values[i]);
  std::vector<double> out(config.lambda_points, 1.0);
  for (double t : conv.generators) {
    const auto& v = cache[t];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= v[j];
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::finite:
      return "finite";
    case Verdict::divergent:
      return "divergent";
    case Verdict::marginal:
      return "marginal";
  }
  return "marginal";
}

ConvergenceReport l2_norm_sq(const OrbitalConvolution& conv, const SpectralConfig& config) {
  require(config.tail_blocks >= 4, "tail fit needs at least 4 blocks");
  require(config.margin > 0.0, "tail margin must be positive");
  ConvergenceReport rep;
  rep.threshold_r = conv.space.dim + 1;
  rep.lambda_max = config.lambda_max;
  rep.lambda_points = config.lambda_points;
  const double step = config.step();
  const auto g = transform_on_grid(conv, config);
  const std::size_t m = g.size();
  std::vector<double> f(m);
  for (std::size_t j = 0; j < m; ++j) f[j] = g[j] * g[j] * plancherel_weight(conv.space, step * static_cast<double>(j));
  // Trapezoid: the integrand is even and analytic near the real axis.
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) total += (j == 0 || j + 1 == m ? 0.5 : 1.0) * f[j];
  rep.truncated_value = total * step;

  const int blocks = config.tail_blocks;
  const double lo = config.lambda_max / 10.0;
  std::vector<double> edges(static_cast<std::size_t>(blocks) + 1);
  for (int b = 0; b <= blocks; ++b) edges[static_cast<std::size_t>(b)] = lo * std::pow(10.0, static_cast<double>(b) / blocks);
  std::vector<double> xs, ys, means;
  bool positive = true;
  for (int b = 0; b < blocks; ++b) {
    const double a = edges[static_cast<std::size_t>(b)];
    const double e = edges[static_cast<std::size_t>(b) + 1];
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double lam = step * static_cast<double>(j);
      if (lam >= a && (lam < e || (b == blocks - 1 && lam <= e))) {
        sum += f[j];
        ++count;
      }
    }
    if (count < 4) {
      rep.note = "lambda grid too coarse for the tail fit";
      return rep;
    }
    const double mean = sum / static_cast<double>(count);
    if (!(mean > 0.0)) positive = false;
    means.push_back(mean);
    xs.push_back(0.5 * (std::log(a) + std::log(e)));
    ys.push_back(mean > 0.0 ? std::log(mean) : 0.0);
  }
  if (!positive) {
    rep.note = "nonpositive block mean in the tail";
    return rep;
  }
  const auto fit = fit_line(xs, ys);
  rep.tail_exponent = fit.slope;
  rep.tail_exponent_stderr = fit.slope_stderr;
  const std::size_t half = xs.size() / 2;
  const auto first = fit_line(std::span(xs).first(half), std::span(ys).first(half));
  const auto second = fit_line(std::span(xs).subspan(half), std::span(ys).subspan(half));

  // Amplitude from block means of A lambda^p, exact for a pure power law.
  const double p = fit.slope;
  double model = 0.0;
  for (int b = 0; b < blocks; ++b) {
    const double a = edges[static_cast<std::size_t>(b)];
    const double e = edges[static_cast<std::size_t>(b) + 1];
    const double integral = std::abs(p + 1.0) < 1e-12 ? std::log(e / a) : (std::pow(e, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
    model += integral / (e - a);
  }
  rep.tail_amplitude = std::accumulate(means.begin(), means.end(), 0.0) / model;

  if (fit.slope_stderr > 0.5 * config.margin) {
    rep.note = "tail exponent not stable (stderr " + num(fit.slope_stderr) + ")";
    return rep;
  }
  if (std::abs(first.slope - second.slope) > config.margin) {
    rep.note = "tail exponent drifts across the last decade (" + num(first.slope) + " vs " +
               num(second.slope) + ")";
    return rep;
  }
  if (p < -1.0 - config.margin) {
    rep.verdict = Verdict::finite;
    rep.tail_completion = -rep.tail_amplitude * std::pow(config.lambda_max, p + 1.0) / (p + 1.0);
    rep.value = rep.truncated_value + rep.tail_completion;
  } else {
    rep.verdict = Verdict::divergent;
  }
  return rep;
}

DensityEvaluator::DensityEvaluator(const OrbitalConvolution& conv, const SpectralConfig& config, int max_order)
    : conv_(conv), config_(config), max_order_(max_order) {
  check_derivative_order(max_order);
  if (!has_matrix_realization(conv.space)) {
    fail(ErrorKind::unsupported, "densities are evaluated for real hyperbolic spaces only (got '" +
                                     conv.space.name + "')");
  }
  const int n = conv.space.dim;
  const int need = n + max_order + 1;
  if (conv.r() < need) {
    const std::string what = max_order == 0 ? "the L^2 threshold r >= n + 1"
                                            : "the C^" + std::to_string(max_order) + " threshold r >= n + " +
                                                  std::to_string(max_order) + " + 1";
    fail(ErrorKind::below_threshold,
         "r = " + std::to_string(conv.r()) + " is below " + what + " = " + std::to_string(need) + " on " + conv.space.name + " (dim " + std::to_string(n) +
             "); the inversion integral does not converge absolutely");
  }
  rho_ = 0.5 * conv.space.multiplicity_alpha() + conv.space.multiplicity_2alpha();
  heat_time_ = config.effective_heat_time();
  require(heat_time_ >= 0.0, "heat time must be nonnegative");
  const double step = config.step();
  const auto g = transform_on_grid(conv, config);
  const std::size_t m = g.size();
  lambda_.resize(m);
  coeff_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lam = step * static_cast<double>(j);
    lambda_[j] = lam;
    const double window = std::exp(-heat_time_ * (lam * lam + rho_ * rho_));
    const double trap = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    coeff_[j] = g[j] * plancherel_weight(conv.space, lam) * window * trap * step;
  }
}

double DensityEvaluator::leakage_width() const { return 8.0 * std::sqrt(heat_time_); }

int DensityEvaluator::polar_order(double t) const {
  const long long guard = oscillation_guard(config_.lambda_max, t);
  // The convergence check needs one doubling above the starting order.
  if (guard > config_.density_max_order / 2) {
    fail(ErrorKind::quadrature_budget, "density at t = " + num(t) + " needs polar order >= 2 * " +
                                           std::to_string(guard) + " but the cap is " +
                                           std::to_string(config_.density_max_order));
  }
  return std::max(64, next_pow2(guard));
}

double DensityEvaluator::sum_direct(double t, int k) const {
  const int n = conv_.space.dim;
  auto eval = [&](int order) {
    const PolarRule& rule = polar_rule(n, order);
    const std::size_t m = rule.cos_theta.size();
    std::vector<double> ls(m);
    for (std::size_t i = 0; i < m; ++i) ls[i] = polar::log_kernel(t, rule.cos_theta[i]);
    const auto u = spectral_sums(coeff_, config_.step(), ls, k, config_.threads);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double p = polar::log_kernel_dt(t, rule.cos_theta[i]);
      const auto dw = derivative_weights(p, k, rho_);
      double inner = 0.0;
      for (int q = 0; q <= k; ++q) inner += dw.g[static_cast<std::size_t>(q)] * u[static_cast<std::size_t>(q)][i];
      total += rule.weight[i] * std::exp(-rho_ * ls[i]) * inner;
    }
    return total;
  };
  int order = polar_order(t);
  double prev = eval(order);
  for (int next = order * 2; next <= config_.density_max_order; next *= 2) {
    const double cur = eval(next);
    if (std::abs(cur - prev) <= config_.quad.tolerance * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  fail(ErrorKind::quadrature_budget, "density quadrature at t = " + num(t) +
                                         " did not converge by order " + std::to_string(config_.density_max_order));
}

double DensityEvaluator::value(double t) const {
  require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
  return sum_direct(t, 0);
}

double DensityEvaluator::derivative(double t, int k) const {
  check_derivative_order(k);
  require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
  if (k > max_order_) {
    fail(ErrorKind::below_threshold, "evaluator was built for derivatives up to order " +
                                         std::to_string(max_order_) + ", requested " + std::to_string(k));
  }
  if (t == 0.0 && k > 0 && k % 2 == 0) {
    fail(ErrorKind::invalid_argument, "even derivatives at t = 0 are outside the supported domain (use t > 0)");
  }
  return sum_direct(t, k);
}

void DensityEvaluator::ensure_table(double u_max, int k) const {
  std::lock_guard lock(table_mutex_);
  if (table_k_ >= k && table_u_max_ >= u_max) return;
  const int kk = std::max(k, table_k_);
  const double reach = std::max(u_max, table_u_max_);
  table_h_ = 1.0 / (kTableStepsPerWave * config_.lambda_max);
  const std::size_t count = static_cast<std::size_t>(std::ceil(reach / table_h_)) + 2;
  std::vector<double> us(count);
  for (std::size_t i = 0; i < count; ++i) us[i] = table_h_ * static_cast<double>(i);
  table_ = spectral_sums(coeff_, config_.step(), us, kk + 2, config_.threads);
  table_k_ = kk;
  table_u_max_ = table_h_ * static_cast<double>(count - 2);
}

double DensityEvaluator::sum_fast(double t, int k, int order) const {
  const PolarRule& rule = polar_rule(conv_.space.dim, order);
  const double h = table_h_;
  double total = 0.0;
  std::array<double, kMaxDerivative + 1> u{};
  for (std::size_t i = 0; i < rule.cos_theta.size(); ++i) {
    const double x = rule.cos_theta[i];
    const double l = polar::log_kernel(t, x);
    const double al = std::abs(l);
    const double pos = al / h;
    std::size_t cell = static_cast<std::size_t>(pos);
    if (cell + 1 >= table_[0].size()) cell = table_[0].size() - 2;
    const double s = pos - static_cast<double>(cell);
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double h3 = 0.5 * s3 - s4 + 0.5 * s5;
    const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    const double h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    for (int q = 0; q <= k; ++q) {
      const auto& f0 = table_[static_cast<std::size_t>(q)];
      const auto& f1 = table_[static_cast<std::size_t>(q) + 1];
      const auto& f2 = table_[static_cast<std::size_t>(q) + 2];
      double v = h0 * f0[cell] + h5 * f0[cell + 1] + h * (h1 * f1[cell] + h4 * f1[cell + 1]) +
                 h * h * (h2 * f2[cell] + h3 * f2[cell + 1]);
      if (l < 0.0 && q % 2 == 1) v = -v;
      u[static_cast<std::size_t>(q)] = v;
    }
    double inner;
    if (k == 0) {
      inner = u[0];
    } else {
      const auto dw = derivative_weights(polar::log_kernel_dt(t, x), k, rho_);
      inner = 0.0;
      for (int q = 0; q <= k; ++q) inner += dw.g[static_cast<std::size_t>(q)] * u[static_cast<std::size_t>(q)];
    }
    total += rule.weight[i] * std::exp(-rho_ * l) * inner;
  }
  return total;
}

std::vector<double> DensityEvaluator::fast_values(std::span<const double> ts, int k) const {
  check_derivative_order(k);
  if (k > max_order_) {
    fail(ErrorKind::below_threshold, "evaluator was built for derivatives up to order " +
                                         std::to_string(max_order_) + ", requested " + std::to_string(k));
  }
  double reach = 0.0;
  for (double t : ts) {
    require(std::isfinite(t) && t >= 0.0, "radial point must satisfy t >= 0");
    reach = std::max(reach, t);
  }
  if (ts.empty()) return {};
  ensure_table(reach, k);
  std::vector<double> out(ts.size());
  std::vector<int> orders(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    orders[i] = polar_order(ts[i]);
    polar_rule(conv_.space.dim, orders[i]);
  }
  parallel_for(ts.size(), config_.threads, [&](std::size_t i) {
    const double t = ts[i];
    int order = orders[i];
    double prev = sum_fast(t, k, order);
    for (int next = order * 2;; next *= 2) {
      if (next > config_.density_max_order) {
        fail(ErrorKind::quadrature_budget, "density quadrature at t = " + num(t) +
                                               " did not converge by order " +
                                               std::to_string(config_.density_max_order));
      }
      const double cur = sum_fast(t, k, next);
      if (std::abs(cur - prev) <= config_.quad.tolerance * std::max(1.0, std::abs(cur))) {
        out[i] = cur;
        return;
      }
      prev = cur;
    }
  });
  return out;
}

DensityProfile DensityEvaluator::profile(std::span<const double> grid) const {
  require(grid.size() >= 2, "profile grid needs at least 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) require(grid[i] > grid[i - 1], "profile grid must be increasing");
  DensityProfile prof;
  prof.grid.assign(grid.begin(), grid.end());
  prof.values = fast_values(grid, 0);
  prof.jacobian.resize(grid.size());
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    prof.jacobian[i] = radial_jacobian(conv_.space, grid[i]);
    integrand[i] = prof.values[i] * prof.jacobian[i];
  }
  prof.mass = cumulative_trapezoid(prof.grid, integrand).back();
  bool uniform = true;
  const double h = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * h) uniform = false;
  }
  if (uniform) prof.mass = simpson(integrand, h);
  return prof;
}

std::vector<double> DensityEvaluator::default_grid(std::size_t points) const {
  require(points >= 2, "profile grid needs at least 2 points");
  const double end = support_radius() + std::max(0.5, 2.0 * leakage_width());
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = end * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

double density_at(const OrbitalConvolution& conv, double t, const SpectralConfig& config) {
  return DensityEvaluator(conv, config, 0).value(t);
}

double density_derivative(const OrbitalConvolution& conv, double t, int k, const SpectralConfig& config) {
  return DensityEvaluator(conv, config, k).derivative(t, k);
}

double real_space_l2(const DensityProfile& profile) {
  require(profile.grid.size() >= 2 && profile.values.size() == profile.grid.size() &&
              profile.jacobian.size() == profile.grid.size(),
          "profile arrays are inconsistent");
  std::vector<double> integrand(profile.grid.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = profile.values[i] * profile.values[i] * profile.jacobian[i];
  const double h = profile.grid[1] - profile.grid[0];
  bool uniform = true;
  for (std::size_t i = 1; i < profile.grid.size(); ++i) {
    if (std::abs((profile.grid[i] - profile.grid[i - 1]) - h) > 1e-9 * h) uniform = false;
  }
  return uniform ? simpson(integrand, h) : cumulative_trapezoid(profile.grid, integrand).back();
}

RegularityReport regularity_report(const OrbitalConvolution& conv) {
  RegularityReport rep;
  const int n = conv.space.dim;
  rep.threshold_r = n + 1;
  rep.l2_threshold_met = conv.r() >= n + 1;
  rep.ck_max = std::max(-1, conv.r() - n - 1);
  return rep;
}

}  // namespace orbconv
