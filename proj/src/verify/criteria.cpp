#include "criteria.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "orbconv/cartan_data.hpp"
#include "orbconv/error.hpp"
#include "orbconv/montecarlo.hpp"
#include "orbconv/numerics.hpp"
#include "orbconv/product_spaces.hpp"
#include "orbconv/spherical.hpp"
#include "orbconv/transform.hpp"

namespace orbconv::verify {

namespace {

SpaceDescriptor hyperbolic(int n) {
  const std::array<int, 1> p{n};
  return build_space("real-hyperbolic", p);
}

struct Recorder {
  CriterionResult& out;

  void le(const std::string& name, double value, double bound) {
    out.checks.push_back({name, value, bound, "<=", value <= bound});
  }
  void ge(const std::string& name, double value, double bound) {
    out.checks.push_back({name, value, bound, ">=", value >= bound});
  }
  void is_true(const std::string& name, bool ok) {
    out.checks.push_back({name, ok ? 1.0 : 0.0, 1.0, "==", ok});
  }
  void info(const std::string& name, double value) {
    out.checks.push_back({name, value, 0.0, "info", true});
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// 1. phi(0) = 1, Weyl symmetry, and the H^2 conical-function oracle.
void spherical_correctness(Recorder& rec, bool quick) {
  const QuadratureConfig quad;
  double at_origin = 0.0;
  double symmetry = 0.0;
  for (int n : {2, 3, 5}) {
    const auto space = hyperbolic(n);
    for (int j = 0; j < 50; ++j) {
      const double lambda = 20.0 * j / 49.0;
      at_origin = std::max(at_origin, std::abs(spherical_fn(space, lambda, 0.0, quad).value - 1.0));
      for (double t : {0.5, 1.0, 2.5}) {
        const auto plus = spherical_fn(space, lambda, t, quad).value;
        const auto minus = spherical_fn(space, -lambda, t, quad).value;
        symmetry = std::max(symmetry, std::abs(plus - minus));
      }
    }
  }
  rec.le("max |phi_lambda(0) - 1| (n = 2, 3, 5; 50 lambdas)", at_origin, 1e-10);
  rec.le("max |phi_lambda - phi_-lambda| (n = 2, 3, 5; 50 lambdas)", symmetry, 1e-10);

  const auto h2 = hyperbolic(2);
  const int nl = quick ? 11 : 41;
  const int nt = quick ? 6 : 21;
  double worst = 0.0;
  for (int i = 0; i < nl; ++i) {
    const double lambda = 20.0 * i / (nl - 1);
    for (int j = 0; j < nt; ++j) {
      const double t = 5.0 * j / (nt - 1);
      const double ref = oracle::conical_function(lambda, t);
      const auto v = spherical_fn(h2, lambda, t, quad).value;
      worst = std::max(worst, std::abs(v - ref));
    }
  }
  rec.le("max |phi - conical oracle| on H^2, lambda in [0,20], t in [0,5]", worst, 1e-8);
}

// 2. Monte Carlo mean of phi over samples of nu_1 * nu_2 against the product.
void product_formula(Recorder& rec, bool quick) {
  const auto h2 = hyperbolic(2);
  const auto conv = OrbitalConvolution::make(h2, {1.0, 1.5});
  const std::size_t n = quick ? 20000 : 100000;
  const auto samples = sample_convolution(conv, n, 20240601);
  rec.is_true("samples within |t1 - t2| <= t <= t1 + t2", oracle::triangle_band(samples, 1.0, 1.5));
  for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
    const auto emp = empirical_transform(h2, samples, lambda);
    const double expected = oracle::conical_function(lambda, 1.0) * oracle::conical_function(lambda, 1.5);
    const double z = std::abs(emp.mean.real() - expected) / emp.standard_error;
    rec.le("|MC mean - phi(a1) phi(a2)| / stderr at lambda = " + fmt(lambda), z, 3.0);
  }
}

// 3. log-log slope of |c(lambda)|^{-2} is n - 1.
void plancherel_growth(Recorder& rec, bool) {
  for (int n : {2, 3}) {
    const auto space = hyperbolic(n);
    std::vector<double> x, y;
    double spread_lo = 1e300, spread_hi = 0.0;
    for (int j = 0; j < 60; ++j) {
      const double lambda = 10.0 * std::pow(100.0, j / 59.0);
      const double w = plancherel_weight(space, lambda);
      x.push_back(std::log(lambda));
      y.push_back(std::log(w));
      const double ratio = w / oracle::hyperbolic_c_minus2(n, lambda);
      spread_lo = std::min(spread_lo, ratio);
      spread_hi = std::max(spread_hi, ratio);
    }
    const auto fit = fit_line(x, y);
    rec.le("|slope - (n - 1)| for n = " + std::to_string(n), std::abs(fit.slope - (n - 1)), 0.05);
    rec.le("relative spread of weight / closed form for n = " + std::to_string(n), spread_hi / spread_lo - 1.0,
           1e-10);
  }
}

// 4. L^2 verdicts around r = n + 1.
void l2_threshold(Recorder& rec, bool, std::string& note) {
  const auto config = SpectralConfig::l2_defaults();
  struct Case {
    int n;
    int r;
    Verdict expected;
    double exponent;  // NaN: not gated
  };
  const std::array<Case, 5> cases{{{2, 2, Verdict::divergent, -1.0},
                                   {2, 3, Verdict::finite, -2.0},
                                   {2, 4, Verdict::finite, -3.0},
                                   {3, 3, Verdict::divergent, NAN},
                                   {3, 4, Verdict::finite, NAN}}};
  for (const auto& c : cases) {
    const auto conv = OrbitalConvolution::make(hyperbolic(c.n), std::vector<double>(c.r, 1.0));
    const auto rep = l2_norm_sq(conv, config);
    const std::string tag = "H^" + std::to_string(c.n) + " r = " + std::to_string(c.r);
    rec.is_true(tag + " verdict " + to_string(c.expected) + " (got " + to_string(rep.verdict) + ")",
                rep.verdict == c.expected);
    if (std::isnan(c.exponent)) {
      rec.info(tag + " tail exponent", rep.tail_exponent);
    } else {
      rec.le(tag + " |tail exponent - (" + fmt(c.exponent) + ")|", std::abs(rep.tail_exponent - c.exponent), 0.1);
    }
  }
  note =
      "the tail exponent on H^n is (n - 1)(1 - r); on H^3 at r = 3 it is -4, so the L^2 integral converges one "
      "step below r = n + 1";
}

// 5. Density: mass, positivity, support and agreement with Monte Carlo.
void density_validity(Recorder& rec, bool quick, std::string& note) {
  const auto h2 = hyperbolic(2);
  const auto conv = OrbitalConvolution::make(h2, {1.0, 1.0, 1.0});
  const auto config = SpectralConfig::density_defaults();
  DensityEvaluator ev(conv, config);
  const auto profile = ev.profile(ev.default_grid(quick ? 1001 : 2001));
  rec.le("|mass - 1|", std::abs(profile.mass - 1.0), 1e-3);
  const double lowest = *std::min_element(profile.values.begin(), profile.values.end());
  rec.ge("min density", lowest, -1e-6);
  const double peak = *std::max_element(profile.values.begin(), profile.values.end());
  const double radius = conv.support_radius();
  const double band = ev.leakage_width();
  double beyond = 0.0;
  double past_band = 0.0;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    const double t = profile.grid[i];
    if (t > radius) beyond = std::max(beyond, std::abs(profile.values[i]) / peak);
    if (t >= radius + band) past_band = std::max(past_band, std::abs(profile.values[i]) / peak);
  }
  rec.le("max |density| / peak for t > 3", beyond, 1e-4);
  rec.info("max |density| / peak for t >= 3 + 8 sqrt(s)", past_band);
  const double inner = ev.value(radius - band) / peak;
  rec.info("density / peak at t = 3 - 8 sqrt(s)", inner);
  note = "the density is still " + fmt(inner) + " of its peak just inside t = 3 and jumps to 0 there; the heat "
         "window exp(-s(lambda^2 + rho^2)), s = " + fmt(ev.heat_time()) + ", spreads the step over 8 sqrt(s) = " +
         fmt(band) + " on both sides, and any finite spectral cutoff leaves such a band";

  const std::size_t n = quick ? 100000 : 1000000;
  const auto samples = sample_convolution(conv, n, 1234567);
  const double top = *std::max_element(samples.begin(), samples.end());
  rec.le("max sample radius - 3", top - 3.0, 1e-9);
  const auto hist = histogram(h2, samples, 100, 0.0, 3.0);
  const auto cmp = compare(hist, profile);
  rec.le("L1 distance to the Monte Carlo histogram", cmp.l1, 0.05);
  rec.le("KS distance to the Monte Carlo histogram", cmp.ks, 0.01);
  rec.info("Monte Carlo density / peak in the last bin below t = 3", hist.density_estimate.back() / peak);
}

// 6. Spectral L^2 value against the real-space integral of rho^2 J.
void plancherel_consistency(Recorder& rec, bool quick) {
  const auto h2 = hyperbolic(2);
  auto l2 = SpectralConfig::l2_defaults();
  if (quick) {
    l2.lambda_max = 400.0;
    l2.lambda_points = 4001;
  }
  for (int r : {3, 4}) {
    const auto conv = OrbitalConvolution::make(h2, std::vector<double>(r, 1.0));
    const auto rep = l2_norm_sq(conv, l2);
    if (!rep.value) {
      rec.is_true("r = " + std::to_string(r) + " spectral value available", false);
      continue;
    }
    DensityEvaluator ev(conv, SpectralConfig::density_defaults());
    const double real = real_space_l2(ev.profile(ev.default_grid(4001)));
    rec.le("r = " + std::to_string(r) + " |spectral - real space| / spectral", std::abs(*rep.value - real) / *rep.value,
           0.01);
  }
}

// 7. First derivative at r = 4 and the refusal at r = 3.
void ck_threshold(Recorder& rec, bool) {
  const auto h2 = hyperbolic(2);
  const auto conv = OrbitalConvolution::make(h2, {1.0, 1.0, 1.0, 1.0});
  DensityEvaluator ev(conv, SpectralConfig::density_defaults(), 1);
  const double h = 1e-4;
  for (double t : {0.5, 1.0, 2.0}) {
    const double analytic = ev.derivative(t, 1);
    const double fd = (ev.value(t + h) - ev.value(t - h)) / (2.0 * h);
    rec.le("t = " + fmt(t) + " |d rho/dt - central difference| / |central difference|",
           std::abs(analytic - fd) / std::abs(fd), 1e-4);
  }
  rec.le("|d rho/dt at 0|", std::abs(ev.derivative(0.0, 1)), 1e-6);
  bool refused = false;
  try {
    density_derivative(OrbitalConvolution::make(h2, {1.0, 1.0, 1.0}), 1.0, 1);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::below_threshold;
  }
  rec.is_true("k = 1 refused at r = 3 with below_threshold", refused);
}

// 8. H^2 x H^2: mass, L^2 factorization and threshold arithmetic.
void product_spaces(Recorder& rec, bool quick) {
  const auto h2 = hyperbolic(2);
  const auto h3 = hyperbolic(3);
  const auto space = ProductSpace::make({h2, h2});
  const auto pconv = ProductConvolution::make(space, {{1.0, 0.8}, {1.0, 0.8}, {1.0, 0.8}});
  const auto prof = product_profile(pconv, quick ? 1001 : 2001);
  rec.le("|product mass - 1|", std::abs(prof.mass - 1.0), 2e-3);

  auto l2 = SpectralConfig::l2_defaults();
  if (quick) {
    l2.lambda_max = 400.0;
    l2.lambda_points = 4001;
  }
  const auto prep = product_l2_norm_sq(pconv, l2);
  rec.is_true("product L^2 verdict finite", prep.verdict == Verdict::finite && prep.value.has_value());
  if (prep.value) {
    double factors = 1.0;
    for (int j = 0; j < 2; ++j) factors *= *l2_norm_sq(pconv.factor(j), l2).value;
    rec.le("|product L^2 - product of factor L^2| / product", std::abs(*prep.value - factors) / factors, 0.02);

    // Real-space double integral of (rho_1 rho_2)^2 J_1 J_2 over the product grid.
    const auto& f1 = prof.factors[0];
    const auto& f2 = prof.factors[1];
    const double h1 = f1.grid[1] - f1.grid[0];
    const double h2s = f2.grid[1] - f2.grid[0];
    std::vector<double> outer(f1.grid.size());
    std::vector<double> inner(f2.grid.size());
    for (std::size_t i = 0; i < f1.grid.size(); ++i) {
      for (std::size_t j = 0; j < f2.grid.size(); ++j) {
        const double v = f1.values[i] * f2.values[j];
        inner[j] = v * v * f1.jacobian[i] * f2.jacobian[j];
      }
      outer[i] = simpson(inner, h2s);
    }
    const double real = simpson(outer, h1);
    rec.le("|product L^2 - real-space double integral| / product", std::abs(*prep.value - real) / *prep.value, 0.02);
  }

  struct Row {
    int second_dim;
    int r;
    bool l2_met;
    int ck_max;
    bool ac_met;
  };
  const std::array<Row, 4> table{{{2, 3, true, 0, true}, {2, 4, true, 1, true}, {3, 3, false, -1, true},
                                  {3, 4, true, 0, true}}};
  for (const auto& row : table) {
    const auto s = ProductSpace::make({h2, row.second_dim == 2 ? h2 : h3});
    const auto pc = ProductConvolution::make(s, std::vector<std::vector<double>>(row.r, {1.0, 1.0}));
    const auto rep = product_regularity_report(pc);
    const bool ok = rep.l2_threshold_met == row.l2_met && rep.ck_max == row.ck_max &&
                    rep.absolute_continuity_met == row.ac_met && rep.threshold_r == std::max(2, row.second_dim) + 1;
    rec.is_true("threshold report for dims (2," + std::to_string(row.second_dim) + "), r = " + std::to_string(row.r),
                ok);
  }
  bool refused = false;
  try {
    const double at[2] = {1.0, 1.0};
    product_density_at(
        ProductConvolution::make(ProductSpace::make({h2, h3}), {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}), at);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::below_threshold && std::string(e.what()).find("factor 2") != std::string::npos;
  }
  rec.is_true("density on H^2 x H^3 at r = 3 refused naming factor 2", refused);
}

std::string samples_csv(const std::vector<double>& samples) {
  std::string out = "t\n";
  char buf[40];
  for (double s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g\n", s);
    out += buf;
  }
  return out;
}

// 9. Same seed, same bytes, independent of the thread count.
void determinism(Recorder& rec, bool quick) {
  const auto conv = OrbitalConvolution::make(hyperbolic(2), {1.0, 1.5});
  const std::size_t n = quick ? 70000 : 200000;
  const auto a = samples_csv(sample_convolution(conv, n, 7, 1));
  const auto b = samples_csv(sample_convolution(conv, n, 7, 1));
  const auto c = samples_csv(sample_convolution(conv, n, 7, 3));
  const auto d = samples_csv(sample_convolution(conv, n, 8, 1));
  rec.is_true("two runs with seed 7 are byte-identical", a == b);
  rec.is_true("1 and 3 threads are byte-identical", a == c);
  rec.is_true("seed 8 differs from seed 7", a != d);
}

// 10. Separation constant in rank one and for a pair of roots at 120 degrees.
void separation(Recorder& rec, bool) {
  double worst = 0.0;
  for (double a : {1.0, 2.5, 0.3, -0.7}) {
    const std::vector<RestrictedRoot> roots{{{a}, 1}};
    worst = std::max(worst, std::abs(root_separation_constant(roots) - std::abs(a)));
  }
  rec.le("rank one: max |c - |alpha||", worst, 0.0);
  const double pi = std::acos(-1.0);
  const std::vector<RestrictedRoot> pair{{{1.0, 0.0}, 1}, {{std::cos(2 * pi / 3), std::sin(2 * pi / 3)}, 1}};
  const double c = root_separation_constant(pair);
  const std::array<double, 4> xy{1.0, 0.0, std::cos(2 * pi / 3), std::sin(2 * pi / 3)};
  const double grid = oracle::separation_grid(xy);
  rec.le("120 degree pair: |c - 0.5|", std::abs(c - 0.5), 1e-3);
  rec.le("120 degree pair: |c - grid oracle|", std::abs(c - grid), 1e-3);
}

const std::array<const char*, 10> kNames{
    "spherical function correctness", "product formula",        "Plancherel weight growth",
    "L2 threshold",                   "density validity",       "Plancherel consistency",
    "C^k threshold",                  "product spaces",         "determinism",
    "separation constant"};

}  // namespace

int criterion_count() { return static_cast<int>(kNames.size()); }

std::string criterion_name(int id) {
  require(id >= 1 && id <= criterion_count(), "criterion must be in 1.." + std::to_string(criterion_count()));
  return kNames[static_cast<std::size_t>(id - 1)];
}

CriterionResult run_criterion(int id, bool quick) {
  CriterionResult out;
  out.id = id;
  out.name = criterion_name(id);
  out.quick = quick;
  Recorder rec{out};
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: spherical_correctness(rec, quick); break;
      case 2: product_formula(rec, quick); break;
      case 3: plancherel_growth(rec, quick); break;
      case 4: l2_threshold(rec, quick, out.note); break;
      case 5: density_validity(rec, quick, out.note); break;
      case 6: plancherel_consistency(rec, quick); break;
      case 7: ck_threshold(rec, quick); break;
      case 8: product_spaces(rec, quick); break;
      case 9: determinism(rec, quick); break;
      case 10: separation(rec, quick); break;
    }
  } catch (const Error& e) {
    static constexpr std::array<const char*, 6> kinds{"invalid_argument", "unsupported", "below_threshold",
                                                      "quadrature_budget", "invariant_violation", "io"};
    out.error_kind = kinds[static_cast<std::size_t>(e.kind())];
    rec.is_true(std::string("completed without error: ") + e.what(), false);
  } catch (const std::exception& e) {
    out.error_kind = "internal";
    rec.is_true(std::string("completed without error: ") + e.what(), false);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = !out.checks.empty() &&
               std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.passed; });
  return out;
}

nlohmann::json to_json(const CriterionResult& result) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"relation", c.relation},
                      {"passed", c.passed}});
  }
  return {{"criterion", result.id}, {"name", result.name},       {"quick", result.quick},
          {"passed", result.passed}, {"seconds", result.seconds}, {"checks", checks},
          {"note", result.note},     {"error_kind", result.error_kind}};
}

}  // namespace orbconv::verify
