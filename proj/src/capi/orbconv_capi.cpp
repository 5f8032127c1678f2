#include "orbconv/orbconv.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "../verify/criteria.hpp"
#include "orbconv/cartan_data.hpp"
#include "orbconv/error.hpp"
#include "orbconv/montecarlo.hpp"
#include "orbconv/product_spaces.hpp"
#include "orbconv/spherical.hpp"
#include "orbconv/transform.hpp"

struct orbconv_space {
  orbconv::SpaceDescriptor space;
};

struct orbconv_conv {
  orbconv::OrbitalConvolution conv;
};

struct orbconv_product {
  orbconv::ProductConvolution pconv;
};

namespace {

using namespace orbconv;

thread_local std::string last_error;

orbconv_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return ORBCONV_INVALID_ARGUMENT;
    case ErrorKind::unsupported: return ORBCONV_UNSUPPORTED;
    case ErrorKind::below_threshold: return ORBCONV_BELOW_THRESHOLD;
    case ErrorKind::quadrature_budget: return ORBCONV_QUADRATURE_BUDGET;
    case ErrorKind::invariant_violation: return ORBCONV_INVARIANT_VIOLATION;
    case ErrorKind::io: return ORBCONV_IO_ERROR;
  }
  return ORBCONV_INTERNAL_ERROR;
}

template <class Fn>
orbconv_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return ORBCONV_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return ORBCONV_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ORBCONV_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ORBCONV_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return ORBCONV_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::invalid_argument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

QuadratureConfig to_quad(const orbconv_quadrature* q) {
  QuadratureConfig out;
  if (q) {
    out.min_order = q->min_order;
    out.max_order = q->max_order;
    out.tolerance = q->tolerance;
  }
  return out;
}

void fill(orbconv_spectral* out, const SpectralConfig& c) {
  out->lambda_max = c.lambda_max;
  out->lambda_points = c.lambda_points;
  out->heat_time = c.heat_time;
  out->max_order = c.quad.max_order;
  out->density_max_order = c.density_max_order;
  out->threads = c.threads;
}

SpectralConfig to_spectral(const orbconv_spectral* c, SpectralConfig base) {
  if (c) {
    base.lambda_max = c->lambda_max;
    base.lambda_points = c->lambda_points;
    base.heat_time = c->heat_time;
    base.quad.max_order = c->max_order;
    base.density_max_order = c->density_max_order;
    base.threads = c->threads;
  }
  require(std::isfinite(base.lambda_max) && base.lambda_max > 0.0, "lambda_max must be positive");
  require(base.lambda_points >= 101, "lambda_points must be at least 101");
  require(base.quad.max_order >= base.quad.min_order, "max_order must be at least the minimum order");
  return base;
}

orbconv_verdict verdict_of(Verdict v) {
  switch (v) {
    case Verdict::finite: return ORBCONV_VERDICT_FINITE;
    case Verdict::divergent: return ORBCONV_VERDICT_DIVERGENT;
    case Verdict::marginal: return ORBCONV_VERDICT_MARGINAL;
  }
  return ORBCONV_VERDICT_MARGINAL;
}

void write_profile(const DensityProfile& p, double* values, double* jacobian, double* mass) {
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    values[i] = p.values[i];
    if (jacobian) jacobian[i] = p.jacobian[i];
  }
  if (mass) *mass = p.mass;
}

}  // namespace

extern "C" {

const char* orbconv_last_error(void) { return last_error.c_str(); }

const char* orbconv_status_name(orbconv_status status) {
  switch (status) {
    case ORBCONV_OK: return "ok";
    case ORBCONV_INVALID_ARGUMENT: return "invalid_argument";
    case ORBCONV_UNSUPPORTED: return "unsupported";
    case ORBCONV_BELOW_THRESHOLD: return "below_threshold";
    case ORBCONV_QUADRATURE_BUDGET: return "quadrature_budget";
    case ORBCONV_INVARIANT_VIOLATION: return "invariant_violation";
    case ORBCONV_IO_ERROR: return "io_error";
    case ORBCONV_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* orbconv_verdict_name(orbconv_verdict verdict) {
  switch (verdict) {
    case ORBCONV_VERDICT_FINITE: return "finite";
    case ORBCONV_VERDICT_DIVERGENT: return "divergent";
    case ORBCONV_VERDICT_MARGINAL: return "marginal";
  }
  return "unknown";
}

const char* orbconv_version(void) { return "1.0.0"; }

void orbconv_free_string(char* s) { std::free(s); }

void orbconv_quadrature_defaults(orbconv_quadrature* quad) {
  if (!quad) return;
  const QuadratureConfig q;
  quad->min_order = q.min_order;
  quad->max_order = q.max_order;
  quad->tolerance = q.tolerance;
}

void orbconv_spectral_l2_defaults(orbconv_spectral* config) {
  if (config) fill(config, SpectralConfig::l2_defaults());
}

void orbconv_spectral_density_defaults(orbconv_spectral* config) {
  if (config) fill(config, SpectralConfig::density_defaults());
}

orbconv_status orbconv_space_create(const char* family, const int* params, size_t count, orbconv_space** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    if (count) need(params, "params");
    *out = new orbconv_space{build_space(family, std::span<const int>(params, count))};
  });
}

orbconv_status orbconv_space_from_json(const char* json, orbconv_space** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto space = nlohmann::json::parse(json).get<SpaceDescriptor>();
    *out = new orbconv_space{std::move(space)};
  });
}

orbconv_status orbconv_space_to_json(const orbconv_space* space, char** json) {
  return guarded([&] {
    need(space, "space");
    need(json, "json");
    nlohmann::json j = space->space;
    *json = copy_string(j.dump());
  });
}

void orbconv_space_destroy(orbconv_space* space) { delete space; }

orbconv_status orbconv_space_dim(const orbconv_space* space, int* dim) {
  return guarded([&] {
    need(space, "space");
    need(dim, "dim");
    *dim = space->space.dim;
  });
}

orbconv_status orbconv_space_rank(const orbconv_space* space, int* rank) {
  return guarded([&] {
    need(space, "space");
    need(rank, "rank");
    *rank = space->space.rank;
  });
}

orbconv_status orbconv_space_rho(const orbconv_space* space, double* out, size_t capacity) {
  return guarded([&] {
    need(space, "space");
    need(out, "rho");
    const auto r = rho(space->space).coords;
    require(capacity >= r.size(), "rho needs capacity for " + std::to_string(r.size()) + " entries");
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
  });
}

orbconv_status orbconv_radial_jacobian(const orbconv_space* space, double t, double* value) {
  return guarded([&] {
    need(space, "space");
    need(value, "value");
    *value = radial_jacobian(space->space, t);
  });
}

orbconv_status orbconv_root_separation_constant(const double* roots, size_t count, size_t rank, double* value) {
  return guarded([&] {
    need(roots, "roots");
    need(value, "value");
    require(count >= 1 && rank >= 1, "need at least one root of positive rank");
    std::vector<RestrictedRoot> rs(count);
    for (std::size_t i = 0; i < count; ++i) rs[i].vector.assign(roots + i * rank, roots + (i + 1) * rank);
    *value = root_separation_constant(rs);
  });
}

orbconv_status orbconv_spherical(const orbconv_space* space, double lambda, double t, const orbconv_quadrature* quad,
                                 double* re, double* im) {
  return guarded([&] {
    need(space, "space");
    need(re, "re");
    const auto v = spherical_fn(space->space, lambda, t, to_quad(quad)).value;
    *re = v.real();
    if (im) *im = v.imag();
  });
}

orbconv_status orbconv_plancherel_weight(const orbconv_space* space, double lambda, double* weight) {
  return guarded([&] {
    need(space, "space");
    need(weight, "weight");
    *weight = plancherel_weight(space->space, lambda);
  });
}

orbconv_status orbconv_decay_envelope(const orbconv_space* space, double t, double lambda, double* value) {
  return guarded([&] {
    need(space, "space");
    need(value, "value");
    *value = decay_envelope(space->space, t, lambda);
  });
}

orbconv_status orbconv_conv_create(const orbconv_space* space, const double* generators, size_t r,
                                   orbconv_conv** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    require(r >= 1, "need at least one generator");
    need(generators, "generators");
    *out = new orbconv_conv{OrbitalConvolution::make(space->space, std::vector<double>(generators, generators + r))};
  });
}

void orbconv_conv_destroy(orbconv_conv* conv) { delete conv; }

orbconv_status orbconv_transform(const orbconv_conv* conv, double lambda, const orbconv_quadrature* quad, double* re,
                                 double* im) {
  return guarded([&] {
    need(conv, "conv");
    need(re, "re");
    const auto v = transform_of_convolution(conv->conv, lambda, to_quad(quad));
    *re = v.real();
    if (im) *im = v.imag();
  });
}

orbconv_status orbconv_l2_norm_sq(const orbconv_conv* conv, const orbconv_spectral* config,
                                  orbconv_l2_report* report) {
  return guarded([&] {
    need(conv, "conv");
    need(report, "report");
    const auto rep = l2_norm_sq(conv->conv, to_spectral(config, SpectralConfig::l2_defaults()));
    report->tail_exponent = rep.tail_exponent;
    report->tail_exponent_stderr = rep.tail_exponent_stderr;
    report->tail_amplitude = rep.tail_amplitude;
    report->verdict = verdict_of(rep.verdict);
    report->has_value = rep.value.has_value();
    report->value = rep.value.value_or(0.0);
    report->truncated_value = rep.truncated_value;
    report->tail_completion = rep.tail_completion;
    report->threshold_r = rep.threshold_r;
  });
}

orbconv_status orbconv_density_at(const orbconv_conv* conv, double t, const orbconv_spectral* config,
                                  double* value) {
  return guarded([&] {
    need(conv, "conv");
    need(value, "value");
    *value = density_at(conv->conv, t, to_spectral(config, SpectralConfig::density_defaults()));
  });
}

orbconv_status orbconv_density_derivative(const orbconv_conv* conv, double t, int k, const orbconv_spectral* config,
                                          double* value) {
  return guarded([&] {
    need(conv, "conv");
    need(value, "value");
    *value = density_derivative(conv->conv, t, k, to_spectral(config, SpectralConfig::density_defaults()));
  });
}

orbconv_status orbconv_density_profile(const orbconv_conv* conv, const orbconv_spectral* config, size_t points,
                                       double* grid, double* values, double* jacobian, double* mass) {
  return guarded([&] {
    need(conv, "conv");
    need(grid, "grid");
    need(values, "values");
    require(points >= 3, "a profile needs at least 3 points");
    DensityEvaluator ev(conv->conv, to_spectral(config, SpectralConfig::density_defaults()));
    const auto p = ev.profile(ev.default_grid(points));
    for (std::size_t i = 0; i < points; ++i) grid[i] = p.grid[i];
    write_profile(p, values, jacobian, mass);
  });
}

orbconv_status orbconv_density_on_grid(const orbconv_conv* conv, const orbconv_spectral* config, const double* grid,
                                       size_t points, double* values, double* jacobian, double* mass) {
  return guarded([&] {
    need(conv, "conv");
    need(grid, "grid");
    need(values, "values");
    require(points >= 1, "grid must not be empty");
    DensityEvaluator ev(conv->conv, to_spectral(config, SpectralConfig::density_defaults()));
    write_profile(ev.profile(std::span<const double>(grid, points)), values, jacobian, mass);
  });
}

orbconv_status orbconv_density_derivative_on_grid(const orbconv_conv* conv, const orbconv_spectral* config, int k,
                                                  const double* grid, size_t points, double* values) {
  return guarded([&] {
    need(conv, "conv");
    need(grid, "grid");
    need(values, "values");
    require(k >= 1, "derivative order must be at least 1");
    require(points >= 1, "grid must not be empty");
    DensityEvaluator ev(conv->conv, to_spectral(config, SpectralConfig::density_defaults()), k);
    const auto v = ev.fast_values(std::span<const double>(grid, points), k);
    std::memcpy(values, v.data(), v.size() * sizeof(double));
  });
}

orbconv_status orbconv_effective_heat_time(const orbconv_spectral* config, double* s) {
  return guarded([&] {
    need(s, "s");
    *s = to_spectral(config, SpectralConfig::density_defaults()).effective_heat_time();
  });
}

orbconv_status orbconv_regularity_report(const orbconv_conv* conv, orbconv_regularity* report) {
  return guarded([&] {
    need(conv, "conv");
    need(report, "report");
    const auto rep = regularity_report(conv->conv);
    report->l2_threshold_met = rep.l2_threshold_met;
    report->ck_max = rep.ck_max;
    report->threshold_r = rep.threshold_r;
    report->max_dim = conv->conv.space.dim;
    report->absolute_continuity_met = conv->conv.r() >= conv->conv.space.dim;
  });
}

orbconv_status orbconv_sample(const orbconv_conv* conv, size_t n, uint64_t seed, unsigned threads, double* samples) {
  return guarded([&] {
    need(conv, "conv");
    need(samples, "samples");
    const auto s = sample_convolution(conv->conv, n, seed, threads);
    std::memcpy(samples, s.data(), s.size() * sizeof(double));
  });
}

orbconv_status orbconv_histogram(const orbconv_space* space, const double* samples, size_t n, int bins, double lo,
                                 double hi, double* centers, uint64_t* counts, double* density_estimate) {
  return guarded([&] {
    need(space, "space");
    need(samples, "samples");
    const std::span<const double> s(samples, n);
    const auto h = hi > lo ? histogram(space->space, s, bins, lo, hi) : histogram(space->space, s, bins);
    const auto c = h.centers();
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      if (centers) centers[b] = c[b];
      if (counts) counts[b] = h.counts[b];
      if (density_estimate) density_estimate[b] = h.density_estimate[b];
    }
  });
}

orbconv_status orbconv_compare(const orbconv_conv* conv, const double* samples, size_t n, int bins,
                               const orbconv_spectral* config, size_t profile_points, orbconv_comparison* out) {
  return guarded([&] {
    need(conv, "conv");
    need(samples, "samples");
    need(out, "out");
    require(profile_points >= 3, "a profile needs at least 3 points");
    DensityEvaluator ev(conv->conv, to_spectral(config, SpectralConfig::density_defaults()));
    const auto profile = ev.profile(ev.default_grid(profile_points));
    const auto h = histogram(conv->conv.space, std::span<const double>(samples, n), bins, 0.0,
                             conv->conv.support_radius() * (1.0 + 1e-9) + 1e-9);
    const auto cmp = compare(h, profile);
    out->l1 = cmp.l1;
    out->sup = cmp.sup;
    out->ks = cmp.ks;
  });
}

orbconv_status orbconv_empirical_transform(const orbconv_space* space, const double* samples, size_t n, double lambda,
                                           double* mean_re, double* mean_im, double* standard_error) {
  return guarded([&] {
    need(space, "space");
    need(samples, "samples");
    need(mean_re, "mean_re");
    const auto e = empirical_transform(space->space, std::span<const double>(samples, n), lambda);
    *mean_re = e.mean.real();
    if (mean_im) *mean_im = e.mean.imag();
    if (standard_error) *standard_error = e.standard_error;
  });
}

orbconv_status orbconv_product_create(const orbconv_space* const* factors, size_t s, const double* generators,
                                      size_t r, orbconv_product** out) {
  return guarded([&] {
    need(factors, "factors");
    need(generators, "generators");
    need(out, "out");
    std::vector<SpaceDescriptor> fs;
    for (std::size_t j = 0; j < s; ++j) {
      need(factors[j], "factor");
      fs.push_back(factors[j]->space);
    }
    std::vector<std::vector<double>> gens(r);
    for (std::size_t i = 0; i < r; ++i) gens[i].assign(generators + i * s, generators + (i + 1) * s);
    *out = new orbconv_product{ProductConvolution::make(ProductSpace::make(std::move(fs)), std::move(gens))};
  });
}

void orbconv_product_destroy(orbconv_product* product) { delete product; }

orbconv_status orbconv_product_density_at(const orbconv_product* product, const double* t,
                                          const orbconv_spectral* config, double* value) {
  return guarded([&] {
    need(product, "product");
    need(t, "t");
    need(value, "value");
    *value = product_density_at(product->pconv,
                                std::span<const double>(t, static_cast<std::size_t>(product->pconv.space.s())),
                                to_spectral(config, SpectralConfig::density_defaults()));
  });
}

orbconv_status orbconv_product_l2_norm_sq(const orbconv_product* product, const orbconv_spectral* config,
                                          orbconv_verdict* verdict, double* value) {
  return guarded([&] {
    need(product, "product");
    need(verdict, "verdict");
    const auto rep = product_l2_norm_sq(product->pconv, to_spectral(config, SpectralConfig::l2_defaults()));
    *verdict = verdict_of(rep.verdict);
    if (value) *value = rep.value.value_or(0.0);
  });
}

orbconv_status orbconv_product_mass(const orbconv_product* product, const orbconv_spectral* config, size_t points,
                                    double* mass) {
  return guarded([&] {
    need(product, "product");
    need(mass, "mass");
    require(points >= 3, "a profile needs at least 3 points");
    *mass = product_profile(product->pconv, points, to_spectral(config, SpectralConfig::density_defaults())).mass;
  });
}

orbconv_status orbconv_product_regularity_report(const orbconv_product* product, orbconv_regularity* report) {
  return guarded([&] {
    need(product, "product");
    need(report, "report");
    const auto rep = product_regularity_report(product->pconv);
    report->l2_threshold_met = rep.l2_threshold_met;
    report->ck_max = rep.ck_max;
    report->threshold_r = rep.threshold_r;
    report->max_dim = rep.max_dim;
    report->absolute_continuity_met = rep.absolute_continuity_met;
  });
}

int orbconv_criterion_count(void) { return verify::criterion_count(); }

orbconv_status orbconv_verify(int criterion, int quick, int* passed, char** report) {
  return guarded([&] {
    need(passed, "passed");
    verify::criterion_name(criterion);
    const auto result = verify::run_criterion(criterion, quick != 0);
    *passed = result.passed;
    if (report) *report = copy_string(verify::to_json(result).dump());
  });
}

}  // extern "C"
