// orbconv: command-line front end over the C API.
//
// Exit codes: 0 success, 1 failed verification or internal error, 2 invalid
// arguments (including refusals below a threshold), 3 quadrature budget
// exhausted, 4 invariant violation, 5 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbconv/orbconv.h"

using nlohmann::json;

namespace {

struct RunConfig {
  std::string family = "real-hyperbolic";
  int n = 2;
  int m = 1;
  int m_alpha = 1;
  int m_2alpha = 0;
  std::vector<double> t;
  double lambda_min = 0.0;
  double lambda_max = 0.0;        // 0: command default
  std::size_t lambda_points = 0;  // 0: command default
  int k_order = 0;                // polar order cap; 0: library default
  double heat_time = -1.0;
  std::size_t N = 100000;
  std::uint64_t seed = 1;
  int bins = 50;
  std::size_t points = 2001;
  int k = 0;
  bool compare = false;
  bool quick = false;
  std::vector<int> criteria;
  std::string out;
  std::string histogram_out;
  std::string format = "json";
  unsigned threads = 0;
};

struct Failure {
  int code;
  std::string message;
};

int exit_code(orbconv_status st) {
  switch (st) {
    case ORBCONV_OK: return 0;
    case ORBCONV_INVALID_ARGUMENT:
    case ORBCONV_UNSUPPORTED:
    case ORBCONV_BELOW_THRESHOLD: return 2;
    case ORBCONV_QUADRATURE_BUDGET: return 3;
    case ORBCONV_INVARIANT_VIOLATION: return 4;
    case ORBCONV_IO_ERROR: return 5;
    case ORBCONV_INTERNAL_ERROR: return 1;
  }
  return 1;
}

void check(orbconv_status st) {
  if (st != ORBCONV_OK) {
    throw Failure{exit_code(st), std::string(orbconv_status_name(st)) + ": " + orbconv_last_error()};
  }
}

[[noreturn]] void bad(const std::string& message) { throw Failure{2, message}; }

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Handles ------------------------------------------------------------------

struct Space {
  orbconv_space* p = nullptr;
  explicit Space(const RunConfig& c) {
    std::vector<int> params;
    if (c.family == "real-hyperbolic") {
      params = {c.n};
    } else if (c.family == "complex-hyperbolic") {
      params = {c.m};
    } else if (c.family == "generic-rank-one") {
      params = {c.m_alpha, c.m_2alpha};
    } else {
      bad("unknown family '" + c.family + "' (real-hyperbolic, complex-hyperbolic, generic-rank-one)");
    }
    check(orbconv_space_create(c.family.c_str(), params.data(), params.size(), &p));
  }
  ~Space() { orbconv_space_destroy(p); }
  Space(const Space&) = delete;
  Space& operator=(const Space&) = delete;
};

struct Conv {
  orbconv_conv* p = nullptr;
  Conv(const Space& s, const std::vector<double>& t) {
    if (t.empty()) bad("--t needs at least one generator");
    check(orbconv_conv_create(s.p, t.data(), t.size(), &p));
  }
  ~Conv() { orbconv_conv_destroy(p); }
  Conv(const Conv&) = delete;
  Conv& operator=(const Conv&) = delete;
};

// Config -------------------------------------------------------------------

json config_json(const RunConfig& c, const std::string& command) {
  json j{{"family", c.family}, {"threads", c.threads}, {"format", c.format}};
  if (c.family == "real-hyperbolic") j["n"] = c.n;
  if (c.family == "complex-hyperbolic") j["m"] = c.m;
  if (c.family == "generic-rank-one") {
    j["m_alpha"] = c.m_alpha;
    j["m_2alpha"] = c.m_2alpha;
  }
  if (command == "describe") return j;
  if (command == "verify") {
    j["quick"] = c.quick;
    j["criteria"] = c.criteria;
    return j;
  }
  j["t"] = c.t;
  if (command == "spherical" || command == "l2" || command == "density") {
    j["lambda_max"] = c.lambda_max;
    j["lambda_points"] = c.lambda_points;
    j["k_order"] = c.k_order;
  }
  if (command == "spherical") j["lambda_min"] = c.lambda_min;
  if (command == "density") {
    j["points"] = c.points;
    j["k"] = c.k;
    j["heat_time"] = c.heat_time;
  }
  if (command == "simulate") {
    j["N"] = c.N;
    j["seed"] = c.seed;
    j["bins"] = c.bins;
    j["compare"] = c.compare;
  }
  return j;
}

// Fills every option the command line left unset from the config file.
void apply_config_file(const std::string& path, CLI::App* sub, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw Failure{5, "cannot read config file '" + path + "'"};
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    bad("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) bad("config file must hold a JSON object");
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key)) return;
    if (sub->get_option_no_throw(flag) && sub->count(flag) > 0) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception& e) {
      bad(std::string("config key '") + key + "': " + e.what());
    }
  };
  take("family", "--family", c.family);
  take("n", "--n", c.n);
  take("m", "--m", c.m);
  take("m_alpha", "--m-alpha", c.m_alpha);
  take("m_2alpha", "--m-2alpha", c.m_2alpha);
  take("t", "--t", c.t);
  take("lambda_min", "--lambda-min", c.lambda_min);
  take("lambda_max", "--lambda-max", c.lambda_max);
  take("lambda_points", "--lambda-points", c.lambda_points);
  take("k_order", "--k-order", c.k_order);
  take("heat_time", "--heat-time", c.heat_time);
  take("N", "--N", c.N);
  take("seed", "--seed", c.seed);
  take("bins", "--bins", c.bins);
  take("points", "--points", c.points);
  take("k", "--k", c.k);
  take("compare", "--compare", c.compare);
  take("quick", "--quick", c.quick);
  take("criteria", "--criterion", c.criteria);
  take("out", "--out", c.out);
  take("histogram_out", "--histogram-out", c.histogram_out);
  take("format", "--format", c.format);
  take("threads", "--threads", c.threads);
}

void validate(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") bad("--format must be json or csv");
  for (double t : c.t) {
    if (!std::isfinite(t) || t <= 0.0) bad("generators must be positive");
  }
  if (c.lambda_max < 0.0 || !std::isfinite(c.lambda_max)) bad("--lambda-max must be positive");
  if (c.lambda_min < 0.0 || !std::isfinite(c.lambda_min)) bad("--lambda-min must be nonnegative");
  if (c.k_order < 0) bad("--k-order must be positive");
  if (c.N < 1) bad("--N must be positive");
  if (c.bins < 10) bad("--bins must be at least 10");
  if (c.points < 3) bad("--points must be at least 3");
  if (c.k < 0) bad("--k must be nonnegative");
}

orbconv_spectral spectral(const RunConfig& c, bool density) {
  orbconv_spectral s;
  if (density) {
    orbconv_spectral_density_defaults(&s);
  } else {
    orbconv_spectral_l2_defaults(&s);
  }
  if (c.lambda_max > 0.0) s.lambda_max = c.lambda_max;
  if (c.lambda_points > 0) s.lambda_points = c.lambda_points;
  if (c.k_order > 0) s.max_order = c.k_order;
  s.heat_time = c.heat_time;
  s.threads = c.threads;
  return s;
}

// Output -------------------------------------------------------------------

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{5, "cannot write '" + c.out + "'"};
  f << text;
  if (!f) throw Failure{5, "write to '" + c.out + "' failed"};
}

std::string csv_header(const json& config) { return "# config: " + config.dump() + "\n"; }

std::string as_text(const json& j) { return j.dump(2) + "\n"; }

// Commands -----------------------------------------------------------------

void cmd_describe(const RunConfig& c) {
  Space s(c);
  char* text = nullptr;
  check(orbconv_space_to_json(s.p, &text));
  json space = json::parse(text);
  orbconv_free_string(text);
  const json config = config_json(c, "describe");
  if (c.format == "csv") {
    std::string out = csv_header(config) + "name,rank,dim,weyl_order\n";
    out += space["name"].get<std::string>() + "," + std::to_string(space["rank"].get<int>()) + "," +
           std::to_string(space["dim"].get<int>()) + "," + std::to_string(space["weyl_order"].get<int>()) + "\n";
    emit(c, out);
    return;
  }
  std::vector<double> rho(static_cast<std::size_t>(space["rank"].get<int>()));
  check(orbconv_space_rho(s.p, rho.data(), rho.size()));
  emit(c, as_text({{"command", "describe"}, {"config", config}, {"space", space}, {"rho", rho}}));
}

void cmd_spherical(RunConfig c) {
  if (c.lambda_max == 0.0) c.lambda_max = 20.0;
  if (c.lambda_points == 0) c.lambda_points = 101;
  if (c.t.empty()) bad("--t needs at least one radial value");
  if (c.lambda_max < c.lambda_min) bad("--lambda-max must be at least --lambda-min");
  Space s(c);
  orbconv_quadrature quad;
  orbconv_quadrature_defaults(&quad);
  if (c.k_order > 0) quad.max_order = c.k_order;
  const json config = config_json(c, "spherical");
  json rows = json::array();
  std::string csv = csv_header(config) + "t,lambda,re,im\n";
  for (double t : c.t) {
    for (std::size_t j = 0; j < c.lambda_points; ++j) {
      const double lambda = c.lambda_points == 1 ? c.lambda_min
                                                 : c.lambda_min + (c.lambda_max - c.lambda_min) *
                                                                      static_cast<double>(j) /
                                                                      static_cast<double>(c.lambda_points - 1);
      double re = 0.0, im = 0.0;
      check(orbconv_spherical(s.p, lambda, t, &quad, &re, &im));
      rows.push_back({{"t", t}, {"lambda", lambda}, {"re", re}, {"im", im}});
      csv += g17(t) + "," + g17(lambda) + "," + g17(re) + "," + g17(im) + "\n";
    }
  }
  if (c.format == "csv") {
    emit(c, csv);
  } else {
    emit(c, as_text({{"command", "spherical"}, {"config", config}, {"values", rows}}));
  }
}

json regularity_json(const orbconv_regularity& r) {
  return {{"l2_threshold_met", static_cast<bool>(r.l2_threshold_met)},
          {"ck_max", r.ck_max},
          {"threshold_r", r.threshold_r},
          {"max_dim", r.max_dim},
          {"absolute_continuity_met", static_cast<bool>(r.absolute_continuity_met)}};
}

void cmd_l2(RunConfig c) {
  Space s(c);
  Conv conv(s, c.t);
  const auto sc = spectral(c, false);
  c.lambda_max = sc.lambda_max;
  c.lambda_points = sc.lambda_points;
  c.k_order = sc.max_order;
  orbconv_l2_report rep;
  check(orbconv_l2_norm_sq(conv.p, &sc, &rep));
  orbconv_regularity reg;
  check(orbconv_regularity_report(conv.p, &reg));
  const json config = config_json(c, "l2");
  if (c.format == "csv") {
    std::string out = csv_header(config) +
                      "verdict,tail_exponent,tail_exponent_stderr,tail_amplitude,value,truncated_value,"
                      "tail_completion,threshold_r\n";
    out += std::string(orbconv_verdict_name(rep.verdict)) + "," + g17(rep.tail_exponent) + "," +
           g17(rep.tail_exponent_stderr) + "," + g17(rep.tail_amplitude) + "," +
           (rep.has_value ? g17(rep.value) : std::string()) + "," + g17(rep.truncated_value) + "," +
           g17(rep.tail_completion) + "," + std::to_string(rep.threshold_r) + "\n";
    emit(c, out);
    return;
  }
  json report{{"verdict", orbconv_verdict_name(rep.verdict)},
              {"tail_exponent", rep.tail_exponent},
              {"tail_exponent_stderr", rep.tail_exponent_stderr},
              {"tail_amplitude", rep.tail_amplitude},
              {"value", rep.has_value ? json(rep.value) : json(nullptr)},
              {"truncated_value", rep.truncated_value},
              {"tail_completion", rep.tail_completion},
              {"threshold_r", rep.threshold_r}};
  emit(c, as_text({{"command", "l2"}, {"config", config}, {"report", report}, {"regularity", regularity_json(reg)}}));
}

void cmd_density(RunConfig c) {
  Space s(c);
  Conv conv(s, c.t);
  const auto sc = spectral(c, true);
  c.lambda_max = sc.lambda_max;
  c.lambda_points = sc.lambda_points;
  c.k_order = sc.max_order;
  check(orbconv_effective_heat_time(&sc, &c.heat_time));
  std::vector<double> grid(c.points), rho(c.points), jac(c.points), deriv;
  double mass = 0.0;
  check(orbconv_density_profile(conv.p, &sc, c.points, grid.data(), rho.data(), jac.data(), &mass));
  if (c.k > 0) {
    deriv.resize(c.points);
    check(orbconv_density_derivative_on_grid(conv.p, &sc, c.k, grid.data(), grid.size(), deriv.data()));
  }
  orbconv_regularity reg;
  check(orbconv_regularity_report(conv.p, &reg));
  const json config = config_json(c, "density");
  if (c.format == "csv") {
    std::string out = csv_header(config) + "t,rho,jacobian" + (c.k > 0 ? ",derivative" : "") + "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out += g17(grid[i]) + "," + g17(rho[i]) + "," + g17(jac[i]);
      if (c.k > 0) out += "," + g17(deriv[i]);
      out += "\n";
    }
    emit(c, out);
    return;
  }
  json j{{"command", "density"}, {"config", config}, {"t", grid},     {"rho", rho},
         {"jacobian", jac},      {"mass", mass},     {"regularity", regularity_json(reg)}};
  if (c.k > 0) j["derivative"] = deriv;
  emit(c, as_text(j));
}

void cmd_simulate(RunConfig c) {
  Space s(c);
  Conv conv(s, c.t);
  std::vector<double> samples(c.N);
  check(orbconv_sample(conv.p, c.N, c.seed, c.threads, samples.data()));
  const json config = config_json(c, "simulate");

  std::vector<double> centers(static_cast<std::size_t>(c.bins)), estimate(centers.size());
  std::vector<std::uint64_t> counts(centers.size());
  double radius = 0.0;
  for (double t : c.t) radius += t;
  check(orbconv_histogram(s.p, samples.data(), samples.size(), c.bins, 0.0, radius * (1.0 + 1e-9) + 1e-9,
                          centers.data(), counts.data(), estimate.data()));
  std::string hist_csv = csv_header(config) + "bin_center,count,density_estimate\n";
  for (std::size_t b = 0; b < centers.size(); ++b) {
    hist_csv += g17(centers[b]) + "," + std::to_string(counts[b]) + "," + g17(estimate[b]) + "\n";
  }
  std::optional<orbconv_comparison> cmp;
  if (c.compare) {
    const auto sc = spectral(c, true);
    orbconv_comparison out;
    check(orbconv_compare(conv.p, samples.data(), samples.size(), c.bins, &sc, 2001, &out));
    cmp = out;
  }

  if (!c.histogram_out.empty()) {
    std::ofstream f(c.histogram_out, std::ios::binary);
    if (!f) throw Failure{5, "cannot write '" + c.histogram_out + "'"};
    f << hist_csv;
  }
  if (c.format == "csv") {
    std::string out = csv_header(config) + "t\n";
    out.reserve(out.size() + samples.size() * 24);
    for (double v : samples) out += g17(v) + "\n";
    emit(c, out);
    return;
  }
  json j{{"command", "simulate"},
         {"config", config},
         {"samples", samples},
         {"histogram", {{"bin_center", centers}, {"count", counts}, {"density_estimate", estimate}}}};
  if (cmp) j["comparison"] = {{"l1", cmp->l1}, {"sup", cmp->sup}, {"ks", cmp->ks}};
  emit(c, as_text(j));
}

int cmd_verify(RunConfig c) {
  if (c.criteria.empty()) {
    for (int i = 1; i <= orbconv_criterion_count(); ++i) c.criteria.push_back(i);
  }
  json results = json::array();
  bool all = true;
  int code = 0;
  for (int id : c.criteria) {
    if (id < 1 || id > orbconv_criterion_count()) bad("criterion must be in 1.." + std::to_string(orbconv_criterion_count()));
    int passed = 0;
    char* report = nullptr;
    check(orbconv_verify(id, c.quick, &passed, &report));
    json r = json::parse(report);
    orbconv_free_string(report);
    std::printf("%s criterion %d: %s (%.1f s)\n", passed ? "PASS" : "FAIL", id, r["name"].get<std::string>().c_str(),
                r["seconds"].get<double>());
    if (!passed) {
      for (const auto& chk : r["checks"]) {
        if (!chk["passed"].get<bool>()) std::printf("    failed: %s\n", chk["name"].get<std::string>().c_str());
      }
    }
    std::fflush(stdout);
    const std::string kind = r["error_kind"];
    if (kind == "quadrature_budget" && code == 0) code = 3;
    if (kind == "invariant_violation" && code == 0) code = 4;
    all = all && passed;
    results.push_back(std::move(r));
  }
  if (!c.out.empty()) {
    emit(c, as_text({{"command", "verify"}, {"config", config_json(c, "verify")}, {"passed", all},
                     {"criteria", results}}));
  }
  if (all) return 0;
  return code ? code : 1;
}

void add_space_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "real-hyperbolic, complex-hyperbolic or generic-rank-one");
  sub->add_option("--n", c.n, "dimension of real hyperbolic space");
  sub->add_option("--m", c.m, "complex dimension of complex hyperbolic space");
  sub->add_option("--m-alpha", c.m_alpha, "multiplicity of alpha (generic-rank-one)");
  sub->add_option("--m-2alpha", c.m_2alpha, "multiplicity of 2 alpha (generic-rank-one)");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out", c.out, "output path (default: standard output)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", c.threads, "worker threads (default: ORBCONV_THREADS or all cores)");
}

void add_spectral_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--lambda-max", c.lambda_max, "spectral cutoff");
  sub->add_option("--lambda-points", c.lambda_points, "spectral grid points");
  sub->add_option("--k-order", c.k_order, "maximum polar quadrature order over K");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolutions of orbital measures on rank-one symmetric spaces"};
  app.require_subcommand(1);
  RunConfig c;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags take precedence");

  auto* describe = app.add_subcommand("describe", "structure data of a space as JSON");
  auto* spherical = app.add_subcommand("spherical", "spherical functions on a lambda sweep");
  auto* l2 = app.add_subcommand("l2", "L^2 norm of the density with tail verdict");
  auto* density = app.add_subcommand("density", "radial density profile");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo samples of the radial part");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  for (auto* sub : {describe, spherical, l2, density, simulate, verify}) {
    sub->add_option("--config", config_path, "JSON config file; flags take precedence");
    add_space_options(sub, c);
    add_output_options(sub, c);
  }
  for (auto* sub : {spherical, l2, density, simulate}) {
    sub->add_option("--t", c.t, "generators t_1,...,t_r (spherical: radial values)")->delimiter(',');
  }
  for (auto* sub : {spherical, l2, density}) add_spectral_options(sub, c);
  spherical->add_option("--lambda-min", c.lambda_min, "start of the lambda sweep");
  density->add_option("--points", c.points, "grid points on [0, support + margin]");
  density->add_option("--k", c.k, "also emit the k-th radial derivative");
  density->add_option("--heat-time", c.heat_time, "heat window time s (default 30 / lambda_max^2)");
  simulate->add_option("--N", c.N, "number of samples");
  simulate->add_option("--seed", c.seed, "64-bit seed");
  simulate->add_option("--bins", c.bins, "histogram bins");
  simulate->add_option("--histogram-out", c.histogram_out, "also write the histogram as CSV");
  simulate->add_flag("--compare", c.compare, "compare the histogram with the analytic density");
  verify->add_flag("--quick", c.quick, "scaled-down variants");
  verify->add_option("--criterion", c.criteria, "criteria to run (default: all)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, sub, c);
    validate(c);
    const std::string name = sub->get_name();
    if (name == "describe") cmd_describe(c);
    if (name == "spherical") cmd_spherical(c);
    if (name == "l2") cmd_l2(c);
    if (name == "density") cmd_density(c);
    if (name == "simulate") cmd_simulate(c);
    if (name == "verify") return cmd_verify(c);
  } catch (const Failure& f) {
    std::fprintf(stderr, "orbconv: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "orbconv: %s\n", e.what());
    return 1;
  }
  return 0;
}
