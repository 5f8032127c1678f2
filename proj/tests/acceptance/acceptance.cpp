// Acceptance suite runner. Prints one PASS/FAIL line per criterion followed
// by its checks; exits nonzero if any selected criterion fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbconv/orbconv.h"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Two CLI simulate runs with the same seed must produce identical files.
bool cli_determinism(const std::string& cli, std::string& detail) {
  const auto dir = std::filesystem::temp_directory_path() / ("orbconv-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> outs;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / ("run" + std::to_string(run) + ".csv");
    const std::string cmd = "\"" + cli + "\" simulate --family real-hyperbolic --n 2 --t 1,1.5 --N 100000 --seed 7 "
                            "--bins 50 --format csv --out \"" + out.string() + "\"";
    if (std::system(cmd.c_str()) != 0) {
      detail = "command failed: " + cmd;
      std::filesystem::remove_all(dir);
      return false;
    }
    outs.push_back(slurp(out));
  }
  std::filesystem::remove_all(dir);
  const bool same = !outs[0].empty() && outs[0] == outs[1];
  detail = std::to_string(outs[0].size()) + " bytes, " + (same ? "identical" : "different");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbconv acceptance suite"};
  std::vector<int> criteria;
  bool quick = false;
  bool json_out = false;
  std::string cli;
  app.add_option("--criterion,-c", criteria, "criteria to run (default: all)")
      ->check(CLI::Range(1, orbconv_criterion_count()));
  app.add_flag("--quick", quick, "scaled-down variants");
  app.add_flag("--json", json_out, "print the full JSON report after each line");
  app.add_option("--cli", cli, "orbconv CLI to check simulate determinism against (criterion 9)");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) {
    for (int i = 1; i <= orbconv_criterion_count(); ++i) criteria.push_back(i);
  }

  int failures = 0;
  for (int id : criteria) {
    int passed = 0;
    char* report = nullptr;
    const orbconv_status st = orbconv_verify(id, quick, &passed, &report);
    if (st != ORBCONV_OK) {
      std::printf("FAIL criterion %d: %s\n", id, orbconv_last_error());
      ++failures;
      continue;
    }
    auto j = nlohmann::json::parse(report);
    orbconv_free_string(report);
    if (id == 9 && !cli.empty()) {
      std::string detail;
      const bool ok = cli_determinism(cli, detail);
      passed = passed && ok;
      j["checks"].push_back({{"name", "CLI simulate twice: " + detail}, {"value", ok ? 1.0 : 0.0}, {"bound", 1.0},
                             {"relation", "=="}, {"passed", ok}});
    }
    std::printf("%s criterion %d: %s (%.1f s)\n", passed ? "PASS" : "FAIL", id,
                j["name"].get<std::string>().c_str(), j["seconds"].get<double>());
    for (const auto& c : j["checks"]) {
      const std::string rel = c["relation"];
      if (rel == "info") {
        std::printf("    info  %s = %.6g\n", c["name"].get<std::string>().c_str(), c["value"].get<double>());
      } else if (rel == "==") {
        std::printf("    %s  %s\n", c["passed"].get<bool>() ? "ok  " : "FAIL", c["name"].get<std::string>().c_str());
      } else {
        std::printf("    %s  %s = %.6g (%s %.3g)\n", c["passed"].get<bool>() ? "ok  " : "FAIL",
                    c["name"].get<std::string>().c_str(), c["value"].get<double>(), rel.c_str(),
                    c["bound"].get<double>());
      }
    }
    if (!j["note"].get<std::string>().empty()) std::printf("    note  %s\n", j["note"].get<std::string>().c_str());
    if (json_out) std::printf("%s\n", j.dump().c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
