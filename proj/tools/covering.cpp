// Copyright 2026 The Covering Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// covering: command-line front end for the experiment harness.
//
//   covering cover-torus  [--preset disk-torus] [--config f] [--set k=v]...
//   covering cover-sphere [--preset sphere-caps] ...
//   covering setcover     [--preset fano] ...
//   covering bounds       [--preset bound-table|bw-table|inequality-suite] ...
//   covering verify       [--report report.json] [--criteria 1,2,...]
//
// Settings are applied in order: preset, config file, --set pairs, then the
// dedicated flags (--seed, --threads, --grid-step, --out).

#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covering/harness.hpp"

namespace {

namespace h = covering::harness;

struct RunFlags {
  std::string preset;
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> grid_step;
  std::string out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, const std::string& default_preset) {
  f.preset = default_preset;
  cmd->add_option("--preset", f.preset, "Starting preset")->capture_default_str();
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--set", f.sets, "Override one setting, key=value (repeatable)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0: hardware)");
  cmd->add_option("--grid-step", f.grid_step, "Certification grid stride");
  cmd->add_option("--out", f.out, "Output directory (default: report to stdout)");
}

h::ExperimentConfig build_config(const RunFlags& f,
                                 const std::vector<h::Experiment>& allowed) {
  h::ExperimentConfig c = h::preset_config(f.preset);
  if (!f.config.empty()) {
    const std::filesystem::path path(f.config);
    c = h::apply_config(std::move(c), h::read_key_values(path), path.parent_path());
  }
  std::map<std::string, std::string> sets;
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw h::ConfigError("--set expects key=value, got '" + kv + "'");
    sets[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  c = h::apply_config(std::move(c), sets);
  if (f.seed) c.seed = *f.seed;
  if (f.threads) c.threads = *f.threads;
  if (f.grid_step) c.grid_step = *f.grid_step;
  if (!f.out.empty()) c.out_dir = f.out;

  bool ok = false;
  for (auto e : allowed) ok = ok || e == c.experiment;
  if (!ok)
    throw h::ConfigError(std::string("experiment ") + h::to_string(c.experiment) +
                         " does not belong to this subcommand");
  h::validate(c);
  return c;
}

int run(const RunFlags& f, const std::vector<h::Experiment>& allowed) {
  const h::ExperimentConfig config = build_config(f, allowed);
  const h::ExperimentResult result = h::run_experiment(config);
  if (config.out_dir.empty()) {
    std::cout << h::dump(result.report) << "\n";
  } else {
    h::write_outputs(result, config.out_dir);
    std::cerr << "wrote " << config.out_dir.string() << "/report.json\n";
  }
  if (!result.certified) {
    std::cerr << "certification failed\n";
    return static_cast<int>(h::ExitCode::kCertificationFailed);
  }
  return 0;
}

int verify(const std::string& report, std::uint64_t seed, int threads,
           const std::vector<int>& criteria) {
  if (!report.empty()) {
    const h::ReportCheck check = h::verify_report_file(report);
    std::cout << (check.ok ? "ok" : "FAIL") << ": " << check.message << "\n";
    return check.ok ? 0 : static_cast<int>(h::ExitCode::kInvariantViolation);
  }
  h::SuiteOptions opt;
  opt.seed = seed;
  opt.threads = threads;
  opt.only = criteria;
  opt.on_result = [](const h::CriterionResult& r) {
    std::cout << h::format_result(r) << std::endl;
  };
  const auto results = h::verify_all(opt);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified coverings by translates and rotations, and density bounds"};
  app.require_subcommand(1);

  RunFlags torus, sphere, setcover, bounds;
  add_run_flags(app.add_subcommand("cover-torus", "Cover a torus by translates of a body"),
                torus, "disk-torus");
  add_run_flags(app.add_subcommand("cover-sphere", "Cover the sphere by rotated caps"),
                sphere, "sphere-caps");
  add_run_flags(app.add_subcommand("setcover", "Greedy and LP set-cover benchmark"),
                setcover, "fano");
  add_run_flags(app.add_subcommand("bounds", "Density bound tables and inequality checks"),
                bounds, "bound-table");

  auto* ver = app.add_subcommand("verify", "Check a report, or run the acceptance suite");
  std::string report;
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<int> criteria;
  ver->add_option("--report", report, "Report file to check");
  ver->add_option("--seed", seed, "Suite seed")->capture_default_str();
  ver->add_option("--threads", threads, "Worker threads (0: hardware)");
  ver->add_option("--criteria", criteria, "Criteria to run (default: all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 11));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(h::ExitCode::kConfigError);
  }

  using E = h::Experiment;
  try {
    if (app.got_subcommand("cover-torus")) return run(torus, {E::kTorusCover});
    if (app.got_subcommand("cover-sphere")) return run(sphere, {E::kSphereCover});
    if (app.got_subcommand("setcover")) return run(setcover, {E::kSetcoverBench});
    if (app.got_subcommand("bounds"))
      return run(bounds, {E::kBoundTable, E::kInequalitySuite});
    return verify(report, seed, threads, criteria);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(h::exit_code_for(e));
  }
}
