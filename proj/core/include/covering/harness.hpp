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

#pragma once

// Experiment plumbing shared by the command-line tool and the acceptance
// suite: flat key=value configuration, body files, report serialization
// with an integrity digest, and the experiment runners.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covering/body.hpp"
#include "covering/cover_report.hpp"
#include "covering/errors.hpp"
#include "covering/hypercover.hpp"

namespace covering::harness {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "covering-report/1";

// Process exit codes of the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kCertificationFailed = 1,
  kConfigError = 2,
  kInfeasible = 3,
  kInvariantViolation = 4,
};

class ConfigError : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

// Maps a library exception to the exit code the tool reports for it.
ExitCode exit_code_for(const std::exception& error);

// ---------------------------------------------------------------------------
// Configuration

// "key = value" lines; '#' starts a comment, blank lines are skipped.
// Duplicate keys and lines without '=' raise ConfigError.
std::map<std::string, std::string> parse_key_values(std::istream& in);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

enum class Experiment {
  kTorusCover,
  kSphereCover,
  kSetcoverBench,
  kBoundTable,
  kInequalitySuite,
};

const char* to_string(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::kTorusCover;
  std::string preset;  // informational
  std::uint64_t seed = 1;
  int threads = 0;          // never written to reports
  double grid_step = 0.0;   // 0: pipeline default
  std::filesystem::path out_dir;

  // torus_cover: a body file, or a disk of `radius` at the origin.
  std::filesystem::path body_file;
  double radius = 0.15;
  double side = 1.0;
  double delta = 0.03;
  double center_stride = 0.0;

  // sphere_cover: a cap of angular radius `phi` around the north pole.
  double phi = 0.0;
  std::size_t rotations = 200;
  std::uint64_t samples = 100'000;

  // setcover_bench: an instance file, the Fano plane, or random instances.
  std::filesystem::path instance_file;
  bool fano = false;
  std::size_t random_instances = 0;
  std::size_t random_elements = 40;
  std::size_t random_sets = 80;
  std::size_t random_min_size = 2;
  std::size_t random_max_size = 10;

  // bound_table / inequality_suite.
  std::vector<double> n_values;
  std::vector<std::string> checks;  // subset of bw, jordan, lnnesszam, milman_pajor
};

// Preset names: fano, disk-torus, bw-table, sphere-caps, bound-table,
// inequality-suite. ConfigError for anything else.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Applies `values` on top of `base`. Relative file paths resolve against
// `base_dir`. Unknown keys and malformed or out-of-range values raise
// ConfigError, as do references to missing files.
ExperimentConfig apply_config(ExperimentConfig base,
                              const std::map<std::string, std::string>& values,
                              const std::filesystem::path& base_dir = {});

// Checks the preconditions of the target pipeline (ConfigError if unmet).
void validate(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Body files
//
//   {"type": "hpolytope", "A": [[...], ...], "b": [...]}
//   {"type": "ball", "center": [...], "radius": r}
//   {"type": "bitmap", "origin": [x, y], "step": h, "width": w,
//    "height": ht, "data": ["<base64 row>", ...]}
//
// Bitmap rows run along x starting at origin[1] + row * step; each row packs
// w bits most significant first, padded to whole bytes. The origin must be
// a multiple of the step so the samples sit on the library's lattice.

Body body_from_json(const Json& j);
Body read_body_file(const std::filesystem::path& path);
Json bitmap_json(const std::vector<std::vector<bool>>& rows, double ox, double oy,
                 double step);

// ---------------------------------------------------------------------------
// Reports

Json cover_report_json(const CoverReport& report);

// Adds "digest", the CRC-32 of the document serialized without it.
void seal(Json& document);
// Canonical text of a sealed document: two-space indent, trailing newline.
std::string dump(const Json& document);

struct ReportCheck {
  bool ok = false;
  std::string message;
};

// Parses, checks the documented schema and recomputes the digest.
ReportCheck verify_report_text(const std::string& text);
ReportCheck verify_report_file(const std::filesystem::path& path);
// Schema check alone; returns a list of problems (empty when valid).
std::vector<std::string> schema_problems(const Json& document);

// ---------------------------------------------------------------------------
// Running experiments

struct ExperimentResult {
  Json report;             // sealed
  std::string bounds_csv;  // bound_name,value,achieved_density
  std::string points_csv;  // set,x,y[,z]; empty when not applicable
  std::string table_csv;   // name,n,params,value; empty when not applicable
  bool certified = false;  // every validity check passed
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes report.json, bounds.csv and, when present, points.csv and
// table.csv into `dir` (created if needed).
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Acceptance suite

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int threads = 0;
  // Criteria to run (1..11); empty runs all.
  std::vector<int> only;
  // Called after each criterion, e.g. to print progress.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> verify_all(const SuiteOptions& options = {});

// One line per criterion: "[PASS] 4 torus covering: ...".
std::string format_result(const CriterionResult& r);

}  // namespace covering::harness
