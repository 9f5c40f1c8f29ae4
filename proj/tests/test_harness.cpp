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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "covering/errors.hpp"
#include "covering/harness.hpp"
#include "doctest.h"

using namespace covering;
using namespace covering::harness;

namespace {

std::map<std::string, std::string> kv(const std::string& text) {
  std::istringstream in(text);
  return parse_key_values(in);
}

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

ExperimentConfig small_torus() {
  ExperimentConfig c = preset_config("disk-torus");
  c.delta = 0.05;
  return c;
}

}  // namespace

TEST_CASE("key value files") {
  const auto m = kv("# comment\n  seed = 7  \n\ndelta=0.05 # trailing\n");
  CHECK(m.size() == 2);
  CHECK(m.at("seed") == "7");
  CHECK(m.at("delta") == "0.05");
  CHECK_THROWS_AS(kv("seed 7\n"), ConfigError);
  CHECK_THROWS_AS(kv("= 7\n"), ConfigError);
  CHECK_THROWS_AS(kv("seed = 1\nseed = 2\n"), ConfigError);
  CHECK_THROWS_AS(read_key_values("/nonexistent/covering.cfg"), ConfigError);
}

TEST_CASE("presets") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const ExperimentConfig c = preset_config(name);
    CHECK(c.preset == name);
    CHECK_NOTHROW(validate(c));
  }
  const ExperimentConfig torus = preset_config("disk-torus");
  CHECK(torus.experiment == Experiment::kTorusCover);
  CHECK(torus.radius == 0.15);
  CHECK(torus.side == 1.0);
  CHECK(torus.delta == 0.03);
  CHECK(torus.seed == 3);
  CHECK(preset_config("fano").experiment == Experiment::kSetcoverBench);
  CHECK(preset_config("bw-table").checks == std::vector<std::string>{"bw"});
  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("config overrides") {
  ExperimentConfig c = apply_config(preset_config("fano"),
                                    {{"preset", "disk-torus"}, {"delta", "0.04"}, {"seed", "11"}});
  CHECK(c.experiment == Experiment::kTorusCover);
  CHECK(c.delta == 0.04);
  CHECK(c.seed == 11);
  CHECK(c.radius == 0.15);

  c = apply_config(preset_config("bound-table"), {{"n_values", "3, 10,100"}});
  CHECK(c.n_values == std::vector<double>{3, 10, 100});

  CHECK_THROWS_AS(apply_config(c, {{"bogus", "1"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(c, {{"delta", "abc"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(c, {{"seed", "-1"}}), ConfigError);
  CHECK_THROWS_AS(apply_config(c, {{"experiment", "cube_cover"}}), ConfigError);

  ExperimentConfig bad = preset_config("disk-torus");
  bad.delta = 1.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = preset_config("sphere-caps");
  bad.phi = 2.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = preset_config("fano");
  bad.random_instances = 3;  // two instance sources
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = preset_config("inequality-suite");
  bad.checks = {"bw", "nope"};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = preset_config("disk-torus");
  bad.body_file = "/nonexistent/body.json";
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("body files") {
  const Body square = body_from_json(
      Json::parse(R"({"type":"hpolytope","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,1,1,1]})"));
  CHECK(square.contains(vec2(0.9, -0.9)));
  CHECK_FALSE(square.contains(vec2(1.1, 0.0)));

  const Body ball = body_from_json(Json::parse(R"({"type":"ball","center":[1,0],"radius":0.5})"));
  CHECK(ball.contains(vec2(1.4, 0.0)));
  CHECK_FALSE(ball.contains(vec2(0.4, 0.0)));

  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"type":"ball","center":[0,0],"radius":-1})")),
                  ParseError);
  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"type":"torus"})")), ParseError);
  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"type":"hpolytope","A":[[1,0]],"b":[1,2]})")),
                  ParseError);
}

TEST_CASE("bitmap bodies round trip") {
  // 11 columns so rows span two bytes; an L shape plus a stray sample.
  std::vector<std::vector<bool>> rows(5, std::vector<bool>(11, false));
  for (std::size_t x = 0; x < 11; ++x) rows[0][x] = true;
  for (std::size_t y = 0; y < 5; ++y) rows[y][0] = true;
  rows[3][9] = true;
  const double step = 0.25, ox = -0.5, oy = 0.75;
  const Json j = bitmap_json(rows, ox, oy, step);
  CHECK(j["width"] == 11);
  CHECK(j["height"] == 5);
  const Body b = body_from_json(Json::parse(j.dump()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      CAPTURE(x);
      CAPTURE(y);
      // Entries are lattice samples; membership goes to the nearest one.
      const double px = ox + static_cast<double>(x) * step;
      const double py = oy + static_cast<double>(y) * step;
      CHECK(b.contains(vec2(px, py)) == rows[y][x]);
      CHECK(b.contains(vec2(px + 0.3 * step, py - 0.3 * step)) == rows[y][x]);
    }
  }

  Json shifted = j;
  shifted["origin"] = {0.1, 0.0};
  CHECK_THROWS_AS(body_from_json(shifted), ParseError);
  Json short_row = j;
  short_row["data"][0] = "AA==";
  CHECK_THROWS_AS(body_from_json(short_row), ParseError);
  CHECK_THROWS_AS(body_from_json(bitmap_json({{false, false}}, 0, 0, 1)), ParseError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x")) == ExitCode::kConfigError);
  CHECK(exit_code_for(BadParam("x")) == ExitCode::kConfigError);
  CHECK(exit_code_for(ParseError("x")) == ExitCode::kConfigError);
  CHECK(exit_code_for(InfeasibleInstance("x")) == ExitCode::kInfeasible);
  CHECK(exit_code_for(InvariantViolation("x")) == ExitCode::kInvariantViolation);
  CHECK(exit_code_for(std::logic_error("x")) == ExitCode::kInvariantViolation);
}

TEST_CASE("fano preset run") {
  const ExperimentResult r = run_experiment(preset_config("fano"));
  CHECK(r.certified);
  CHECK(r.report["schema"] == kReportSchema);
  CHECK(r.report["valid"] == true);
  const Json& fano = r.report["instances"][0];
  CHECK(fano["tau"] == 3);
  CHECK(fano["tau_star_exact"] == "7/3");
  CHECK(fano["tau_star"].get<double>() == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  CHECK(fano["greedy"].get<int>() <= 3);
  CHECK(schema_problems(r.report).empty());
  CHECK(r.bounds_csv.rfind("bound_name,value,achieved_density\n", 0) == 0);
}

TEST_CASE("sealed reports verify and tampering is caught") {
  const ExperimentResult r = run_experiment(small_torus());
  CHECK(r.certified);
  const std::string text = dump(r.report);
  CHECK(verify_report_text(text).ok);

  std::string tampered = text;
  const auto pos = tampered.find("\"density\": ");
  REQUIRE(pos != std::string::npos);
  tampered.insert(pos + 11, "1");
  CHECK_FALSE(verify_report_text(tampered).ok);

  Json no_digest = r.report;
  no_digest.erase("digest");
  CHECK_FALSE(verify_report_text(no_digest.dump(2)).ok);
  CHECK_FALSE(verify_report_text("{not json").ok);

  // Resealing an edited document is accepted only if it stays consistent.
  Json edited = r.report;
  edited.erase("digest");
  edited["report"]["density"] = 99.0;
  seal(edited);
  CHECK_FALSE(verify_report_text(dump(edited)).ok);
}

TEST_CASE("outputs are written and deterministic across thread counts") {
  ExperimentConfig c = small_torus();
  c.threads = 1;
  const ExperimentResult one = run_experiment(c);
  c.threads = 3;
  const ExperimentResult three = run_experiment(c);
  CHECK(dump(one.report) == dump(three.report));
  CHECK(one.points_csv == three.points_csv);

  const auto dir = std::filesystem::temp_directory_path() / "covering_test_harness";
  std::filesystem::remove_all(dir);
  write_outputs(one, dir);
  for (const char* f : {"report.json", "bounds.csv", "points.csv"})
    CHECK(std::filesystem::exists(dir / f));
  CHECK(verify_report_file(dir / "report.json").ok);
  std::ifstream in(dir / "report.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == dump(one.report));
  std::filesystem::remove_all(dir);
}

TEST_CASE("criterion lines") {
  CriterionResult r;
  r.id = 8;
  r.title = "Jordan";
  r.pass = true;
  r.detail = "ok";
  r.seconds = 0.25;
  const std::string line = format_result(r);
  CHECK(line.rfind("[PASS] 8 Jordan: ok", 0) == 0);
  r.pass = false;
  CHECK(format_result(r).rfind("[FAIL] 8", 0) == 0);
}
