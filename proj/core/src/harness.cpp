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

#include "covering/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <boost/crc.hpp>

#include "covering/raster.hpp"

namespace covering::harness {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || end != v.data() + v.size())
    throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

Experiment parse_experiment(const std::string& v) {
  for (Experiment e : {Experiment::kTorusCover, Experiment::kSphereCover,
                       Experiment::kSetcoverBench, Experiment::kBoundTable,
                       Experiment::kInequalitySuite}) {
    if (v == to_string(e)) return e;
  }
  throw ConfigError("experiment: unknown kind '" + v + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& v) {
  std::filesystem::path p(v);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

const std::vector<double> kLnnesszamSample{3, 5, 10, 100, 1000, 10000};
const std::set<std::string> kChecks{"bw", "jordan", "lnnesszam", "milman_pajor"};

Vec vec_of(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ParseError(what + " must be a nonempty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(what + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

std::string base64_decode(std::string s) {
  using namespace boost::archive::iterators;
  using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  const std::size_t pad = static_cast<std::size_t>(std::count(s.begin(), s.end(), '='));
  if (pad > 2 || s.size() % 4 != 0) throw ParseError("bitmap row is not valid base64");
  std::replace(s.begin(), s.end(), '=', 'A');
  std::string out;
  try {
    out.assign(It(s.cbegin()), It(s.cend()));
  } catch (const std::exception&) {
    throw ParseError("bitmap row is not valid base64");
  }
  out.resize(out.size() - pad);
  return out;
}

std::string base64_encode(const std::string& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(It(bytes.cbegin()), It(bytes.cend()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::uint32_t crc32(const std::string& text) {
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  return crc.checksum();
}

std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << v;
  return os.str();
}

void require(std::vector<std::string>& problems, const Json& doc, const std::string& key,
             bool (Json::*kind)() const noexcept, const char* type) {
  if (!doc.contains(key)) {
    problems.push_back("missing '" + key + "'");
  } else if (!(doc.at(key).*kind)()) {
    problems.push_back("'" + key + "' must be " + type);
  }
}

}  // namespace

ExitCode exit_code_for(const std::exception& error) {
  if (dynamic_cast<const InfeasibleInstance*>(&error)) return ExitCode::kInfeasible;
  if (dynamic_cast<const InvariantViolation*>(&error)) return ExitCode::kInvariantViolation;
  if (dynamic_cast<const CoveringError*>(&error)) return ExitCode::kConfigError;
  if (dynamic_cast<const nlohmann::json::exception*>(&error)) return ExitCode::kConfigError;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&error))
    return ExitCode::kConfigError;
  return ExitCode::kInvariantViolation;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return out;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_key_values(in);
}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::kTorusCover:
      return "torus_cover";
    case Experiment::kSphereCover:
      return "sphere_cover";
    case Experiment::kSetcoverBench:
      return "setcover_bench";
    case Experiment::kBoundTable:
      return "bound_table";
    case Experiment::kInequalitySuite:
      return "inequality_suite";
  }
  return "unknown";
}

std::vector<std::string> preset_names() {
  return {"fano", "disk-torus", "bw-table", "sphere-caps", "bound-table", "inequality-suite"};
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  c.preset = name;
  if (name == "fano") {
    c.experiment = Experiment::kSetcoverBench;
    c.fano = true;
  } else if (name == "disk-torus") {
    c.experiment = Experiment::kTorusCover;
    c.radius = 0.15;
    c.side = 1.0;
    c.delta = 0.03;
    c.seed = 3;
  } else if (name == "bw-table") {
    c.experiment = Experiment::kInequalitySuite;
    c.checks = {"bw"};
  } else if (name == "sphere-caps") {
    c.experiment = Experiment::kSphereCover;
    c.phi = std::numbers::pi / 6.0;
    c.delta = c.phi / 20.0;
    c.rotations = 200;
  } else if (name == "bound-table") {
    c.experiment = Experiment::kBoundTable;
    c.n_values = {3, 5, 10, 20, 50, 100, 1000, 10000};
  } else if (name == "inequality-suite") {
    c.experiment = Experiment::kInequalitySuite;
    c.checks = {"bw", "jordan", "lnnesszam", "milman_pajor"};
    c.n_values = kLnnesszamSample;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

ExperimentConfig apply_config(ExperimentConfig c, const std::map<std::string, std::string>& values,
                              const std::filesystem::path& base_dir) {
  if (const auto it = values.find("preset"); it != values.end()) {
    ExperimentConfig p = preset_config(it->second);
    p.threads = c.threads;
    p.out_dir = c.out_dir;
    c = std::move(p);
  }
  for (const auto& [key, v] : values) {
    if (key == "preset") {
      continue;
    } else if (key == "experiment") {
      c.experiment = parse_experiment(v);
    } else if (key == "seed") {
      c.seed = parse_uint(key, v);
    } else if (key == "threads") {
      c.threads = static_cast<int>(parse_uint(key, v));
    } else if (key == "grid_step") {
      c.grid_step = parse_double(key, v);
    } else if (key == "out") {
      c.out_dir = resolve(base_dir, v);
    } else if (key == "body") {
      c.body_file = resolve(base_dir, v);
    } else if (key == "radius") {
      c.radius = parse_double(key, v);
    } else if (key == "side") {
      c.side = parse_double(key, v);
    } else if (key == "delta") {
      c.delta = parse_double(key, v);
    } else if (key == "center_stride") {
      c.center_stride = parse_double(key, v);
    } else if (key == "phi") {
      c.phi = parse_double(key, v);
    } else if (key == "rotations") {
      c.rotations = parse_uint(key, v);
    } else if (key == "samples") {
      c.samples = parse_uint(key, v);
    } else if (key == "instance") {
      c.instance_file = resolve(base_dir, v);
    } else if (key == "fano") {
      c.fano = parse_bool(key, v);
    } else if (key == "random_instances") {
      c.random_instances = parse_uint(key, v);
    } else if (key == "random_elements") {
      c.random_elements = parse_uint(key, v);
    } else if (key == "random_sets") {
      c.random_sets = parse_uint(key, v);
    } else if (key == "random_min_size") {
      c.random_min_size = parse_uint(key, v);
    } else if (key == "random_max_size") {
      c.random_max_size = parse_uint(key, v);
    } else if (key == "n_values") {
      c.n_values.clear();
      for (const auto& s : split_list(v)) c.n_values.push_back(parse_double(key, s));
    } else if (key == "checks") {
      c.checks = split_list(v);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  need(c.grid_step >= 0.0, "grid_step must be >= 0");
  switch (c.experiment) {
    case Experiment::kTorusCover:
      need(c.side > 0.0, "side must be positive");
      need(c.delta > 0.0 && c.delta < c.side, "delta must lie in (0, side)");
      need(c.center_stride >= 0.0, "center_stride must be >= 0");
      if (c.body_file.empty()) {
        need(c.radius > 0.0, "radius must be positive");
      } else {
        need(std::filesystem::exists(c.body_file), "body file " + c.body_file.string() + " not found");
      }
      break;
    case Experiment::kSphereCover:
      need(c.phi > 0.0 && c.phi <= std::numbers::pi / 2.0, "phi must lie in (0, pi/2]");
      need(c.delta > 0.0 && c.delta < c.phi, "delta must lie in (0, phi)");
      need(c.rotations >= 1, "rotations must be >= 1");
      need(c.samples >= 1, "samples must be >= 1");
      break;
    case Experiment::kSetcoverBench: {
      const int sources = static_cast<int>(!c.instance_file.empty()) + static_cast<int>(c.fano) +
                          static_cast<int>(c.random_instances > 0);
      need(sources == 1, "setcover needs exactly one of instance, fano, random_instances");
      if (!c.instance_file.empty())
        need(std::filesystem::exists(c.instance_file),
             "instance file " + c.instance_file.string() + " not found");
      if (c.random_instances > 0) {
        need(c.random_elements >= 1 && c.random_sets >= 1, "random instance sizes must be >= 1");
        need(c.random_min_size >= 1 && c.random_min_size <= c.random_max_size &&
                 c.random_max_size <= c.random_elements,
             "need 1 <= random_min_size <= random_max_size <= random_elements");
      }
      break;
    }
    case Experiment::kBoundTable:
      need(!c.n_values.empty(), "n_values must not be empty");
      for (double n : c.n_values)
        need(n >= 3.0 && n == std::floor(n) && n <= 1e9, "n_values must be integers >= 3");
      break;
    case Experiment::kInequalitySuite:
      need(!c.checks.empty(), "checks must not be empty");
      for (const auto& s : c.checks) need(kChecks.count(s) == 1, "unknown check '" + s + "'");
      for (double n : c.n_values) need(n >= 3.0, "n_values must be >= 3");
      break;
  }
}

Body body_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("body must be an object with a string \"type\"");
  const std::string type = j["type"];
  if (type == "hpolytope") {
    if (!j.contains("A") || !j.contains("b")) throw ParseError("hpolytope needs A and b");
    const Vec b = vec_of(j["b"], "b");
    const Json& rows = j["A"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(b.size()))
      throw ParseError("A must have one row per entry of b");
    const Eigen::Index n = static_cast<Eigen::Index>(vec_of(rows[0], "A row").size());
    Mat a(b.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Vec r = vec_of(rows[i], "A row");
      if (r.size() != n) throw ParseError("rows of A differ in length");
      a.row(static_cast<Eigen::Index>(i)) = r.transpose();
    }
    return Body::polytope(std::move(a), b);
  }
  if (type == "ball") {
    if (!j.contains("center") || !j.contains("radius") || !j["radius"].is_number())
      throw ParseError("ball needs center and radius");
    const double r = j["radius"];
    if (!(r > 0.0)) throw ParseError("ball radius must be positive");
    return Body::ball(vec_of(j["center"], "center"), r);
  }
  if (type == "bitmap") {
    for (const char* key : {"origin", "step", "width", "height", "data"})
      if (!j.contains(key)) throw ParseError(std::string("bitmap needs ") + key);
    const Vec origin = vec_of(j["origin"], "origin");
    if (origin.size() != 2) throw ParseError("bitmap origin must be 2-D");
    const double step = j["step"].get<double>();
    if (!(step > 0.0)) throw ParseError("bitmap step must be positive");
    const auto width = j["width"].get<std::size_t>();
    const auto height = j["height"].get<std::size_t>();
    const Json& data = j["data"];
    if (width == 0 || height == 0 || !data.is_array() || data.size() != height)
      throw ParseError("bitmap needs width, height >= 1 and one data row per height");
    std::vector<long> lo(2);
    for (int a = 0; a < 2; ++a) {
      const double q = origin[a] / step;
      lo[static_cast<std::size_t>(a)] = std::lround(q);
      if (std::abs(q - std::round(q)) > 1e-9)
        throw ParseError("bitmap origin must be a multiple of the step");
    }
    auto raster = std::make_shared<Raster>(step, lo, std::vector<std::size_t>{width, height});
    const std::size_t row_bytes = (width + 7) / 8;
    for (std::size_t y = 0; y < height; ++y) {
      if (!data[y].is_string()) throw ParseError("bitmap rows must be base64 strings");
      const std::string bytes = base64_decode(data[y].get<std::string>());
      if (bytes.size() != row_bytes)
        throw ParseError("bitmap row " + std::to_string(y) + " has the wrong length");
      for (std::size_t x = 0; x < width; ++x) {
        const auto byte = static_cast<unsigned char>(bytes[x / 8]);
        raster->cell(y * width + x) = static_cast<std::uint8_t>((byte >> (7 - x % 8)) & 1U);
      }
    }
    if (raster->count() == 0) throw ParseError("bitmap is empty");
    return Body::from_raster(std::move(raster));
  }
  throw ParseError("unknown body type '" + type + "'");
}

Body read_body_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open body file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return body_from_json(j);
}

Json bitmap_json(const std::vector<std::vector<bool>>& rows, double ox, double oy, double step) {
  if (rows.empty() || rows[0].empty()) throw BadParam("bitmap needs at least one cell");
  const std::size_t width = rows[0].size();
  Json data = Json::array();
  for (const auto& row : rows) {
    if (row.size() != width) throw BadParam("bitmap rows differ in length");
    std::string bytes((width + 7) / 8, '\0');
    for (std::size_t x = 0; x < width; ++x)
      if (row[x]) bytes[x / 8] = static_cast<char>(bytes[x / 8] | (0x80 >> (x % 8)));
    data.push_back(base64_encode(bytes));
  }
  return Json{{"type", "bitmap"}, {"origin", {ox, oy}}, {"step", step},
              {"width", width},   {"height", rows.size()}, {"data", data}};
}

Json cover_report_json(const CoverReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["dim"] = r.dim;
  j["seed"] = r.seed;
  j["delta"] = r.delta;
  j["net_radius"] = r.net_radius;
  j["net_size"] = r.net.size();
  j["body_measure"] = r.body_measure;
  j["region_measure"] = r.region_measure;
  j["density"] = r.density;
  j["valid"] = r.valid;
  j["grid_resolution"] = r.grid_resolution;
  j["certification_points"] = r.certification_points;
  j["uncovered_points"] = r.uncovered_points;
  Json centers = Json::array();
  for (const Vec& c : r.chosen_centers) centers.push_back(vec_json(c));
  j["chosen_centers"] = std::move(centers);
  if (!r.chosen_rotations.empty()) {
    Json rots = Json::array();
    for (const auto& m : r.chosen_rotations) {
      Json flat = Json::array();
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) flat.push_back(m(a, b));
      rots.push_back(std::move(flat));
    }
    j["chosen_rotations"] = std::move(rots);
  }
  const InstanceStats& s = r.instance;
  Json inst{{"ground", s.ground},
            {"candidates", s.candidates},
            {"max_deg", s.max_deg},
            {"greedy_size", s.greedy_size},
            {"tau_star_lower", s.tau_star_lower},
            {"tau_star_upper", s.tau_star_upper},
            {"tau_star", s.tau_star ? Json(*s.tau_star) : Json()},
            {"ls_bound_lower", s.ls_bound_lower},
            {"ls_holds", s.ls_holds},
            {"max_deg_bound", s.max_deg_bound ? Json(*s.max_deg_bound) : Json()}};
  j["instance"] = std::move(inst);
  Json bounds = Json::object();
  for (const auto& [name, value] : r.bounds) bounds[name] = value;
  j["bounds"] = std::move(bounds);
  j["notes"] = r.notes;
  return j;
}

void seal(Json& doc) {
  doc.erase("digest");
  doc["digest"] = hex32(crc32(doc.dump(2)));
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<std::string> schema_problems(const Json& doc) {
  std::vector<std::string> p;
  if (!doc.is_object()) return {"document is not an object"};
  require(p, doc, "schema", &Json::is_string, "a string");
  require(p, doc, "experiment", &Json::is_string, "a string");
  require(p, doc, "seed", &Json::is_number_unsigned, "an unsigned integer");
  require(p, doc, "valid", &Json::is_boolean, "a boolean");
  require(p, doc, "digest", &Json::is_string, "a string");
  require(p, doc, "config", &Json::is_object, "an object");
  if (!p.empty()) return p;
  if (doc["schema"] != kReportSchema) p.push_back("unsupported schema " + doc["schema"].dump());
  const std::string e = doc["experiment"];
  if (e == "torus_cover" || e == "sphere_cover") {
    require(p, doc, "report", &Json::is_object, "an object");
    if (!p.empty()) return p;
    const Json& r = doc["report"];
    require(p, r, "chosen_centers", &Json::is_array, "an array");
    require(p, r, "density", &Json::is_number, "a number");
    require(p, r, "valid", &Json::is_boolean, "a boolean");
    require(p, r, "grid_resolution", &Json::is_number, "a number");
    require(p, r, "bounds", &Json::is_object, "an object");
    require(p, r, "instance", &Json::is_object, "an object");
    require(p, r, "body_measure", &Json::is_number, "a number");
    require(p, r, "region_measure", &Json::is_number, "a number");
    if (!p.empty()) return p;
    for (const auto& c : r["chosen_centers"]) {
      if (!c.is_array() || c.empty()) {
        p.push_back("chosen_centers entries must be nonempty arrays");
        break;
      }
    }
    for (const auto& [name, v] : r["bounds"].items())
      if (!v.is_number()) p.push_back("bound '" + name + "' must be a number");
    if (r["valid"] != doc["valid"]) p.push_back("report valid flag disagrees with the envelope");
  } else if (e == "setcover_bench") {
    require(p, doc, "instances", &Json::is_array, "an array");
  } else if (e == "bound_table") {
    require(p, doc, "rows", &Json::is_array, "an array");
  } else if (e == "inequality_suite") {
    require(p, doc, "checks", &Json::is_object, "an object");
  } else {
    p.push_back("unknown experiment '" + e + "'");
  }
  return p;
}

ReportCheck verify_report_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    return {false, std::string("not valid JSON: ") + e.what()};
  }
  const auto problems = schema_problems(doc);
  if (!problems.empty()) {
    std::string msg = "schema violation:";
    for (const auto& s : problems) msg += " " + s + ";";
    return {false, msg};
  }
  const std::string stored = doc["digest"];
  Json copy = doc;
  seal(copy);
  if (copy["digest"] != stored)
    return {false, "digest mismatch: stored " + stored + ", computed " +
                       copy["digest"].get<std::string>()};
  if (doc["experiment"] == "torus_cover" || doc["experiment"] == "sphere_cover") {
    // The density must follow from the stored centers and measures.
    const Json& r = doc["report"];
    const double want = static_cast<double>(r["chosen_centers"].size()) *
                        r["body_measure"].get<double>() / r["region_measure"].get<double>();
    if (std::abs(want - r["density"].get<double>()) > 1e-9 * std::max(1.0, want))
      return {false, "density does not match the chosen centers"};
  }
  return {true, "ok"};
}

ReportCheck verify_report_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {false, "cannot open " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return verify_report_text(ss.str());
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    out << text;
  };
  write("report.json", dump(result.report));
  write("bounds.csv", result.bounds_csv);
  if (!result.points_csv.empty()) write("points.csv", result.points_csv);
  if (!result.table_csv.empty()) write("table.csv", result.table_csv);
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail << " ("
     << std::fixed << std::setprecision(1) << r.seconds << " s)";
  return os.str();
}

}  // namespace covering::harness
