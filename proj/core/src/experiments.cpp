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

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "covering/bounds.hpp"
#include "covering/harness.hpp"
#include "covering/parallel.hpp"
#include "covering/polytope.hpp"
#include "covering/rng.hpp"
#include "covering/sphere.hpp"
#include "covering/torus.hpp"
#include "experiments_internal.hpp"

namespace covering::harness {

std::string num(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::vector<double> cap_size_phi_grid() {
  std::vector<double> out;
  for (int i = 0; i < 20; ++i) out.push_back(0.05 + (std::numbers::pi / 2.0 - 0.1) * i / 19.0);
  return out;
}

LnnesszamConsistency lnnesszam_consistency(const LnnesszamReport& rep) {
  using High = boost::multiprecision::cpp_bin_float_50;
  LnnesszamConsistency c;
  for (const auto& row : rep.rows) {
    const High n = row.n;
    const High ln = log(n);
    const High a = 1 + n * log(4 * n * ln);
    const High first = a * exp(1 / ln);
    const High middle = a * (1 + 2 / ln);
    const High last = n * ln + n * log(ln) + 5 * n;
    if ((first <= middle) != row.link1 || (middle <= last) != row.link2) {
      c.agrees = false;
      c.disagreements.push_back(row.n);
    }
    if (rep.first_chain && row.n >= *rep.first_chain && !(row.link1 && row.link2))
      c.chain_tail_holds = false;
  }
  return c;
}

MilmanPajorSummary milman_pajor_sweep(std::uint64_t seed, std::size_t count) {
  MilmanPajorSummary s;
  s.polygons = count;
  s.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    Engine eng = make_stream(seed, "instance", i);
    const int vertices = 3 + static_cast<int>(uniform_index(eng, 10));
    const double scale = 0.5 + 2.0 * uniform01(eng);
    const Body k = body_of(random_convex_polygon(eng(), scale, vertices));
    const ReflectionVolumes rv = reflection_intersection_volume(k);
    s.min_ratio = std::min(s.min_ratio, rv.ratio);
    if (!rv.milman_pajor_holds || rv.ratio < 0.25) ++s.violations;
  }
  return s;
}

namespace {

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = to_string(c.experiment);
  j["seed"] = c.seed;
  j["grid_step"] = c.grid_step;
  switch (c.experiment) {
    case Experiment::kTorusCover:
      if (c.body_file.empty()) {
        j["radius"] = c.radius;
      } else {
        j["body"] = c.body_file.filename().string();
      }
      j["side"] = c.side;
      j["delta"] = c.delta;
      j["center_stride"] = c.center_stride;
      break;
    case Experiment::kSphereCover:
      j["phi"] = c.phi;
      j["delta"] = c.delta;
      j["rotations"] = c.rotations;
      j["samples"] = c.samples;
      break;
    case Experiment::kSetcoverBench:
      if (!c.instance_file.empty()) j["instance"] = c.instance_file.filename().string();
      j["fano"] = c.fano;
      j["random_instances"] = c.random_instances;
      if (c.random_instances > 0) {
        j["random_elements"] = c.random_elements;
        j["random_sets"] = c.random_sets;
        j["random_min_size"] = c.random_min_size;
        j["random_max_size"] = c.random_max_size;
      }
      break;
    case Experiment::kBoundTable:
      j["n_values"] = c.n_values;
      break;
    case Experiment::kInequalitySuite:
      j["checks"] = c.checks;
      j["n_values"] = c.n_values;
      break;
  }
  return j;
}

Json envelope(const ExperimentConfig& c) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["experiment"] = to_string(c.experiment);
  doc["preset"] = c.preset;
  doc["seed"] = c.seed;
  doc["config"] = config_json(c);
  return doc;
}

std::string bounds_csv(const std::map<std::string, double>& bounds, double density) {
  std::string out = "bound_name,value,achieved_density\n";
  for (const auto& [name, value] : bounds) out += name + "," + num(value) + "," + num(density) + "\n";
  return out;
}

ExperimentResult run_torus(const ExperimentConfig& c) {
  const Body k = c.body_file.empty() ? Body::ball(Vec::Zero(2), c.radius) : read_body_file(c.body_file);
  TorusRegion region;
  region.side = c.side;
  region.dim = k.dim();
  TorusCoverOptions opt;
  opt.grid_step = c.grid_step;
  opt.center_stride = c.center_stride;
  opt.threads = c.threads;
  const CoverReport r = torus_cover_density(k, region, c.delta, c.seed, opt);

  ExperimentResult out;
  out.report = envelope(c);
  out.report["report"] = cover_report_json(r);
  out.report["valid"] = r.valid;
  seal(out.report);
  out.certified = r.valid;
  out.bounds_csv = bounds_csv(r.bounds, r.density);
  std::ostringstream pts;
  pts << "set";
  for (std::size_t a = 0; a < k.dim(); ++a) pts << ",x" << a;
  pts << "\n";
  auto row = [&](const char* set, const Vec& p) {
    pts << set;
    for (Eigen::Index a = 0; a < p.size(); ++a) pts << "," << num(p[a]);
    pts << "\n";
  };
  for (const Vec& p : r.net) row("net", p);
  for (const Vec& p : r.chosen_centers) row("center", p);
  out.points_csv = pts.str();
  return out;
}

ExperimentResult run_sphere(const ExperimentConfig& c) {
  Vec u(3);
  u << 0.0, 0.0, 1.0;
  const SphericalBody k = SphericalBody::cap(make_cap(u, c.phi));
  SphereCoverOptions opt;
  opt.validation_samples = c.samples;
  opt.threads = c.threads;
  const CoverReport r = sphere_cover_greedy(k, c.delta, c.rotations, c.seed, opt);

  ExperimentResult out;
  out.report = envelope(c);
  out.report["report"] = cover_report_json(r);
  out.report["valid"] = r.valid;
  seal(out.report);
  out.certified = r.valid;
  out.bounds_csv = bounds_csv(r.bounds, r.density);
  std::ostringstream pts;
  pts << "set,x,y,z\n";
  auto row = [&](const char* set, const Vec& p) {
    pts << set << "," << num(p[0]) << "," << num(p[1]) << "," << num(p[2]) << "\n";
  };
  for (const Vec& p : r.net) row("net", p);
  for (const Vec& p : r.chosen_centers) row("center", p);
  out.points_csv = pts.str();
  return out;
}

// Exact rational LP only where it stays fast.
constexpr std::size_t kExactLpCells = 400;

Json setcover_entry(const std::string& name, const CoverInstance& inst, bool& ok,
                    std::string& csv) {
  Json e;
  e["name"] = name;
  e["elements"] = inst.num_elements();
  e["sets"] = inst.num_candidates();
  e["max_deg"] = inst.max_candidate_size();
  const LsReport ls = verify_ls_bound(inst, false);
  e["greedy"] = ls.greedy_size;
  e["tau_star"] = ls.tau_star;
  e["ls_bound"] = ls.bound;
  e["ls_holds"] = ls.holds;
  if (inst.num_elements() * inst.num_candidates() <= kExactLpCells) {
    const Rational exact = fractional_cover_number_exact(inst);
    std::ostringstream os;
    os << exact;
    e["tau_star_exact"] = os.str();
  }
  Json tau;
  try {
    const std::size_t t = exact_cover_bruteforce(inst, ls.greedy_size);
    tau = t;
    if (t > ls.greedy_size) ok = false;
  } catch (const SizeLimitExceeded&) {
    // Node budget exhausted; the optimum stays unknown.
  }
  e["tau"] = tau;
  if (!ls.holds) ok = false;
  csv += "lovasz_stein/" + name + "," + num(ls.bound) + "," + std::to_string(ls.greedy_size) + "\n";
  return e;
}

ExperimentResult run_setcover(const ExperimentConfig& c) {
  ExperimentResult out;
  out.report = envelope(c);
  Json instances = Json::array();
  bool ok = true;
  std::string csv = "bound_name,value,achieved_density\n";
  if (c.fano) {
    instances.push_back(setcover_entry("fano", fano_plane(), ok, csv));
  } else if (!c.instance_file.empty()) {
    std::ifstream in(c.instance_file);
    if (!in) throw ConfigError("cannot open instance file " + c.instance_file.string());
    const CoverInstance inst = read_cover_instance(in);
    instances.push_back(setcover_entry(c.instance_file.filename().string(), inst, ok, csv));
  } else {
    for (std::size_t i = 0; i < c.random_instances; ++i) {
      Engine eng = make_stream(c.seed, "instance", i);
      const CoverInstance inst =
          random_cover_instance(c.random_elements, c.random_sets, c.random_min_size,
                                c.random_max_size, eng());
      instances.push_back(setcover_entry("random" + std::to_string(i), inst, ok, csv));
    }
  }
  out.report["instances"] = std::move(instances);
  out.report["valid"] = ok;
  seal(out.report);
  out.certified = ok;
  out.bounds_csv = csv;
  return out;
}

std::string params_text(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ";";
    s += k + "=" + num(v);
  }
  return s;
}

Json lnnesszam_json(const LnnesszamReport& rep, std::string& table, bool& ok) {
  const LnnesszamConsistency cons = lnnesszam_consistency(rep);
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n},
                    {"first", r.first},
                    {"middle", r.middle},
                    {"last", r.last},
                    {"link1", r.link1},
                    {"link2", r.link2},
                    {"x", r.x},
                    {"scalar", r.scalar}});
    const std::string n = num(r.n);
    table += "lnnesszam_first," + n + ",," + num(r.first) + "\n";
    table += "lnnesszam_middle," + n + ",," + num(r.middle) + "\n";
    table += "lnnesszam_last," + n + ",," + num(r.last) + "\n";
  }
  ok = ok && cons.agrees && cons.chain_tail_holds;
  return Json{{"rows", rows},
              {"first_link1", rep.first_link1 ? Json(*rep.first_link1) : Json()},
              {"first_link2", rep.first_link2 ? Json(*rep.first_link2) : Json()},
              {"first_chain", rep.first_chain ? Json(*rep.first_chain) : Json()},
              {"failures", rep.failures},
              {"high_precision_agrees", cons.agrees},
              {"chain_holds_beyond_first", cons.chain_tail_holds}};
}

ExperimentResult run_bound_table(const ExperimentConfig& c) {
  ExperimentResult out;
  out.report = envelope(c);
  std::string table = "name,n,params,value\n";
  std::string csv = "bound_name,value,achieved_density\n";
  Json rows = Json::array();
  bool ok = true;
  for (double nd : c.n_values) {
    const int n = static_cast<int>(nd);
    for (const BoundResult& b : {rogers_bound(n), spherebycaps_bound(n)}) {
      rows.push_back({{"name", b.name}, {"n", n}, {"params", b.parameters}, {"value", b.value}});
      table += b.name + "," + std::to_string(n) + "," + params_text(b.parameters) + "," +
               num(b.value) + "\n";
      csv += b.name + "/" + std::to_string(n) + "," + num(b.value) + ",\n";
    }
    if (spherebycaps_bound(n).value > rogers_bound(n).value) ok = false;
  }
  out.report["rows"] = std::move(rows);
  out.report["lnnesszam"] = lnnesszam_json(lnnesszam_check(c.n_values), table, ok);
  out.report["valid"] = ok;
  seal(out.report);
  out.certified = ok;
  out.table_csv = table;
  out.bounds_csv = csv;
  return out;
}

ExperimentResult run_inequalities(const ExperimentConfig& c) {
  ExperimentResult out;
  out.report = envelope(c);
  std::string table = "name,n,params,value\n";
  Json checks = Json::object();
  bool ok = true;
  auto wants = [&](const char* s) {
    return std::find(c.checks.begin(), c.checks.end(), s) != c.checks.end();
  };
  if (wants("bw")) {
    std::size_t count = 0, violations = 0;
    for (int n = 2; n <= 20; ++n) {
      for (double phi : cap_size_phi_grid()) {
        for (double t : {1.1, 1.5, 2.0}) {
          const CapSizeCheck r = bw_bound_check(n, phi, t);
          ++count;
          const std::string params = "phi=" + num(phi) + ";t=" + num(t) + ";omega=" + num(r.omega);
          auto emit = [&](const char* name, bool holds) {
            table += std::string(name) + "," + std::to_string(n) + "," + params + "," +
                     (holds ? "1" : "0") + "\n";
            if (!holds) ++violations;
          };
          emit("cap_lower", r.lower_holds);
          if (r.upper_holds) emit("cap_upper", *r.upper_holds);
          if (r.scaling_holds) emit("cap_scaling", *r.scaling_holds);
        }
      }
    }
    checks["bw"] = {{"grid_points", count}, {"violations", violations}};
    ok = ok && violations == 0;
  }
  if (wants("jordan")) {
    const JordanReport j = jordan_check(10000);
    checks["jordan"] = {{"points", j.points}, {"violations", j.violations}, {"min_margin", j.min_margin}};
    table += "jordan,0,points=" + std::to_string(j.points) + "," + std::to_string(j.violations) + "\n";
    ok = ok && j.violations == 0;
  }
  if (wants("lnnesszam")) {
    const auto& ns = c.n_values.empty() ? std::vector<double>{3, 5, 10, 100, 1000, 10000} : c.n_values;
    checks["lnnesszam"] = lnnesszam_json(lnnesszam_check(ns), table, ok);
  }
  if (wants("milman_pajor")) {
    const MilmanPajorSummary mp = milman_pajor_sweep(c.seed, 50);
    checks["milman_pajor"] = {
        {"polygons", mp.polygons}, {"violations", mp.violations}, {"min_ratio", mp.min_ratio}};
    table += "milman_pajor,2,polygons=" + std::to_string(mp.polygons) + "," + num(mp.min_ratio) + "\n";
    ok = ok && mp.violations == 0;
  }
  out.report["checks"] = std::move(checks);
  out.report["valid"] = ok;
  seal(out.report);
  out.certified = ok;
  out.table_csv = table;
  out.bounds_csv = "bound_name,value,achieved_density\n";
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  switch (config.experiment) {
    case Experiment::kTorusCover:
      return run_torus(config);
    case Experiment::kSphereCover:
      return run_sphere(config);
    case Experiment::kSetcoverBench:
      return run_setcover(config);
    case Experiment::kBoundTable:
      return run_bound_table(config);
    case Experiment::kInequalitySuite:
      return run_inequalities(config);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace covering::harness
