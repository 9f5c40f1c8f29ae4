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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "covering/bounds.hpp"
#include "covering/harness.hpp"
#include "covering/hypercover.hpp"
#include "covering/parallel.hpp"
#include "covering/polytope.hpp"
#include "covering/rng.hpp"
#include "covering/sphere.hpp"
#include "experiments_internal.hpp"

namespace covering::harness {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fixed(double x, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

CriterionResult titled(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

// --- 1 -------------------------------------------------------------------

CriterionResult lovasz_stein(const SuiteOptions& opt) {
  CriterionResult r = titled(1, "Lovasz-Stein certificate");
  const auto start = std::chrono::steady_clock::now();
  std::size_t failures = 0, checked = 0;
  double worst_ratio = 0.0;  // greedy / bound
  auto check = [&](const CoverInstance& inst) {
    const LsReport ls = verify_ls_bound(inst, true);
    ++checked;
    worst_ratio = std::max(worst_ratio, static_cast<double>(ls.greedy_size) / ls.bound);
    if (!ls.holds || !ls.tau || *ls.tau > ls.greedy_size) ++failures;
  };
  for (std::uint64_t i = 0; i < 200; ++i) {
    Engine eng = make_stream(opt.seed, "instance", i);
    const std::size_t m = 10 + uniform_index(eng, 51);
    const std::size_t k = 10 + uniform_index(eng, 111);
    const std::size_t hi = 2 + uniform_index(eng, std::min<std::size_t>(m - 1, 11));
    check(random_cover_instance(m, k, 2, hi, eng()));
  }
  check(fano_plane());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = failures == 0 && secs < 60.0;
  r.detail = std::to_string(checked) + " instances, " + std::to_string(failures) +
             " failures, max greedy/bound " + fixed(worst_ratio) + ", " + fixed(secs, 1) +
             " s (limit 60)";
  return r;
}

// --- 2 -------------------------------------------------------------------

CriterionResult fano(const SuiteOptions&) {
  CriterionResult r = titled(2, "Fano plane");
  const CoverInstance f = fano_plane();
  const double lp = fractional_cover_lp(f).total;
  const Rational exact = fractional_cover_number_exact(f);
  const std::size_t tau = exact_cover_bruteforce(f);
  const std::size_t greedy = greedy_cover(f).chosen.size();
  r.pass = std::abs(lp - 7.0 / 3.0) <= 1e-9 && exact == Rational(7, 3) && tau == 3 && greedy <= 3;
  std::ostringstream os;
  os << "tau* = " << fixed(lp, 12) << " (exact " << exact << "), tau = " << tau
     << ", greedy = " << greedy;
  r.detail = os.str();
  return r;
}

// --- 3 -------------------------------------------------------------------

double perimeter(const Polygon& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[(i + 1) % p.size()] - p[i]).norm();
  return s;
}

struct SandwichCase {
  double lower = 0.0, upper = 0.0, tau_star = 0.0;
  double tol_lower = 0.0, tol_upper = 0.0;
  std::size_t ground = 0, candidates = 0;
};

// Ground = lattice points h Z^2 in K; candidate c (lattice point) = ground
// points in c + L. Lattice counts of a convex set S with area A and
// perimeter P satisfy A - P r <= h^2 #(S ∩ h Z^2) <= A + P r + pi r^2,
// r = h / sqrt 2 (cells of the counted points sit inside S + B(r) and
// cover S ∼ B(r)). The uniform dual and primal solutions then give
//   tau* >= (A_K - P_K r) / (A_L + P_L r + pi r^2),
//   tau* <= (A_{K-L} + P_{K-L} r + pi r^2) / (A_L - P_L r),
// and the tolerances are the gaps between these and the continuum bounds.
SandwichCase sandwich_case(const Polygon& kp, const Polygon& lp_poly) {
  const Body k = body_of(kp);
  const Body l = body_of(lp_poly);
  Polygon minus_l;
  for (const Point2& v : lp_poly) minus_l.push_back(-v);
  const Polygon diff = minkowski_sum(kp, minus_l);
  const double ak = polygon_area(kp), al = polygon_area(lp_poly), ad = polygon_area(diff);
  // Keep the candidate count within the dense LP limit.
  double h = std::sqrt(ad / 420.0);
  const SandwichBounds sb = simple_sandwich_bounds(k, l);

  std::vector<Vec> ground;
  auto lattice_in = [&](const Box& box, auto&& keep) {
    std::vector<Vec> pts;
    const long x0 = static_cast<long>(std::floor(box.lo[0] / h)), x1 = static_cast<long>(std::ceil(box.hi[0] / h));
    const long y0 = static_cast<long>(std::floor(box.lo[1] / h)), y1 = static_cast<long>(std::ceil(box.hi[1] / h));
    for (long i = x0; i <= x1; ++i)
      for (long j = y0; j <= y1; ++j) {
        Vec p(2);
        p << static_cast<double>(i) * h, static_cast<double>(j) * h;
        if (keep(p)) pts.push_back(p);
      }
    return pts;
  };
  ground = lattice_in(k.bbox(), [&](const Vec& p) { return k.contains(p); });
  const Body dbody = body_of(diff);
  const auto centers = lattice_in(dbody.bbox(), [&](const Vec& p) { return dbody.contains(p); });
  std::vector<std::vector<ElementId>> sets;
  for (const Vec& c : centers) {
    std::vector<ElementId> s;
    for (std::size_t e = 0; e < ground.size(); ++e)
      if (l.contains(Vec(ground[e] - c))) s.push_back(static_cast<ElementId>(e));
    if (!s.empty()) sets.push_back(std::move(s));
  }
  const CoverInstance inst = CoverInstance::build(ground.size(), std::move(sets));
  SandwichCase out;
  out.ground = inst.num_elements();
  out.candidates = inst.num_candidates();
  out.tau_star = fractional_cover_lp(inst).total;
  out.lower = sb.lower;
  out.upper = sb.upper;
  const double rr = h / std::sqrt(2.0);
  const double disc_lower =
      std::max(1.0, (ak - perimeter(kp) * rr) / (al + perimeter(lp_poly) * rr + kPi * rr * rr));
  const double disc_upper =
      (ad + perimeter(diff) * rr + kPi * rr * rr) / (al - perimeter(lp_poly) * rr);
  out.tol_lower = std::max(0.0, out.lower - disc_lower) + 1e-9;
  out.tol_upper = std::max(0.0, disc_upper - out.upper) + 1e-9;
  return out;
}

CriterionResult sandwich(const SuiteOptions& opt) {
  CriterionResult r = titled(3, "sandwich bounds");
  std::size_t violations = 0;
  double worst_lower = 1e300, worst_upper = 1e300;
  std::ostringstream cases;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Engine eng = make_stream(opt.seed, "instance", 1000 + i);
    // L comparable to K keeps the lattice error small relative to vol L.
    const double sk = 1.0 + 0.6 * uniform01(eng);
    const double sl = 0.6 + 0.4 * uniform01(eng);
    const Polygon kp = random_convex_polygon(eng(), sk, 4 + static_cast<int>(uniform_index(eng, 6)));
    const Polygon lp = random_convex_polygon(eng(), sl, 3 + static_cast<int>(uniform_index(eng, 7)));
    const SandwichCase c = sandwich_case(kp, lp);
    const double slack_lower = c.tau_star - (c.lower - c.tol_lower);
    const double slack_upper = (c.upper + c.tol_upper) - c.tau_star;
    worst_lower = std::min(worst_lower, slack_lower);
    worst_upper = std::min(worst_upper, slack_upper);
    if (slack_lower < 0.0 || slack_upper < 0.0) ++violations;
    if (i < 3)
      cases << " [" << fixed(c.lower - c.tol_lower, 2) << " <= " << fixed(c.tau_star, 2)
            << " <= " << fixed(c.upper + c.tol_upper, 2) << "]";
  }
  r.pass = violations == 0;
  r.detail = "20 polygon pairs, " + std::to_string(violations) + " violations, min slack lower " +
             fixed(worst_lower, 3) + " upper " + fixed(worst_upper, 3) + ";" + cases.str();
  return r;
}

// --- 4 / 5 ---------------------------------------------------------------

ExperimentConfig torus_config(std::uint64_t seed, double delta, int threads) {
  ExperimentConfig c = preset_config("disk-torus");
  c.seed = seed;
  c.delta = delta;
  c.threads = threads;
  return c;
}

CriterionResult torus(const SuiteOptions& opt) {
  CriterionResult r = titled(4, "torus covering");
  const auto start = std::chrono::steady_clock::now();
  bool all_valid = true, fine_grids = true;
  double best_gap = 1e300, bound = 0.0;
  std::ostringstream runs;
  for (double delta : {0.02, 0.03, 0.05}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const ExperimentResult res = run_experiment(torus_config(opt.seed + s, delta, opt.threads));
      const Json& rep = res.report["report"];
      const double density = rep["density"];
      bound = rep["bounds"]["renbyanything"];
      all_valid = all_valid && res.certified;
      fine_grids = fine_grids && rep["grid_resolution"].get<double>() <= delta / 8.0 + 1e-15;
      best_gap = std::min(best_gap, density - bound);
      runs << " " << delta << "/" << opt.seed + s << ":" << fixed(density, 3) << (res.certified ? "" : "(INVALID)");
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = all_valid && fine_grids && best_gap <= 0.05 && secs < 300.0;
  r.detail = "9 runs valid=" + std::string(all_valid ? "yes" : "no") + ", renbyanything " +
             fixed(bound, 3) + ", densities (delta/seed:density)" + runs.str() + ", " +
             fixed(secs, 1) + " s";
  return r;
}

CriterionResult sphere(const SuiteOptions& opt) {
  CriterionResult r = titled(5, "sphere covering");
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c = preset_config("sphere-caps");
  c.seed = opt.seed;
  c.threads = opt.threads;
  const ExperimentResult res = run_experiment(c);
  const Json& rep = res.report["report"];
  const double density = rep["density"];
  const double bound = rep["bounds"]["spherebyanything"];
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = res.certified && density <= bound * 1.1 && secs < 300.0;
  r.detail = "cap pi/6, delta phi/20: valid on " + std::to_string(rep["certification_points"].get<std::uint64_t>()) +
             " samples=" + (res.certified ? "yes" : "no") + ", density " + fixed(density, 3) +
             " vs 1.1 x spherebyanything " + fixed(1.1 * bound, 3) + ", " + fixed(secs, 1) + " s";
  return r;
}

// --- 6 -------------------------------------------------------------------

CriterionResult cap_numerics(const SuiteOptions& opt) {
  CriterionResult r = titled(6, "cap-measure numerics");
  double worst_half = 0.0, worst_s2 = 0.0, worst_z = 0.0;
  for (int n = 1; n <= 20; ++n) worst_half = std::max(worst_half, std::abs(cap_measure(n, kPi / 2) - 0.5));
  for (int i = 0; i < 50; ++i) {
    const double phi = kPi * (i + 0.5) / 50.0;
    worst_s2 = std::max(worst_s2, std::abs(cap_measure(2, phi) - (1.0 - std::cos(phi)) / 2.0));
  }
  // Monte Carlo: uniform points on S^n from normalized Gaussians in R^(n+1).
  const std::vector<std::pair<int, double>> spots{{2, 0.7}, {3, 1.1}, {4, 0.9}, {6, 1.3}, {10, 1.4}};
  constexpr std::uint64_t kSamples = 1'000'000;
  std::size_t spot_failures = 0;
  for (std::size_t s = 0; s < spots.size(); ++s) {
    const auto [n, phi] = spots[s];
    constexpr std::size_t kChunk = 65536;
    const std::size_t chunks = (kSamples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(kSamples, kChunk, [&](std::size_t b, std::size_t e) {
      Engine eng = make_stream(opt.seed, "mc", s * 1000 + b / kChunk);
      std::uint64_t h = 0;
      std::vector<double> g(static_cast<std::size_t>(n) + 1);
      for (std::size_t i = b; i < e; ++i) {
        double norm2 = 0.0;
        for (double& x : g) {
          x = standard_normal(eng);
          norm2 += x * x;
        }
        if (g[0] >= std::cos(phi) * std::sqrt(norm2)) ++h;
      }
      hits[b / kChunk] = h;
    }, opt.threads);
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    const double p = static_cast<double>(total) / kSamples;
    const double q = cap_measure(n, phi);
    const double sigma = std::sqrt(q * (1.0 - q) / kSamples);
    const double z = std::abs(p - q) / sigma;
    worst_z = std::max(worst_z, z);
    if (z > 3.0) ++spot_failures;
  }
  r.pass = worst_half < 1e-12 && worst_s2 < 1e-12 && spot_failures == 0;
  std::ostringstream os;
  os << "max |Omega(pi/2) - 1/2| = " << worst_half << ", max S^2 error = " << worst_s2
     << ", MC worst |z| = " << fixed(worst_z, 2) << " over 5 spots of 1e6";
  r.detail = os.str();
  return r;
}

// --- 7..10 ---------------------------------------------------------------

CriterionResult cap_size(const SuiteOptions&) {
  CriterionResult r = titled(7, "cap-size inequalities");
  std::size_t points = 0, evaluated = 0, violations = 0;
  for (int n = 2; n <= 20; ++n)
    for (double phi : cap_size_phi_grid())
      for (double t : {1.1, 1.5, 2.0}) {
        const CapSizeCheck c = bw_bound_check(n, phi, t);
        ++points;
        ++evaluated;
        if (!c.lower_holds) ++violations;
        if (c.upper_holds) {
          ++evaluated;
          if (!*c.upper_holds) ++violations;
        }
        if (c.scaling_holds) {
          ++evaluated;
          if (!*c.scaling_holds) ++violations;
        }
      }
  r.pass = violations == 0;
  r.detail = std::to_string(points) + " grid points, " + std::to_string(evaluated) +
             " applicable inequalities, " + std::to_string(violations) + " violations";
  return r;
}

CriterionResult jordan(const SuiteOptions&) {
  CriterionResult r = titled(8, "Jordan inequality");
  const JordanReport j = jordan_check(10000);
  r.pass = j.violations == 0 && j.points == 10000;
  std::ostringstream os;
  os << j.points << " points, " << j.violations << " violations, min margin " << j.min_margin;
  r.detail = os.str();
  return r;
}

CriterionResult lnnesszam(const SuiteOptions&) {
  CriterionResult r = titled(9, "ln-chain");
  const std::vector<double> ns{3, 5, 10, 100, 1000, 10000};
  const LnnesszamReport rep = lnnesszam_check(ns);
  const LnnesszamConsistency cons = lnnesszam_consistency(rep);
  r.pass = cons.agrees && cons.chain_tail_holds && rep.first_chain.has_value();
  std::ostringstream os;
  os << "links evaluated at n = 3, 5, 10, 100, 1e3, 1e4 (50-digit recheck "
     << (cons.agrees ? "agrees" : "DISAGREES") << "); smallest sampled n with the full chain: "
     << (rep.first_chain ? num(*rep.first_chain) : std::string("none")) << "; chain fails at";
  for (double n : rep.failures) os << " " << num(n);
  if (rep.failures.empty()) os << " none";
  for (const auto& row : rep.rows)
    if (!row.link2) os << "; n=" << num(row.n) << " middle " << fixed(row.middle, 2) << " > " << fixed(row.last, 2);
  r.detail = os.str();
  return r;
}

CriterionResult milman_pajor(const SuiteOptions& opt) {
  CriterionResult r = titled(10, "Milman-Pajor check");
  const MilmanPajorSummary s = milman_pajor_sweep(opt.seed, 50);
  r.pass = s.violations == 0 && s.polygons == 50;
  r.detail = std::to_string(s.polygons) + " polygons, " + std::to_string(s.violations) +
             " violations, min vol(K cap -K)/vol K = " + fixed(s.min_ratio) + " (needs >= 0.25)";
  return r;
}

// --- 11 ------------------------------------------------------------------

CriterionResult determinism(const SuiteOptions& opt) {
  CriterionResult r = titled(11, "determinism");
  std::vector<ExperimentConfig> configs;
  configs.push_back(torus_config(opt.seed, 0.03, 0));
  ExperimentConfig sph = preset_config("sphere-caps");
  sph.seed = opt.seed;
  sph.delta = sph.phi / 8.0;
  sph.rotations = 50;
  sph.samples = 50'000;
  configs.push_back(sph);
  ExperimentConfig sc = preset_config("fano");
  sc.fano = false;
  sc.seed = opt.seed;
  sc.random_instances = 5;
  configs.push_back(sc);
  configs.push_back(preset_config("inequality-suite"));
  std::size_t identical = 0, compared = 0;
  for (ExperimentConfig c : configs) {
    std::string reference;
    for (int threads : {1, 2, 5, 1}) {
      c.threads = threads;
      const std::string text = dump(run_experiment(c).report);
      if (reference.empty()) {
        reference = text;
        continue;
      }
      ++compared;
      if (text == reference) ++identical;
    }
  }
  r.pass = identical == compared;
  r.detail = std::to_string(identical) + "/" + std::to_string(compared) +
             " repeated reports byte-identical (torus, sphere, setcover, inequalities; threads 1, 2, 5, 1)";
  return r;
}

}  // namespace

std::vector<CriterionResult> verify_all(const SuiteOptions& options) {
  using Fn = CriterionResult (*)(const SuiteOptions&);
  const std::vector<Fn> criteria{lovasz_stein, fano,   sandwich, torus,        sphere,     cap_numerics,
                                 cap_size,     jordan, lnnesszam, milman_pajor, determinism};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[i](options);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.pass = false;
      r.detail = std::string("raised: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace covering::harness
