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
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "covering/bounds.hpp"
#include "covering/errors.hpp"
#include "covering/euclid.hpp"
#include "doctest.h"

using namespace covering;

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

double grid_min(const std::vector<double>& grid, auto&& f) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double v = f(x);
    if (std::isfinite(v)) best = std::min(best, v);
  }
  return best;
}

// Area of {k - l} for boxes sampled on a lattice of spacing h: every pair
// difference marks its cell in a bitmap over [-span, span]^2.
double dilation_area(const Vec& klo, const Vec& khi, const Vec& llo, const Vec& lhi,
                     double span, double h) {
  const int cells = static_cast<int>(std::ceil(2.0 * span / h));
  std::vector<char> hit(static_cast<std::size_t>(cells) * cells, 0);
  auto samples = [h](double lo, double hi) {
    std::vector<double> s;
    for (double x = lo; x <= hi + 1e-12; x += h) s.push_back(x);
    return s;
  };
  const auto kx = samples(klo[0], khi[0]), ky = samples(klo[1], khi[1]);
  const auto lx = samples(llo[0], lhi[0]), ly = samples(llo[1], lhi[1]);
  for (double ax : kx)
    for (double bx : lx)
      for (double ay : ky)
        for (double by : ly) {
          const int i = std::min(cells - 1, static_cast<int>((ax - bx + span) / h));
          const int j = std::min(cells - 1, static_cast<int>((ay - by + span) / h));
          hit[static_cast<std::size_t>(i) * cells + j] = 1;
        }
  return static_cast<double>(std::count(hit.begin(), hit.end(), 1)) * h * h;
}

}  // namespace

TEST_CASE("Rogers expression") {
  const auto direct = [](double n) { return n * std::log(n) + n * std::log(std::log(n)) + 5 * n; };
  CHECK(rogers_bound(3).value == doctest::Approx(direct(3)).epsilon(1e-14));
  CHECK(rogers_bound(3).value == doctest::Approx(18.58).epsilon(1e-3));
  CHECK(rogers_bound(10).value == doctest::Approx(81.37).epsilon(1e-3));
  CHECK(rogers_bound(3).flags.empty());
  const BoundResult two = rogers_bound(2);
  CHECK(two.value == doctest::Approx(direct(2)));
  CHECK(two.flags.size() == 1);
  CHECK_THROWS_AS(rogers_bound(1), BadParam);
  for (int n = 3; n < 2000; ++n) CHECK(rogers_bound(n + 1).value > rogers_bound(n).value);
}

TEST_CASE("log grid endpoints and spacing") {
  const auto g = log_grid(1e-3, 1.0, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1.0);
  CHECK(g[1] == doctest::Approx(1e-2));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), BadParam);
}

TEST_CASE("renbyanything for the unit disk against analytic inner volumes") {
  const Body disk = Body::ball(vec2(0, 0), 1.0);
  const auto grid = default_delta_grid(disk);
  CHECK(grid.size() == 64);
  // vol K_{-d} = pi (1-d)^2 and vol B(d/2) = pi d^2 / 4.
  const auto analytic = [](double d) {
    if (d >= 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / ((1 - d) * (1 - d)) * (1.0 + std::log((1 - d / 2) * (1 - d / 2) / (d * d / 4)));
  };
  const double want = grid_min(grid, analytic);

  const BoundResult plain = renbyanything_bound(disk, grid, {.refine = false});
  CHECK(plain.value == doctest::Approx(want).epsilon(1e-12));
  REQUIRE(plain.attained_at);
  CHECK(std::find(grid.begin(), grid.end(), *plain.attained_at) != grid.end());
  CHECK(analytic(*plain.attained_at) == doctest::Approx(plain.value).epsilon(1e-12));
  CHECK(plain.evaluations == grid.size());

  const BoundResult refined = renbyanything_bound(disk, grid);
  CHECK(refined.value <= plain.value);
  CHECK(refined.parameters.at("grid_min") == doctest::Approx(want).epsilon(1e-12));
  // A dense scan of the analytic curve bounds the refinement from below.
  const double dense = grid_min(log_grid(1e-4, 0.999, 200000), analytic);
  CHECK(refined.value >= dense * (1 - 1e-9));
  CHECK(refined.value >= 1.0);
}

TEST_CASE("renbyanything on a lattice body and infeasible grids") {
  const Body square = Body::box(vec2(0, 0), vec2(1, 1));
  const BoundResult r = renbyanything_bound(square, default_delta_grid(square));
  CHECK(std::isfinite(r.value));
  CHECK(r.value >= 1.0);
  const Body k = Body::indicator(
      [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] <= 0.25; },
      Box{vec2(-0.5, -0.5), vec2(0.5, 0.5)}, 2e-3);
  const BoundResult approx = renbyanything_bound(k, default_delta_grid(k));
  const BoundResult exact = renbyanything_bound(Body::ball(vec2(0, 0), 0.5), default_delta_grid(k));
  CHECK(approx.value == doctest::Approx(exact.value).epsilon(0.02));
  const std::vector<double> too_deep{0.6, 0.8, 1.0};
  CHECK_THROWS_AS(renbyanything_bound(Body::ball(vec2(0, 0), 0.5), too_deep), InfeasibleInstance);
}

TEST_CASE("spherebyanything for a pi/3 cap on S^2 in closed form") {
  Vec u(3);
  u << 0, 0, 1;
  const SphericalBody cap = SphericalBody::cap(make_cap(u, kPi / 3));
  const auto area = [](double phi) { return (1.0 - std::cos(phi)) / 2.0; };
  const auto expr = [&](double d) {
    if (d >= kPi / 3) return std::numeric_limits<double>::infinity();
    return area(kPi / 3) / area(kPi / 3 - d) *
           (1.0 + std::log(area(kPi / 3 - d / 2) / area(d / 2)));
  };
  auto grid = default_sphere_delta_grid(cap);
  grid.push_back(kPi / 3);  // empty erosion, skipped
  grid.push_back(1.5);
  const BoundResult plain = spherebyanything_bound(cap, grid, {.refine = false});
  CHECK(plain.value == doctest::Approx(grid_min(grid, expr)).epsilon(1e-10));
  CHECK(*plain.attained_at < kPi / 3);
  CHECK(plain.value >= 1.0);
  const BoundResult refined = spherebyanything_bound(cap, grid);
  CHECK(refined.value <= plain.value);
  const std::vector<double> bad{1.2, 1.4};
  CHECK_THROWS_AS(spherebyanything_bound(cap, bad), InfeasibleInstance);
}

TEST_CASE("spherebycaps stays under the Rogers expression") {
  CHECK_THROWS_AS(spherebycaps_bound(2), BadParam);
  std::vector<int> ns;
  for (int n = 3; n <= 200; ++n) ns.push_back(n);
  for (int n = 250; n <= 10000; n += 250) ns.push_back(n);
  for (int n : ns) {
    const BoundResult r = spherebycaps_bound(n);
    const double eta = 1.0 / (2.0 * n * std::log(n));
    CHECK(r.parameters.at("eta") == doctest::Approx(eta));
    const double direct = (1.0 + n * std::log(2.0 / eta)) * std::pow(1.0 / (1.0 - eta), n);
    CHECK(r.value == doctest::Approx(direct).epsilon(1e-13));
    CHECK(r.parameters.at("headline") == doctest::Approx(rogers_bound(n).value));
    CHECK(r.value <= rogers_bound(n).value);
  }
}

TEST_CASE("spherebyconvex picks an interior kappa") {
  const int n = 2;
  const double rho = 0.5;
  const double sigma = cap_measure(n, rho);
  const auto grid = default_kappa_grid();
  const auto expr = [&](double k) {
    const double denom = sigma - sigma * (1.0 - std::pow(1.0 - k, n));
    if (!(denom > 0)) return std::numeric_limits<double>::infinity();
    return sigma / denom * (2.0 * n + n * std::log(1.0 / (k * rho)));
  };
  const BoundResult plain = spherebyconvex_bound(n, sigma, rho, grid, {.refine = false});
  CHECK(plain.value == doctest::Approx(grid_min(grid, expr)).epsilon(1e-12));
  CHECK(*plain.attained_at > grid.front());
  CHECK(*plain.attained_at < grid.back());
  CHECK(plain.parameters.count("pre_jordan_term") == 1);
  const BoundResult refined = spherebyconvex_bound(n, sigma, rho, grid);
  CHECK(std::isfinite(refined.value));
  CHECK(refined.value <= plain.value);

  // A tiny sigma_k leaves only tiny kappa, which the grid does not reach.
  const std::vector<double> coarse{0.1, 0.5, 0.9};
  CHECK_THROWS_AS(spherebyconvex_bound(n, 1e-9 * sigma, rho, coarse), InfeasibleInstance);
  CHECK_THROWS_AS(spherebyconvex_bound(n, 2 * sigma, rho, grid), BadParam);
  CHECK_THROWS_AS(spherebyconvex_bound(n, sigma, 2.0, grid), BadParam);
}

TEST_CASE("sandwich bounds for boxes") {
  const Body unit = Body::box(vec2(0, 0), vec2(1, 1));
  const SandwichBounds s = simple_sandwich_bounds(unit, unit);
  CHECK(s.lower == 1.0);
  CHECK(s.upper == doctest::Approx(4.0).epsilon(1e-12));
  const double h = 0.02;
  const double oracle = dilation_area(vec2(0, 0), vec2(1, 1), vec2(0, 0), vec2(1, 1), 1.5, h);
  CHECK(std::abs(s.upper - oracle) <= 4.0 * 2.0 * h * 2.0);

  const Body rect = Body::box(vec2(0, 0), vec2(2, 1));
  const SandwichBounds r = simple_sandwich_bounds(rect, unit);
  CHECK(r.lower == doctest::Approx(2.0));
  CHECK(r.upper == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(r.lower <= r.upper);

  // Raster path: a disk of radius 1/2 against itself gives the disk of
  // radius 1, area pi.
  const auto disk = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] <= 0.25; };
  const Body d = Body::indicator(disk, Box{vec2(-0.5, -0.5), vec2(0.5, 0.5)}, 5e-3);
  const SandwichBounds dd = simple_sandwich_bounds(d, d, 5e-3);
  CHECK(dd.lower == 1.0);
  CHECK(dd.upper == doctest::Approx(kPi / (kPi / 4)).epsilon(0.03));

  CHECK_THROWS_AS(simple_sandwich_bounds(unit, Body::box(vec2(0, 0), vec2(1, 0))), ZeroVolume);
  CHECK_THROWS_AS(simple_sandwich_bounds(unit, Body::empty(2)), ZeroVolume);
}

TEST_CASE("lnnesszam chain") {
  const std::vector<double> ns{3, 5, 10, 100, 1000, 10000};
  const LnnesszamReport rep = lnnesszam_check(ns);
  REQUIRE(rep.rows.size() == ns.size());
  for (const auto& row : rep.rows) {
    const double ln = std::log(row.n);
    const double a = 1 + row.n * std::log(4 * row.n * ln);
    CHECK(row.first == doctest::Approx(a * std::exp(1 / ln)));
    CHECK(row.middle == doctest::Approx(a * (1 + 2 / ln)));
    CHECK(row.link1 == (row.first <= row.middle));
    CHECK(row.link2 == (row.middle <= row.last));
  }
  // The second link needs n large; at n = 10 it still fails.
  CHECK_FALSE(rep.rows[2].link2);
  CHECK(rep.rows[2].middle > rep.rows[2].last);
  CHECK(rep.rows[3].link1);
  CHECK(rep.rows[3].link2);
  CHECK(rep.rows[5].link1);
  CHECK(rep.rows[5].link2);
  REQUIRE(rep.first_chain);
  CHECK(*rep.first_chain == 100);
  CHECK(rep.failures == std::vector<double>{3, 5, 10});
  for (const auto& row : rep.rows) CHECK(row.scalar == (std::exp(row.x) <= 1 + 2 * row.x));
  // e^x <= 1 + 2x holds on (0, 1.25]; every sampled x = 1/ln n lies there.
  for (const auto& row : rep.rows) CHECK(row.scalar);
  CHECK_THROWS_AS(lnnesszam_check(std::vector<double>{2.0}), BadParam);
}

TEST_CASE("Jordan inequality") {
  const JordanReport rep = jordan_check(10000);
  CHECK(rep.points == 10000);
  CHECK(rep.violations == 0);
  CHECK(rep.min_margin >= -1e-15);
  CHECK(jordan_holds(kPi / 2));
  CHECK_FALSE(jordan_holds(3.0));
}
