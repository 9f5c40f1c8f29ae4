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
#include <memory>
#include <numbers>
#include <vector>

#include "covering/errors.hpp"
#include "covering/euclid.hpp"
#include "covering/lp.hpp"
#include "covering/polytope.hpp"
#include "covering/raster.hpp"
#include "covering/rng.hpp"
#include "doctest.h"

using namespace covering;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Body disk_indicator(double r, double step) {
  Box box{vec2(-r, -r), vec2(r, r)};
  return Body::indicator(
      [r](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] <= r * r; }, box, step);
}

// Largest inscribed disk radius of a polygon body via its own small LP:
// max r s.t. a_i x + r |a_i| <= b_i.
double inradius(const Body& k) {
  const auto& p = std::get<HPolytope>(k.shape());
  const auto m = static_cast<std::size_t>(p.a.rows());
  // Variables x+, x-, r (all >= 0).
  lp::DenseMatrix<double> a(m, 5);
  std::vector<double> b(m), c{0, 0, 0, 0, 1};
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    a(i, 0) = p.a(ii, 0);
    a(i, 1) = p.a(ii, 1);
    a(i, 2) = -p.a(ii, 0);
    a(i, 3) = -p.a(ii, 1);
    a(i, 4) = p.a.row(ii).norm();
    b[i] = p.b[ii];
  }
  auto res = lp::maximize(a, b, c);
  REQUIRE(res.status == lp::Status::kOptimal);
  return res.objective;
}

}  // namespace

TEST_CASE("Minkowski difference by the origin is the identity") {
  const Body k = body_of(random_convex_polygon(3, 1.0));
  const Body d = minkowski_difference(k, Body::point(vec2(0, 0)));
  Engine eng = make_stream(1, "test");
  for (int i = 0; i < 2000; ++i) {
    const Vec x = vec2(2.0 * uniform01(eng) - 1.0, 2.0 * uniform01(eng) - 1.0) * 1.5;
    CHECK(d.contains(x) == k.contains(x));
  }
}

TEST_CASE("square minus square is a square") {
  const Body k = Body::box(vec2(0, 0), vec2(1, 1));
  const Body t = Body::box(vec2(0, 0), vec2(0.2, 0.2));
  const Body d = minkowski_difference(k, t);
  CHECK(d.bbox().lo.isApprox(vec2(0, 0), 1e-12) == true);
  CHECK(std::abs(d.bbox().lo[0]) < 1e-12);
  CHECK(std::abs(d.bbox().hi[0] - 0.8) < 1e-12);
  CHECK(std::abs(d.bbox().hi[1] - 0.8) < 1e-12);
  CHECK(exact_volume(d).value() == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("dimension mismatch and empty results") {
  Vec o3 = Vec::Zero(3);
  CHECK_THROWS_AS(minkowski_difference(Body::box(vec2(0, 0), vec2(1, 1)), Body::ball(o3, 1.0)),
                  DimensionMismatch);
  const Body e = minkowski_difference(Body::ball(vec2(0, 0), 0.2), Body::ball(vec2(0, 0), 0.3));
  CHECK(e.empty());
  const Body p = inner_parallel_body(Body::box(vec2(0, 0), vec2(1, 1)), 0.6);
  CHECK(p.empty());
}

TEST_CASE("disk erosion on the lattice matches the analytic disk") {
  const double h = 1e-3;
  const Body exact = minkowski_difference(Body::ball(vec2(0, 0), 1.0), Body::ball(vec2(0, 0), 0.3));
  REQUIRE(exact.is_ball());
  CHECK(std::get<Ball>(exact.shape()).radius == doctest::Approx(0.7).epsilon(1e-15));

  const Body grid = minkowski_difference(disk_indicator(1.0, h), Body::ball(vec2(0, 0), 0.3));
  REQUIRE(grid.is_indicator());
  const auto& r = *std::get<Indicator>(grid.shape()).raster;
  // Analytic oracle: lattice point x is in B(o, 0.7) iff |x| <= 0.7. Allow
  // disagreement only within one cell of the circle.
  std::size_t mismatches = 0;
  const Raster full = rasterize(disk_indicator(1.0, h), h);
  for (std::size_t f = 0; f < full.size(); ++f) {
    const Vec x = full.point(f);
    const bool in_grid = r.contains(std::span<const double>(x.data(), 2));
    const bool in_exact = x.norm() <= 0.7;
    if (in_grid != in_exact && std::abs(x.norm() - 0.7) > h) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("inner parallel bodies of polytopes") {
  const Body sq = Body::box(vec2(-1, -1), vec2(1, 1));
  const Body half = inner_parallel_body(sq, 0.5);
  CHECK(std::abs(half.bbox().lo[0] + 0.5) < 1e-12);
  CHECK(std::abs(half.bbox().hi[1] - 0.5) < 1e-12);
  const Body same = inner_parallel_body(sq, 0.0);
  CHECK(same.bbox().hi.isApprox(sq.bbox().hi));
  CHECK_THROWS_AS(inner_parallel_body(sq, -0.1), BadParam);

  for (std::uint64_t seed : {2u, 5u, 9u}) {
    const Body k = body_of(random_convex_polygon(seed, 1.0));
    const double delta = 0.5 * inradius(k);
    const Body e = inner_parallel_body(k, delta);
    REQUIRE_FALSE(e.empty());
    // Lattice erosion of an indicator copy agrees away from the boundary.
    const double h = 2e-3;
    const Body ind = Body::indicator([k](std::span<const double> x) { return k.contains(x); },
                                     k.bbox(), h);
    const Body g = inner_parallel_body(ind, delta);
    const auto& raster = *std::get<Indicator>(g.shape()).raster;
    const auto& p = std::get<HPolytope>(e.shape());
    std::size_t bad = 0;
    const Raster samples = rasterize(k, h);
    for (std::size_t f = 0; f < samples.size(); ++f) {
      const Vec x = samples.point(f);
      double slack = -1e300;
      for (Eigen::Index i = 0; i < p.a.rows(); ++i)
        slack = std::max(slack, (p.a.row(i).dot(x) - p.b[i]) / p.a.row(i).norm());
      if (std::abs(slack) <= 2.0 * h) continue;
      if (raster.contains(std::span<const double>(x.data(), 2)) != (slack <= 0.0)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("erosion then dilation stays inside K") {
  const Body k = body_of(random_convex_polygon(11, 1.0));
  const Polygon tpoly = random_convex_polygon(12, 0.2, 5);
  const Body t = body_of(tpoly);
  const Body e = minkowski_difference(k, t);
  REQUIRE_FALSE(e.empty());
  const Raster samples = rasterize(e, 5e-3);
  REQUIRE(samples.count() > 0);
  for (std::size_t f = 0; f < samples.size(); ++f) {
    if (!samples.cell(f)) continue;
    const Vec x = samples.point(f);
    for (const Point2& v : tpoly) {
      const Vec y = x + Vec(v);
      // Facet offsets are exact up to rounding.
      const auto& p = std::get<HPolytope>(k.shape());
      CHECK(((p.a * y - p.b).array() <= 1e-12).all());
    }
  }
}

TEST_CASE("inner parallel bodies shrink monotonically") {
  const Body k = disk_indicator(0.5, 2e-3);
  const double deltas[] = {0.0, 0.05, 0.1, 0.2, 0.3};
  std::vector<Raster> levels;
  for (double d : deltas) {
    const Body b = inner_parallel_body(k, d);
    if (b.empty()) {
      levels.emplace_back();
      continue;
    }
    const auto& sampled = std::get<Indicator>(b.shape()).raster;
    levels.push_back(sampled ? *sampled : rasterize(b, 2e-3));
  }
  const Raster base = rasterize(k, 2e-3);
  for (std::size_t l = 1; l < levels.size(); ++l) {
    if (levels[l].size() == 0) continue;
    for (std::size_t f = 0; f < base.size(); ++f) {
      const Vec x = base.point(f);
      std::span<const double> xs(x.data(), 2);
      if (levels[l].contains(xs)) CHECK(levels[l - 1].contains(xs));
    }
  }
}

TEST_CASE("volume estimates") {
  VolumeParams g;
  g.step = 1e-3;
  const auto sq = volume(Body::box(vec2(0, 0), vec2(1, 1)), VolumeMethod::kGrid, g);
  CHECK(std::abs(sq.value - 1.0) <= 1e-2);

  VolumeParams mc;
  mc.samples = 1'000'000;
  mc.seed = 1;
  const auto disk = volume(Body::ball(vec2(0, 0), 1.0), VolumeMethod::kMonteCarlo, mc);
  CHECK(disk.error > 0.0);
  CHECK(std::abs(disk.value - std::numbers::pi) <= disk.error);

  CHECK(volume(Body::empty(2), VolumeMethod::kGrid, g).value == 0.0);
  CHECK(volume(Body::empty(2), VolumeMethod::kMonteCarlo, mc).value == 0.0);

  g.step = 0.0;
  CHECK_THROWS_AS(volume(Body::box(vec2(0, 0), vec2(1, 1)), VolumeMethod::kGrid, g), BadParam);
}

TEST_CASE("Monte Carlo volume does not depend on the thread count") {
  VolumeParams mc;
  mc.samples = 300'000;
  mc.seed = 4;
  mc.threads = 1;
  const auto a = volume(Body::ball(vec2(0, 0), 1.0), VolumeMethod::kMonteCarlo, mc);
  mc.threads = 4;
  const auto b = volume(Body::ball(vec2(0, 0), 1.0), VolumeMethod::kMonteCarlo, mc);
  CHECK(a.value == b.value);
}

TEST_CASE("exact volumes agree with lattice counts") {
  const Body k = body_of(random_convex_polygon(21, 1.0));
  const double exact = exact_volume(k).value();
  const Raster r = rasterize(k, 1e-3);
  CHECK(std::abs(r.volume() - exact) <= r.volume_error());

  Mat a(6, 3);
  a << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  Vec b(6);
  b << 1, 0, 2, 0, 3, 0;
  CHECK(exact_volume(Body::polytope(a, b)).value() == doctest::Approx(6.0).epsilon(1e-12));
  // Tetrahedron x, y, z >= 0, x + y + z <= 1: volume 1/6.
  Mat t(4, 3);
  t << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
  Vec tb(4);
  tb << 0, 0, 0, 1;
  const Body tet = Body::polytope(t, tb);
  CHECK(exact_volume(tet).value() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(centroid(tet).isApprox(Vec::Constant(3, 0.25), 1e-12));
  CHECK(exact_volume(Body::ball(Vec::Zero(3), 2.0)).value() ==
        doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0).epsilon(1e-12));
}

TEST_CASE("Minkowski sums") {
  const Body s = minkowski_sum(Body::box(vec2(0, 0), vec2(1, 1)), Body::box(vec2(-1, -1), vec2(0, 0)));
  CHECK(exact_volume(s).value() == doctest::Approx(4.0).epsilon(1e-12));
  const Body b = minkowski_sum(Body::ball(vec2(1, 0), 0.5), Body::ball(vec2(0, 1), 0.25));
  CHECK(std::get<Ball>(b.shape()).radius == doctest::Approx(0.75));
  // Lattice dilation of two indicator squares.
  const Body sq = Body::indicator(
      [](std::span<const double> x) { return x[0] >= 0 && x[0] <= 1 && x[1] >= 0 && x[1] <= 1; },
      Box{vec2(0, 0), vec2(1, 1)}, 1e-2);
  const Body d = minkowski_sum(sq, sq.reflected());
  CHECK(measure_volume(d) == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("gauge norms") {
  const Body cube = Body::box(vec2(-1, -1), vec2(1, 1));
  CHECK(gauge_norm(cube, vec2(0.5, -2.0)) == doctest::Approx(2.0));
  CHECK(gauge_norm(Body::ball(vec2(0, 0), 2.0), vec2(3, 4)) == doctest::Approx(2.5));
  const Body diamond = Body::indicator(
      [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x[1]) <= 1.0; },
      Box{vec2(-1, -1), vec2(1, 1)}, 1e-2);
  CHECK(gauge_norm(diamond, vec2(0.3, 0.4)) == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(is_symmetric(cube));
  CHECK(is_symmetric(diamond));
  CHECK_FALSE(is_symmetric(Body::box(vec2(-1, -1), vec2(2, 1))));
  CHECK_FALSE(is_symmetric(Body::ball(vec2(0.1, 0), 1.0)));
}

TEST_CASE("triangle: K cap -K has two thirds of the area") {
  Polygon tri{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  const auto r = reflection_intersection_volume(body_of(tri));
  CHECK(r.vol_k == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.centroid.isApprox(vec2(1.0 / 3.0, 1.0 / 3.0), 1e-12));
  // Analytic: the intersection is a hexagon of area 2/3 area(K).
  CHECK(r.ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.milman_pajor_holds);
  // Independent lattice count of the same set.
  const Vec c = r.centroid;
  const Body k = body_of(tri);
  double count = 0;
  const double h = 1e-3;
  for (double x = -1; x <= 1; x += h)
    for (double y = -1; y <= 1; y += h) {
      const Vec p = vec2(x, y);
      if (k.contains(Vec(p + c)) && k.contains(Vec(c - p))) count += 1;
    }
  CHECK(count * h * h == doctest::Approx(r.vol_k_cap_minus_k).epsilon(1e-2));
}

TEST_CASE("symmetric bodies have reflection ratio 1") {
  const auto r = reflection_intersection_volume(Body::box(vec2(2, 3), vec2(4, 4)));
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(reflection_intersection_volume(Body::ball(vec2(0, 0), 1.0)), NotConvex);
}

TEST_CASE("Milman-Pajor on random polygons") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = reflection_intersection_volume(body_of(random_convex_polygon(seed, 1.0)));
    CHECK(r.ratio >= 0.25);
    CHECK(r.milman_pajor_holds);
  }
}

TEST_CASE("lattice erosion by a polygon matches erosion by its samples") {
  const double h = 1e-2;
  const Raster k = rasterize(body_of(random_convex_polygon(30, 1.0)), h);
  const Raster t = rasterize(Body::box(vec2(-0.1, -0.1), vec2(0.1, 0.1)), h);
  const Raster e = erode(k, t);
  // Brute-force oracle over the raster samples.
  std::vector<long> idx(2), q(2);
  std::vector<std::vector<long>> offsets;
  for (std::size_t f = 0; f < t.size(); ++f)
    if (t.cell(f)) {
      t.index_of(f, idx);
      offsets.push_back(idx);
    }
  for (std::size_t f = 0; f < k.size(); ++f) {
    k.index_of(f, idx);
    bool inside = true;
    for (const auto& o : offsets) {
      q[0] = idx[0] + o[0];
      q[1] = idx[1] + o[1];
      if (!k.at(q)) {
        inside = false;
        break;
      }
    }
    CHECK(e.at(idx) == inside);
  }
}
