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
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "covering/errors.hpp"
#include "covering/rng.hpp"
#include "covering/sphere.hpp"
#include "doctest.h"

using namespace covering;

namespace {

constexpr double kPi = std::numbers::pi;

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

double angle(const Vec3& a, const Vec3& b) {
  return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0));
}

Vec3 random_unit(Engine& eng) {
  Vec3 g(standard_normal(eng), standard_normal(eng), standard_normal(eng));
  return g.normalized();
}

// Omega via the regularized incomplete beta function, phi <= pi/2.
double omega_ibeta(int n, double phi) {
  const double s = std::sin(phi);
  return 0.5 * boost::math::ibeta(n / 2.0, 0.5, s * s);
}

}  // namespace

TEST_CASE("cap measure: hemisphere, full sphere and S^2 closed form") {
  for (int n = 1; n <= 20; ++n) {
    CHECK(std::abs(cap_measure(n, kPi / 2.0) - 0.5) < 1e-12);
    CHECK(cap_measure(n, kPi) == 1.0);
    CHECK(cap_measure(n, 0.0) == 0.0);
  }
  for (int i = 1; i <= 50; ++i) {
    const double phi = kPi * i / 51.0;
    CHECK(std::abs(cap_measure(2, phi) - (1.0 - std::cos(phi)) / 2.0) < 1e-12);
  }
  CHECK(cap_measure(2, kPi / 3.0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(cap_measure(1, 1.0) == doctest::Approx(1.0 / kPi));
  CHECK_THROWS_AS(cap_measure(0, 1.0), BadParam);
  CHECK_THROWS_AS(cap_measure(2, -0.1), BadParam);
  CHECK_THROWS_AS(cap_measure(2, 4.0), BadParam);
}

TEST_CASE("cap measure agrees with the incomplete beta function") {
  for (int n : {2, 3, 4, 5, 7, 10, 20, 50, 100}) {
    for (double phi : {0.01, 0.1, 0.4, 0.7, 1.0, 1.3, 1.5}) {
      const double want = omega_ibeta(n, phi);
      CHECK(cap_measure(n, phi) == doctest::Approx(want).epsilon(1e-11));
      CHECK(cap_measure(n, kPi - phi) == doctest::Approx(1.0 - want).epsilon(1e-11));
    }
  }
}

// Beyond pi/2 the value is 1 - (tiny) and rounds to exactly 1 for large n,
// so strictness is only checkable on the lower half.
TEST_CASE("cap measure is increasing") {
  for (int n : {1, 2, 5, 12}) {
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double phi = kPi * i / 200.0;
      const double v = cap_measure(n, phi);
      if (phi <= kPi / 2) {
        CHECK(v > prev);
      } else {
        CHECK(v >= prev);
      }
      prev = v;
    }
  }
}

TEST_CASE("cap measure on S^5 matches Monte Carlo") {
  const int n = 5;
  const double phi = 0.7;
  const std::uint64_t samples = 10'000'000;
  Engine eng = make_stream(17, "test");
  std::uint64_t hits = 0;
  const double c = std::cos(phi);
  for (std::uint64_t s = 0; s < samples; ++s) {
    double x[6], norm2 = 0;
    for (double& xi : x) {
      xi = standard_normal(eng);
      norm2 += xi * xi;
    }
    if (x[0] >= c * std::sqrt(norm2)) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  const double sigma = std::sqrt(p * (1 - p) / samples);
  CHECK(std::abs(cap_measure(n, phi) - p) <= 3.0 * sigma);
}

TEST_CASE("cap size inequalities") {
  const auto a = bw_bound_check(2, kPi / 4.0, 1.5);
  CHECK(a.lower_holds);
  REQUIRE(a.upper_holds);
  CHECK(*a.upper_holds);
  REQUIRE(a.scaling_holds);
  CHECK(*a.scaling_holds);
  const auto b = bw_bound_check(20, 0.1, 1.5);
  CHECK(b.lower_holds);
  REQUIRE(b.upper_holds);
  CHECK(*b.upper_holds);
  // Beyond arccos(1/sqrt(n+1)) the upper estimate is not applicable.
  const int n = 3;
  const double edge = std::acos(1.0 / std::sqrt(n + 1.0));
  CHECK(bw_bound_check(n, edge - 1e-9, 1.1).upper_holds.has_value());
  CHECK_FALSE(bw_bound_check(n, edge + 1e-3, 1.1).upper_holds.has_value());
  CHECK_FALSE(bw_bound_check(2, 1.0, 2.0).scaling_holds.has_value());
  CHECK_THROWS_AS(bw_bound_check(2, kPi / 2.0, 1.1), BadParam);
}

TEST_CASE("cap size inequalities on the full grid") {
  std::size_t violations = 0, checks = 0;
  for (int n = 2; n <= 20; ++n)
    for (int i = 0; i < 20; ++i) {
      const double phi = 0.05 + (kPi / 2.0 - 0.1) * i / 19.0;
      for (double t : {1.1, 1.5, 2.0}) {
        const auto r = bw_bound_check(n, phi, t);
        ++checks;
        if (!r.lower_holds) ++violations;
        if (r.upper_holds && !*r.upper_holds) ++violations;
        if (r.scaling_holds && !*r.scaling_holds) ++violations;
      }
    }
  CHECK(checks == 19 * 20 * 3);
  CHECK(violations == 0);
}

TEST_CASE("cap erosion") {
  const auto k = SphericalBody::cap(make_cap(v3(0, 0, 1), 0.5));
  const auto e = spherical_erosion(k, 0.2);
  REQUIRE(e.is_cap());
  CHECK(std::get<Cap>(e.shape()).radius == doctest::Approx(0.3));
  CHECK(spherical_measure(e) == doctest::Approx(cap_measure(2, 0.3)).epsilon(1e-14));
  CHECK(std::get<Cap>(spherical_erosion(k, 0.0).shape()).radius == 0.5);
  CHECK(spherical_erosion(k, 0.5).empty());
  CHECK_THROWS_AS(make_cap(v3(0, 0, 2), 0.5), BadParam);
  CHECK_THROWS_AS(make_cap(v3(0, 0, 1), 2.0), BadParam);
}

TEST_CASE("erosion of a spherical triangle") {
  // Octant x, y, z >= 0: inward normals are the coordinate axes, and the
  // incenter is (1,1,1)/sqrt 3 with inradius asin(1/sqrt 3).
  const auto tri = SphericalBody::indicator(
      [](const Vec3& u) { return u.x() >= 0 && u.y() >= 0 && u.z() >= 0; }, 0.005);
  const double delta = 0.1;
  const auto e = spherical_erosion(tri, delta);
  REQUIRE_FALSE(e.empty());
  const Vec3 center = Vec3(1, 1, 1).normalized();
  const double inradius = std::asin(1.0 / std::sqrt(3.0));
  Engine eng = make_stream(3, "test");
  int in_e = 0;
  for (int i = 0; i < 20000; ++i) {
    const Vec3 u = random_unit(eng);
    const bool member = e.contains(u);
    if (member) {
      ++in_e;
      CHECK(tri.contains(u));
      // Distance to each side great circle is asin of the coordinate.
      CHECK(std::asin(std::min({u.x(), u.y(), u.z()})) >= delta - 0.01);
    }
    if (angle(u, center) <= inradius - delta - 0.01) CHECK(member);
  }
  CHECK(in_e > 0);
}

TEST_CASE("saturated cap packings") {
  CHECK(saturated_cap_packing(2, kPi, 0).size() == 1);
  CHECK_THROWS_AS(saturated_cap_packing(3, 0.4, 0), BadParam);
  const double delta = 0.4;
  const auto net = saturated_cap_packing(2, delta, 5);
  const double count = static_cast<double>(net.size());
  CHECK(count <= 1.0 / cap_measure(2, delta / 2.0));
  CHECK(count * cap_measure(2, delta) >= 1.0);
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(angle(net[i], net[j]) >= delta * (1 - 1e-9));
  Engine eng = make_stream(6, "test");
  std::size_t far = 0;
  for (int s = 0; s < 100000; ++s) {
    const Vec3 u = random_unit(eng);
    double best = 10;
    for (const Vec3& p : net) best = std::min(best, angle(u, p));
    if (best > delta + 1e-12) ++far;
  }
  CHECK(far == 0);
}

TEST_CASE("rotations") {
  Engine eng = make_stream(2, "rotations");
  for (int i = 0; i < 50; ++i) {
    const Mat3 r = random_rotation(eng);
    CHECK((r.transpose() * r - Mat3::Identity()).norm() < 1e-10);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-10);
  }
  const Vec3 a = Vec3(1, 2, 3).normalized(), b = Vec3(-2, 0.5, 1).normalized();
  const Mat3 r = rotation_between(a, b);
  CHECK((r * a - b).norm() < 1e-12);
  CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  const Mat3 flip = rotation_between(a, -a);
  CHECK((flip * a + a).norm() < 1e-12);
  CHECK(std::abs(flip.determinant() - 1.0) < 1e-12);
}

TEST_CASE("covering the sphere by hemispheres") {
  const auto k = SphericalBody::cap(make_cap(v3(0, 0, 1), kPi / 2.0));
  const auto rep = sphere_cover_greedy(k, 0.3, 50, 1);
  CHECK(rep.valid);
  CHECK(rep.density >= 1.0);
  CHECK(rep.chosen_rotations.size() <= 8);
}

TEST_CASE("cap cover with rotation invariance") {
  const auto k = SphericalBody::cap(make_cap(v3(0, 0, 1), kPi / 4.0));
  const auto rep = sphere_cover_greedy(k, 0.1, 200, 4);
  CHECK(rep.valid);
  CHECK(rep.density >= 1.0);
  CHECK(rep.density <= rep.bounds.at("spherebyanything"));
  CHECK(rep.instance.ls_holds);
  // One global rotation applied to copies and test points leaves every
  // verdict unchanged.
  Engine eng = make_stream(8, "rotations");
  const Mat3 g = random_rotation(eng);
  auto covered = [&](const Vec3& p, bool rotate) {
    for (const Mat3& a : rep.chosen_rotations) {
      const Mat3 ra = rotate ? Mat3(g * a) : a;
      if (k.contains(ra.transpose() * p)) return true;
    }
    return false;
  };
  Engine pts = make_stream(9, "test");
  for (int i = 0; i < 5000; ++i) {
    const Vec3 p = random_unit(pts);
    CHECK(covered(p, false) == covered(g * p, true));
  }
}

TEST_CASE("fractional cover number of a small sphere instance") {
  const double phi = kPi / 3.0, delta = 0.5;
  const auto k = SphericalBody::cap(make_cap(v3(0, 0, 1), phi));
  SphereCoverOptions opt;
  const auto built = build_sphere_instance(k, delta, 0, 2, opt);
  REQUIRE(built.instance.num_elements() <= kDenseLpLimit);
  REQUIRE(built.instance.num_candidates() <= kDenseLpLimit);
  const auto w = fractional_cover_lp(built.instance);
  const double sigma_inner = cap_measure(2, phi - delta);
  const double margin = w.total * sigma_inner - 1.0;
  MESSAGE("tau* = " << w.total << ", 1/sigma(K_-delta) = " << 1.0 / sigma_inner << ", margin " << margin);
  CHECK(margin < 0.5);
  CHECK(w.total >= 1.0);
}

TEST_CASE("spherical circumradius") {
  const auto one = spherical_circumradius({Vec3(0, 0, 1)});
  CHECK(one.rho == 0.0);
  const double alpha = 0.3;
  const auto two = spherical_circumradius(
      {Vec3(std::sin(alpha), 0, std::cos(alpha)), Vec3(-std::sin(alpha), 0, std::cos(alpha))});
  CHECK(two.rho == doctest::Approx(alpha).epsilon(1e-12));
  CHECK((two.center - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK_THROWS_AS(spherical_circumradius({Vec3(1, 0, 0), Vec3(-1, 0, 0)}), NotInHemisphere);
  CHECK_THROWS_AS(spherical_circumradius({Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1),
                                          Vec3(-1, -1, -1).normalized()}),
                  NotInHemisphere);
}

TEST_CASE("circumradius of a random cluster matches grid search") {
  Engine eng = make_stream(12, "test");
  std::vector<Vec3> pts;
  const Vec3 axis = Vec3(0.3, -0.2, 1).normalized();
  const Vec3 e1 = axis.cross(Vec3::UnitX()).normalized(), e2 = axis.cross(e1);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.4 * std::sqrt(uniform01(eng)), t = 2 * kPi * uniform01(eng);
    pts.push_back((axis + r * (std::cos(t) * e1 + std::sin(t) * e2)).normalized());
  }
  const auto cap = spherical_circumradius(pts);
  auto worst = [&](const Vec3& c) {
    double m = 0;
    for (const Vec3& p : pts) m = std::max(m, angle(c, p));
    return m;
  };
  // Coarse-to-fine search over tangent-plane offsets from the mean direction.
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : pts) mean += p;
  Vec3 best = mean.normalized();
  double best_val = worst(best);
  for (double span : {0.3, 0.03, 0.003}) {
    const Vec3 base = best;
    const Vec3 b1 = base.cross(Vec3::UnitX()).normalized(), b2 = base.cross(b1);
    for (int i = -30; i <= 30; ++i)
      for (int j = -30; j <= 30; ++j) {
        const Vec3 c = (base + span * (i / 30.0) * b1 + span * (j / 30.0) * b2).normalized();
        const double v = worst(c);
        if (v < best_val) {
          best_val = v;
          best = c;
        }
      }
  }
  CHECK(std::abs(cap.rho - best_val) < 1e-3);
  CHECK(cap.rho <= best_val + 1e-12);
  CHECK(worst(cap.center) == doctest::Approx(cap.rho).epsilon(1e-12));
}

TEST_CASE("cap CSV round trip") {
  std::vector<Cap> caps{make_cap(v3(0, 0, 1), 0.5), make_cap(v3(1, 0, 0), 0.25)};
  std::stringstream ss;
  write_caps_csv(ss, caps);
  CHECK(ss.str().rfind("ux,uy,uz,phi\n", 0) == 0);
  const auto back = read_caps_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[1].center[0] == 1.0);
  CHECK(back[0].radius == 0.5);
  std::stringstream bad("ux,uy,uz,phi\n0,0,1\n");
  CHECK_THROWS_AS(read_caps_csv(bad), ParseError);
  std::stringstream bad2("0,0,3,0.1\n");
  CHECK_THROWS_AS(read_caps_csv(bad2), ParseError);
}
