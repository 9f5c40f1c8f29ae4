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

// Spherical caps, cap measure, S^2 nets and rotation covers of the sphere.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "covering/cover_report.hpp"

namespace covering {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// C(u, phi): points of S^n within angular distance phi of the unit vector u.
struct Cap {
  Vec center;
  double radius = 0.0;
};

// Normalizes nothing: |center| must be 1 within 1e-12 and 0 < phi <= pi/2.
Cap make_cap(Vec center, double phi);

struct CapIndicator {
  std::function<bool(const Vec3&)> oracle;
  // Sampling resolution (radians) for oracle-based erosion.
  double resolution = 0.01;
};

// A subset of S^n given as a cap or, on S^2, by a membership oracle.
class SphericalBody {
 public:
  using Shape = std::variant<Cap, CapIndicator>;

  static SphericalBody cap(Cap c);
  static SphericalBody indicator(std::function<bool(const Vec3&)> oracle,
                                 double resolution = 0.01);
  static SphericalBody empty(int n);

  int dim() const { return n_; }
  const Shape& shape() const { return shape_; }
  bool is_cap() const { return std::holds_alternative<Cap>(shape_); }
  bool empty() const { return empty_; }
  bool contains(const Vec3& u) const;

 private:
  SphericalBody(int n, Shape shape, bool empty)
      : n_(n), shape_(std::move(shape)), empty_(empty) {}
  int n_ = 2;
  Shape shape_;
  bool empty_ = false;
};

// Omega(phi) = sigma(C(u, phi)) on S^n, normalized so Omega(pi) = 1.
double cap_measure(int n, double phi);

// sigma(K): exact for caps, Monte Carlo ("mc" stream) for indicators.
double spherical_measure(const SphericalBody& k, std::uint64_t samples = 1'000'000,
                         std::uint64_t seed = 0);

struct CapSizeCheck {
  double omega = 0.0;
  bool lower_holds = false;
  // Empty when phi > arccos(1/sqrt(n+1)).
  std::optional<bool> upper_holds;
  // Empty when t is outside (1, pi/(2 phi)).
  std::optional<bool> scaling_holds;
};

// Omega(phi) > sin^n(phi)/sqrt(2 pi (n+1));
// Omega(phi) < sin^n(phi)/(sqrt(2 pi n) cos(phi)) for phi <= arccos(1/sqrt(n+1));
// Omega(t phi) < t^n Omega(phi) for 1 < t < pi/(2 phi).
CapSizeCheck bw_bound_check(int n, double phi, double t);

// K_{-delta} = {u in K : C(u, delta) subset of K}. Indicators are eroded by
// testing rings of directions around u at the body's resolution.
SphericalBody spherical_erosion(const SphericalBody& k, double delta);

double angle_between(const Vec3& a, const Vec3& b);

struct CapPackingOptions {
  // 0 picks ceil(16 / Omega(delta/4)) Fibonacci candidates.
  std::size_t candidates = 0;
  bool fill_holes = true;
};

// Centers with pairwise angular distance >= delta that leave no point of S^2
// farther than delta from the set: greedy saturation of shuffled Fibonacci
// candidates, followed by exact filling of any remaining holes at
// intersection points of the delta-circles.
std::vector<Vec3> saturated_cap_packing(int n, double delta, std::uint64_t seed,
                                        const CapPackingOptions& options = {});

// Uniform rotation in SO(3): QR of a Gaussian matrix with sign correction.
Mat3 random_rotation(Engine& engine);
// A rotation taking unit vector `from` to unit vector `to`.
Mat3 rotation_between(const Vec3& from, const Vec3& to);

struct SphereCoverOptions {
  std::uint64_t validation_samples = 100'000;
  int threads = 0;
  CapPackingOptions packing;
  // Add rotations taking a cap's center to every net point.
  bool net_centered = true;
};

CoverReport sphere_cover_greedy(const SphericalBody& k, double delta,
                                std::size_t n_rot_candidates, std::uint64_t seed,
                                const SphereCoverOptions& options = {});

// The discretized instance behind sphere_cover_greedy, exposed for LP study
// on small cases.
struct SphereInstance {
  std::vector<Vec3> net;
  std::vector<Mat3> rotations;
  CoverInstance instance;
};
SphereInstance build_sphere_instance(const SphericalBody& k, double delta,
                                     std::size_t n_rot_candidates,
                                     std::uint64_t seed,
                                     const SphereCoverOptions& options = {});

struct Circumcap {
  Vec3 center;
  double rho = 0.0;
};

// Smallest cap containing the points, from the minimal enclosing Euclidean
// ball (Welzl). Throws NotInHemisphere unless the points lie in an open
// hemisphere.
Circumcap spherical_circumradius(const std::vector<Vec3>& points);

// "ux,uy,uz,phi" rows with a header line.
std::vector<Cap> read_caps_csv(std::istream& in);
void write_caps_csv(std::ostream& out, const std::vector<Cap>& caps);

}  // namespace covering
