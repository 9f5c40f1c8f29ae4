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

// Exact planar polygon routines and the exact volume/centroid paths for
// H-polytopes in dimensions 1 to 3.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "covering/body.hpp"

namespace covering {

using Point2 = Eigen::Vector2d;
// Counter-clockwise vertex list of a convex polygon.
using Polygon = std::vector<Point2>;

double polygon_area(const Polygon& poly);
Point2 polygon_centroid(const Polygon& poly);
// Keeps the part of poly with <a, x> <= b.
Polygon clip_halfplane(const Polygon& poly, const Point2& a, double b);
// Intersection of two convex polygons by successive edge clipping.
Polygon intersect_convex(const Polygon& subject, const Polygon& clip);
Polygon convex_hull(std::vector<Point2> points);
Polygon minkowski_sum(const Polygon& p, const Polygon& q);

// Vertices of a bounded 2-D H-polytope.
Polygon polygon_of(const HPolytope& p);
// Outward unit normals and offsets of a counter-clockwise convex polygon.
Body body_of(const Polygon& poly);

// Exact volume for balls (any n) and polytopes (n <= 3); nullopt otherwise.
std::optional<double> exact_volume(const Body& body);
// Centroid of a polytope with n <= 3; throws NotConvex for other bodies.
Vec centroid(const Body& body);

// Convex hull of `vertices` random points on a jittered ellipse: always a
// convex polygon with the origin strictly inside.
Polygon random_convex_polygon(std::uint64_t seed, double scale,
                              int vertices = 8);

struct ReflectionVolumes {
  double vol_k = 0.0;
  double vol_k_cap_minus_k = 0.0;
  double ratio = 0.0;
  Vec centroid;
  // vol(K ∩ -K) >= vol(K) / 2^n after moving the centroid to the origin.
  bool milman_pajor_holds = false;
};

// Translates K so its centroid is the origin, then measures K ∩ -K exactly.
// Requires an H-polytope (NotConvex otherwise) of dimension <= 3.
ReflectionVolumes reflection_intersection_volume(const Body& k);

}  // namespace covering
