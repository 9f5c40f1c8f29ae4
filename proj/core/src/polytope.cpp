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

#include "covering/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "covering/errors.hpp"
#include "covering/rng.hpp"

namespace covering {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Polygon dedupe(Polygon poly, double tol) {
  Polygon out;
  for (const auto& p : poly) {
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

// Facet polygon of facet `f` of a 3-D polytope, as 3-D points.
std::vector<Eigen::Vector3d> facet_polygon(const HPolytope& p, Eigen::Index f,
                                           double extent) {
  const Eigen::Vector3d a = p.a.row(f).transpose();
  const double an = a.norm();
  if (an == 0.0) return {};
  const Eigen::Vector3d normal = a / an;
  const Eigen::Vector3d origin = normal * (p.b[f] / an);
  Eigen::Vector3d helper =
      std::abs(normal.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d u = normal.cross(helper).normalized();
  const Eigen::Vector3d v = normal.cross(u);
  Polygon poly{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
  for (Eigen::Index j = 0; j < p.a.rows() && !poly.empty(); ++j) {
    if (j == f) continue;
    const Eigen::Vector3d aj = p.a.row(j).transpose();
    poly = clip_halfplane(poly, Point2(aj.dot(u), aj.dot(v)), p.b[j] - aj.dot(origin));
  }
  std::vector<Eigen::Vector3d> out;
  for (const auto& q : poly) out.push_back(origin + q.x() * u + q.y() * v);
  return out;
}

double bbox_extent(const Body& body) {
  const Box& b = body.bbox();
  return 2.0 * std::max(b.lo.cwiseAbs().maxCoeff(), b.hi.cwiseAbs().maxCoeff()) + 1.0;
}

}  // namespace

double polygon_area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

Point2 polygon_centroid(const Polygon& poly) {
  double a = 0.0;
  Point2 c(0, 0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    const double w = p.x() * q.y() - q.x() * p.y();
    a += w;
    c += (p + q) * w;
  }
  if (a == 0.0) throw ZeroVolume("centroid of a degenerate polygon");
  return c / (3.0 * a);
}

Polygon clip_halfplane(const Polygon& poly, const Point2& a, double b) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double fp = a.dot(p) - b;
    const double fq = a.dot(q) - b;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  return dedupe(std::move(out), 1e-14);
}

Polygon intersect_convex(const Polygon& subject, const Polygon& clip) {
  Polygon out = subject;
  for (std::size_t i = 0; i < clip.size() && !out.empty(); ++i) {
    const Point2& p = clip[i];
    const Point2& q = clip[(i + 1) % clip.size()];
    // Interior of a CCW polygon is to the left of each edge.
    const Point2 normal(q.y() - p.y(), p.x() - q.x());
    out = clip_halfplane(out, normal, normal.dot(p));
  }
  return out.size() < 3 ? Polygon{} : out;
}

Polygon convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon minkowski_sum(const Polygon& p, const Polygon& q) {
  std::vector<Point2> sums;
  sums.reserve(p.size() * q.size());
  for (const auto& a : p)
    for (const auto& b : q) sums.push_back(a + b);
  return convex_hull(std::move(sums));
}

Polygon polygon_of(const HPolytope& p) {
  if (p.a.cols() != 2) throw DimensionMismatch("polygon_of needs a 2-D polytope");
  double extent = 1.0;
  for (Eigen::Index i = 0; i < 2; ++i) {
    Vec e = Vec::Zero(2);
    e[i] = 1.0;
    auto hi = support(p, e);
    if (!hi) return {};
    auto lo = support(p, -e);
    extent = std::max({extent, std::abs(*hi), std::abs(*lo)});
  }
  extent = 2.0 * extent + 1.0;
  Polygon poly{{-extent, -extent}, {extent, -extent}, {extent, extent}, {-extent, extent}};
  for (Eigen::Index i = 0; i < p.a.rows() && !poly.empty(); ++i) {
    poly = clip_halfplane(poly, Point2(p.a(i, 0), p.a(i, 1)), p.b[i]);
  }
  return poly;
}

Body body_of(const Polygon& poly) {
  if (poly.size() < 3) throw BadParam("polygon needs at least three vertices");
  Mat a(static_cast<Eigen::Index>(poly.size()), 2);
  Vec b(static_cast<Eigen::Index>(poly.size()));
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    Point2 normal(q.y() - p.y(), p.x() - q.x());
    normal.normalize();
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = normal.x();
    a(r, 1) = normal.y();
    b[r] = normal.dot(p);
  }
  return Body::polytope(std::move(a), std::move(b));
}

std::optional<double> exact_volume(const Body& body) {
  if (body.empty()) return 0.0;
  if (const auto* ball = std::get_if<Ball>(&body.shape())) {
    const double n = static_cast<double>(body.dim());
    return std::pow(std::numbers::pi, n / 2.0) / boost::math::tgamma(n / 2.0 + 1.0) *
           std::pow(ball->radius, n);
  }
  const auto* p = std::get_if<HPolytope>(&body.shape());
  if (!p) return std::nullopt;
  switch (body.dim()) {
    case 1:
      return body.bbox().hi[0] - body.bbox().lo[0];
    case 2:
      return polygon_area(polygon_of(*p));
    case 3: {
      const double extent = bbox_extent(body);
      double vol = 0.0;
      for (Eigen::Index f = 0; f < p->a.rows(); ++f) {
        const auto face = facet_polygon(*p, f, extent);
        if (face.size() < 3) continue;
        for (std::size_t i = 1; i + 1 < face.size(); ++i)
          vol += face[0].dot(face[i].cross(face[i + 1])) / 6.0;
      }
      return std::abs(vol);
    }
    default:
      return std::nullopt;
  }
}

Vec centroid(const Body& body) {
  const auto* p = std::get_if<HPolytope>(&body.shape());
  if (const auto* ball = std::get_if<Ball>(&body.shape())) return ball->center;
  if (!p) throw NotConvex("centroid needs an H-polytope or a ball");
  if (body.empty()) throw ZeroVolume("centroid of an empty body");
  switch (body.dim()) {
    case 1:
      return (body.bbox().lo + body.bbox().hi) / 2.0;
    case 2: {
      const Point2 c = polygon_centroid(polygon_of(*p));
      Vec out(2);
      out << c.x(), c.y();
      return out;
    }
    case 3: {
      const double extent = bbox_extent(body);
      double vol = 0.0;
      Eigen::Vector3d acc = Eigen::Vector3d::Zero();
      for (Eigen::Index f = 0; f < p->a.rows(); ++f) {
        const auto face = facet_polygon(*p, f, extent);
        if (face.size() < 3) continue;
        for (std::size_t i = 1; i + 1 < face.size(); ++i) {
          // Signed tetrahedron with apex at the origin.
          const double v = face[0].dot(face[i].cross(face[i + 1])) / 6.0;
          vol += v;
          acc += v * (face[0] + face[i] + face[i + 1]) / 4.0;
        }
      }
      if (vol == 0.0) throw ZeroVolume("centroid of a flat polytope");
      return acc / vol;
    }
    default:
      throw BadParam("exact centroid supports dimensions 1 to 3");
  }
}

Polygon random_convex_polygon(std::uint64_t seed, double scale, int vertices) {
  if (vertices < 3) throw BadParam("polygon needs at least three vertices");
  Engine eng = make_stream(seed, "polygon");
  const double ax = scale * (0.6 + 0.8 * uniform01(eng));
  const double ay = scale * (0.6 + 0.8 * uniform01(eng));
  const double tilt = 2.0 * std::numbers::pi * uniform01(eng);
  std::vector<Point2> pts;
  for (int i = 0; i < vertices; ++i) {
    const double t = 2.0 * std::numbers::pi * (i + 0.8 * uniform01(eng)) / vertices;
    const double r = 0.75 + 0.25 * uniform01(eng);
    const Point2 q(ax * r * std::cos(t), ay * r * std::sin(t));
    pts.emplace_back(std::cos(tilt) * q.x() - std::sin(tilt) * q.y(),
                     std::sin(tilt) * q.x() + std::cos(tilt) * q.y());
  }
  return convex_hull(std::move(pts));
}

ReflectionVolumes reflection_intersection_volume(const Body& k) {
  const auto* p = std::get_if<HPolytope>(&k.shape());
  if (!p) throw NotConvex("K ∩ -K needs an H-representation");
  if (k.dim() > 3) throw BadParam("exact volumes support dimensions 1 to 3");
  ReflectionVolumes out;
  out.centroid = centroid(k);
  const Body centred = k.translated(-out.centroid);
  const auto& cp = std::get<HPolytope>(centred.shape());
  Mat a(2 * cp.a.rows(), cp.a.cols());
  a << cp.a, -cp.a;
  Vec b(2 * cp.b.size());
  b << cp.b, cp.b;
  const Body both = Body::polytope(std::move(a), std::move(b));
  out.vol_k = *exact_volume(centred);
  out.vol_k_cap_minus_k = *exact_volume(both);
  if (out.vol_k <= 0.0) throw ZeroVolume("K has zero volume");
  out.ratio = out.vol_k_cap_minus_k / out.vol_k;
  out.milman_pajor_holds =
      out.vol_k_cap_minus_k >= out.vol_k / std::pow(2.0, static_cast<double>(k.dim()));
  return out;
}

}  // namespace covering
