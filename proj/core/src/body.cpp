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

#include "covering/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "covering/errors.hpp"
#include "covering/lp.hpp"
#include "covering/raster.hpp"

namespace covering {

double Box::volume() const {
  if (empty()) return 0.0;
  return (hi - lo).prod();
}

bool Box::contains(std::span<const double> x, double slack) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
  }
  return true;
}

Box Box::expanded(double margin) const {
  return {lo.array() - margin, hi.array() + margin};
}

std::optional<double> support(const HPolytope& p, const Vec& u) {
  const auto m = static_cast<std::size_t>(p.a.rows());
  const auto n = static_cast<std::size_t>(p.a.cols());
  // x is free: x = x+ - x-.
  lp::DenseMatrix<double> a(m, 2 * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = p.a(i, j);
      a(i, n + j) = -p.a(i, j);
    }
  }
  std::vector<double> b(p.b.data(), p.b.data() + m);
  std::vector<double> c(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = u[j];
    c[n + j] = -u[j];
  }
  auto r = lp::maximize(a, b, c);
  switch (r.status) {
    case lp::Status::kOptimal:
      return r.objective;
    case lp::Status::kInfeasible:
      return std::nullopt;
    case lp::Status::kUnbounded:
      throw BadParam("polytope is unbounded");
    case lp::Status::kIterationLimit:
      break;
  }
  throw InvariantViolation("support LP hit its iteration limit");
}

double support(const Body& body, const Vec& u) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          return support(s, u).value_or(
              -std::numeric_limits<double>::infinity());
        } else if constexpr (std::is_same_v<T, Ball>) {
          return u.dot(s.center) + s.radius * u.norm();
        } else {
          Raster r = s.raster ? *s.raster : rasterize(body, s.resolution_hint);
          double best = -std::numeric_limits<double>::infinity();
          for (std::size_t f = 0; f < r.size(); ++f) {
            if (r.cell(f)) best = std::max(best, u.dot(r.point(f)));
          }
          return best + 0.5 * r.step() * u.lpNorm<1>();
        }
      },
      body.shape());
}

Body Body::polytope(Mat a, Vec b) {
  if (a.rows() != b.size()) {
    throw DimensionMismatch("polytope has " + std::to_string(a.rows()) +
                            " rows but " + std::to_string(b.size()) +
                            " offsets");
  }
  if (a.cols() == 0) throw BadParam("polytope needs dimension >= 1");
  const auto n = static_cast<std::size_t>(a.cols());
  Body body(n, HPolytope{std::move(a), std::move(b)});
  body.finish();
  return body;
}

Body Body::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw BadParam("ball radius must be positive");
  if (center.size() == 0) throw BadParam("ball needs dimension >= 1");
  const auto n = static_cast<std::size_t>(center.size());
  Body body(n, Ball{std::move(center), radius});
  body.finish();
  return body;
}

Body Body::indicator(std::function<bool(std::span<const double>)> oracle,
                     Box bbox, double resolution_hint) {
  if (!(resolution_hint > 0.0))
    throw BadParam("indicator resolution must be positive");
  if (bbox.lo.size() != bbox.hi.size() || bbox.lo.size() == 0)
    throw DimensionMismatch("indicator bbox corners disagree in dimension");
  const std::size_t n = bbox.dim();
  // Spot check: lattice points on a ring one step outside the box.
  const Box ring = bbox.expanded(resolution_hint);
  std::vector<std::size_t> counts(n);
  std::size_t total = 1;
  const std::size_t per_axis = std::max<std::size_t>(
      3, static_cast<std::size_t>(std::pow(20000.0, 1.0 / n)));
  for (std::size_t i = 0; i < n; ++i) {
    counts[i] = per_axis;
    total *= per_axis;
  }
  std::vector<double> x(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    bool on_face = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = rest % counts[i];
      rest /= counts[i];
      const double t = static_cast<double>(k) / (counts[i] - 1);
      x[i] = ring.lo[i] + t * (ring.hi[i] - ring.lo[i]);
      on_face = on_face || k == 0 || k + 1 == counts[i];
    }
    if (on_face && oracle(x)) {
      throw BadParam("indicator oracle is true outside its bounding box");
    }
  }
  Body body(n, Indicator{std::move(oracle), std::move(bbox), resolution_hint,
                         nullptr});
  body.finish();
  return body;
}

Body Body::from_raster(std::shared_ptr<const Raster> raster) {
  if (!raster || raster->dim() == 0) throw BadParam("empty raster");
  Box bbox = raster->bbox();
  const std::size_t n = raster->dim();
  auto oracle = [raster](std::span<const double> x) {
    return raster->contains(x);
  };
  Body body(n, Indicator{oracle, bbox, raster->step(), raster});
  body.finish();
  return body;
}

Body Body::box(const Vec& lo, const Vec& hi) {
  const auto n = lo.size();
  if (hi.size() != n) throw DimensionMismatch("box corners differ in size");
  Mat a = Mat::Zero(2 * n, n);
  Vec b(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(2 * i, i) = 1.0;
    b[2 * i] = hi[i];
    a(2 * i + 1, i) = -1.0;
    b[2 * i + 1] = -lo[i];
  }
  return polytope(std::move(a), std::move(b));
}

Body Body::point(const Vec& p) { return box(p, p); }

Body Body::empty(std::size_t dim) {
  Mat a = Mat::Zero(2, static_cast<Eigen::Index>(dim));
  a(0, 0) = 1.0;
  a(1, 0) = -1.0;
  Vec b(2);
  b << -1.0, -1.0;
  return polytope(std::move(a), std::move(b));
}

void Body::finish() {
  const auto n = static_cast<Eigen::Index>(dim_);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          bbox_ = Box{Vec::Zero(n), Vec::Zero(n)};
          for (Eigen::Index i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e[i] = 1.0;
            auto hi = support(s, e);
            if (!hi) {
              empty_ = true;
              bbox_ = Box{Vec::Zero(n), Vec::Constant(n, -1.0)};
              return;
            }
            auto lo = support(s, -e);
            bbox_.hi[i] = *hi;
            bbox_.lo[i] = -*lo;
          }
          empty_ = false;
        } else if constexpr (std::is_same_v<T, Ball>) {
          bbox_ = Box{s.center.array() - s.radius, s.center.array() + s.radius};
          empty_ = false;
        } else {
          bbox_ = s.bbox;
          empty_ = s.bbox.empty() || (s.raster && s.raster->count() == 0);
        }
      },
      shape_);
}

bool Body::contains(std::span<const double> x) const {
  if (empty_) return false;
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          constexpr double kTol = 1e-12;
          for (Eigen::Index i = 0; i < s.a.rows(); ++i) {
            double v = 0.0;
            for (Eigen::Index j = 0; j < s.a.cols(); ++j)
              v += s.a(i, j) * x[static_cast<std::size_t>(j)];
            if (v > s.b[i] + kTol * (1.0 + std::abs(s.b[i]))) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          double d2 = 0.0;
          for (Eigen::Index j = 0; j < s.center.size(); ++j) {
            const double d = x[static_cast<std::size_t>(j)] - s.center[j];
            d2 += d * d;
          }
          return d2 <= s.radius * s.radius * (1.0 + 1e-12);
        } else {
          return s.bbox.contains(x) && s.oracle(x);
        }
      },
      shape_);
}

Body Body::reflected() const {
  return std::visit(
      [&](const auto& s) -> Body {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          return polytope(-s.a, s.b);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ball(-s.center, s.radius);
        } else {
          auto inner = s.oracle;
          auto oracle = [inner](std::span<const double> x) {
            std::vector<double> y(x.begin(), x.end());
            for (double& v : y) v = -v;
            return inner(y);
          };
          Body out(dim_, Indicator{oracle, Box{-s.bbox.hi, -s.bbox.lo},
                                   s.resolution_hint, nullptr});
          out.finish();
          return out;
        }
      },
      shape_);
}

Body Body::translated(const Vec& shift) const {
  if (static_cast<std::size_t>(shift.size()) != dim_)
    throw DimensionMismatch("translation vector has the wrong dimension");
  return std::visit(
      [&](const auto& s) -> Body {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          return polytope(s.a, s.b + s.a * shift);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return ball(s.center + shift, s.radius);
        } else {
          auto inner = s.oracle;
          auto oracle = [inner, shift](std::span<const double> x) {
            std::vector<double> y(x.begin(), x.end());
            for (std::size_t i = 0; i < y.size(); ++i)
              y[i] -= shift[static_cast<Eigen::Index>(i)];
            return inner(y);
          };
          Body out(dim_, Indicator{oracle, Box{s.bbox.lo + shift,
                                               s.bbox.hi + shift},
                                   s.resolution_hint, nullptr});
          out.finish();
          return out;
        }
      },
      shape_);
}

}  // namespace covering
