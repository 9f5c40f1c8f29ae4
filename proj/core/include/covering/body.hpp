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

// Measurable bodies in R^n: H-polytopes, Euclidean balls, and indicator
// oracles with a bounding box. Bodies are immutable values; copies share
// any oracle state.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>

#include <Eigen/Dense>

namespace covering {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Box {
  Vec lo;
  Vec hi;

  std::size_t dim() const { return static_cast<std::size_t>(lo.size()); }
  bool empty() const { return (hi.array() < lo.array()).any(); }
  double volume() const;
  bool contains(std::span<const double> x, double slack = 0.0) const;
  Box expanded(double margin) const;
};

// {x : A x <= b}
struct HPolytope {
  Mat a;
  Vec b;
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

class Raster;

struct Indicator {
  std::function<bool(std::span<const double>)> oracle;
  Box bbox;
  double resolution_hint = 0.0;
  // Set when the indicator is a sampled lattice (erosions, bitmap files);
  // grid algorithms then reuse the samples instead of re-querying.
  std::shared_ptr<const Raster> raster;
};

class Body {
 public:
  using Shape = std::variant<HPolytope, Ball, Indicator>;

  // Throws BadParam unless the polytope is bounded (an LP in each
  // coordinate direction). An infeasible system is the empty body.
  static Body polytope(Mat a, Vec b);
  static Body ball(Vec center, double radius);
  // The bbox is spot-checked on a lattice ring just outside it.
  static Body indicator(std::function<bool(std::span<const double>)> oracle,
                        Box bbox, double resolution_hint);
  static Body from_raster(std::shared_ptr<const Raster> raster);

  static Body box(const Vec& lo, const Vec& hi);
  static Body point(const Vec& p);
  static Body empty(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  bool is_polytope() const { return std::holds_alternative<HPolytope>(shape_); }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  bool is_indicator() const {
    return std::holds_alternative<Indicator>(shape_);
  }

  bool empty() const { return empty_; }
  // Tight for polytopes and balls; the declared box for indicators.
  const Box& bbox() const { return bbox_; }
  bool contains(std::span<const double> x) const;
  bool contains(const Vec& x) const {
    return contains(std::span<const double>(x.data(), x.size()));
  }

  // Reflection -K.
  Body reflected() const;
  Body translated(const Vec& shift) const;

 private:
  Body(std::size_t dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}
  void finish();

  std::size_t dim_ = 0;
  Shape shape_;
  Box bbox_;
  bool empty_ = false;
};

// max <u, x> over an H-polytope; nullopt for an empty polytope.
std::optional<double> support(const HPolytope& p, const Vec& u);
// Support function of any body; indicators use their lattice samples.
double support(const Body& body, const Vec& u);

}  // namespace covering
