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

// Saturated-packing nets and coverings of the flat torus by translates.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "covering/body.hpp"
#include "covering/cover_report.hpp"
#include "covering/hypercover.hpp"

namespace covering {

// The flat torus R^n / (side Z)^n with fundamental domain [0, side)^n.
struct TorusRegion {
  double side = 1.0;
  std::size_t dim = 2;

  double volume() const;
  // Representative of x in [0, side)^n.
  Vec wrap(const Vec& x) const;
  // Representative of x in [-side/2, side/2)^n.
  Vec wrap_centered(const Vec& x) const;
};

using NetHost = std::variant<TorusRegion, Body>;

struct PointNet {
  std::vector<Vec> points;
  double delta = 0.0;
  NetHost host;
  // Unset means the Euclidean norm.
  std::optional<Body> gauge;
  // Every host point lies within this gauge distance of the net. Equals
  // delta when holes were filled exactly, otherwise delta plus the gauge
  // length of half a candidate cell.
  double covering_radius = 0.0;
  double stride = 0.0;
};

struct NetOptions {
  // Candidate lattice stride; 0 picks the largest stride <= delta/4 that
  // divides the torus side (or delta/4 for body hosts).
  double stride = 0.0;
  // Exact hole filling (Euclidean, n <= 2 tori).
  bool fill_holes = true;
};

// Greedy saturation over a shuffled candidate lattice: a candidate is kept
// when its gauge distance to every kept point is at least delta, so the
// (delta/2)-copies of the gauge are disjoint. Throws BadParam when the
// stride is >= delta/2 or the gauge is not symmetric.
PointNet saturated_packing_net(const NetHost& host, double delta,
                               const std::optional<Body>& gauge,
                               std::uint64_t seed, const NetOptions& options = {});

// Minimal-image gauge distance between two torus points, or plain gauge
// distance when `region` is unset.
double net_distance(const PointNet& net, const Vec& a, const Vec& b);

// Ground = net points; candidate c = {lambda : lambda in centers[c] + (L ∼ T)}.
// Membership is taken modulo the torus when `region` is given. Throws
// InfeasibleInstance when some net point lies in no candidate.
CoverInstance build_translate_cover_instance(
    const Body& k, const Body& l, const Body& t, const PointNet& lambda,
    const std::vector<Vec>& centers,
    const std::optional<TorusRegion>& region = {});

// Candidates given directly as the body L ∼ T.
CoverInstance build_translate_cover_instance(
    const Body& l_minus_t, const PointNet& lambda, const std::vector<Vec>& centers,
    const std::optional<TorusRegion>& region = {});

// Every lattice point of stride * Z^n in [0, side)^n.
std::vector<Vec> torus_lattice(const TorusRegion& region, double stride);

struct TorusCoverOptions {
  double center_stride = 0.0;  // 0: largest divisor of side <= delta/4
  double grid_step = 0.0;      // 0: largest divisor of side <= delta/8
  int threads = 0;
  NetOptions net;
  // Evaluate renbyanything_bound for the report (skipped in fast tests).
  bool with_bounds = true;
};

// Net from a saturated delta/2-packing, candidates = translates of K_{-r}
// (r the net's covering radius) at lattice centers, greedy cover of the
// net, and certification of the chosen translates of K on a lattice of the
// torus.
CoverReport torus_cover_density(const Body& k, const TorusRegion& region,
                                double delta, std::uint64_t seed,
                                const TorusCoverOptions& options = {});

// Lattice points (step grid_step) of the torus not covered by the given
// translates of K.
std::uint64_t count_uncovered(const Body& k, const TorusRegion& region,
                              const std::vector<Vec>& centers, double grid_step,
                              std::uint64_t* total = nullptr, int threads = 0);

}  // namespace covering
