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

// Minkowski calculus and volumes of Euclidean bodies.

#include <cstdint>

#include "covering/body.hpp"

namespace covering {

struct GridOptions {
  // Lattice step for grid paths; 0 uses the body's resolution hint.
  double step = 0.0;
  int threads = 0;
};

// K ∼ T = {x : T + x ⊆ K}. Exact for polytope K with convex T (facets move
// by the support values h_T(a_i)) and for two balls; the intersection of
// balls for ball K and polytope T is returned as an exact oracle; anything
// involving an indicator goes through lattice erosion. An empty result is
// a valid (empty) body.
Body minkowski_difference(const Body& k, const Body& t,
                          const GridOptions& grid = {});

// K_{-δ} = K ∼ B(o, δ).
Body inner_parallel_body(const Body& k, double delta,
                         const GridOptions& grid = {});

// K + M. Exact for planar polytopes (hull of vertex sums) and for two
// balls; lattice dilation otherwise.
Body minkowski_sum(const Body& k, const Body& m, const GridOptions& grid = {});

enum class VolumeMethod { kGrid, kMonteCarlo };

struct VolumeParams {
  double step = 1e-2;              // grid
  std::uint64_t samples = 100000;  // Monte Carlo
  std::uint64_t seed = 0;
  int threads = 0;
};

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // grid: boundary-cell bound; Monte Carlo: 3 sigma
};

VolumeEstimate volume(const Body& k, VolumeMethod method,
                      const VolumeParams& params = {});

// Exact volume when available, otherwise a lattice count at the body's
// resolution hint (or `step` when given).
double measure_volume(const Body& k, double step = 0.0);

// Gauge (Minkowski functional) of a body containing the origin in its
// interior: inf{s > 0 : v ∈ s G}.
double gauge_norm(const Body& gauge, const Vec& v);
// G = -G, checked exactly for balls and polytopes and on lattice samples
// for indicators.
bool is_symmetric(const Body& gauge);

}  // namespace covering
