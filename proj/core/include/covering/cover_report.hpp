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

// Result of a covering construction on the torus or the sphere.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covering/body.hpp"
#include "covering/hypercover.hpp"
#include "covering/rng.hpp"

namespace covering {

// Facts about the finite set-cover instance a construction solved.
struct InstanceStats {
  std::size_t ground = 0;
  std::size_t candidates = 0;
  std::size_t max_deg = 0;  // largest candidate
  std::size_t greedy_size = 0;
  // Uniform dual (1/max_deg on every element) and uniform primal weights.
  double tau_star_lower = 0.0;
  double tau_star_upper = 0.0;
  std::optional<double> tau_star;  // LP optimum when the instance is small
  // (1 + ln max_deg) * tau_star_lower; greedy below it certifies the
  // Lovász–Stein inequality without solving the LP.
  double ls_bound_lower = 0.0;
  bool ls_holds = false;
  // Volume bound on max_deg from the packing argument (torus only).
  std::optional<double> max_deg_bound;
};

struct CoverReport {
  std::string kind;  // "torus" or "sphere"
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  // Radius r with net + B(o, r) covering the region.
  double net_radius = 0.0;
  std::vector<Vec> net;
  std::vector<Vec> chosen_centers;
  std::vector<Eigen::Matrix3d> chosen_rotations;
  double body_measure = 0.0;
  double region_measure = 0.0;
  double density = 0.0;
  bool valid = false;
  // Torus: certification grid step. Sphere: angular spacing of the
  // validation sample is random, so this is 0.
  double grid_resolution = 0.0;
  std::uint64_t certification_points = 0;
  std::uint64_t uncovered_points = 0;
  InstanceStats instance;
  std::map<std::string, double> bounds;
  std::vector<std::string> notes;
};

}  // namespace covering
