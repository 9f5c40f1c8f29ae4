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

// Helpers shared by the experiment runners and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "covering/bounds.hpp"

namespace covering::harness {

// Shortest round-trip decimal text of x.
std::string num(double x);

// The 20 cap radii swept by the cap-size checks: evenly spaced in
// [0.05, pi/2 - 0.05].
std::vector<double> cap_size_phi_grid();

struct LnnesszamConsistency {
  // Every link flag matches a 50-digit recomputation.
  bool agrees = true;
  std::vector<double> disagreements;
  // Both links hold at every sampled n at or above the first full chain.
  bool chain_tail_holds = true;
};
LnnesszamConsistency lnnesszam_consistency(const LnnesszamReport& report);

struct MilmanPajorSummary {
  std::size_t polygons = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;
};
// Random convex polygons (3 to 12 vertices, "instance" stream).
MilmanPajorSummary milman_pajor_sweep(std::uint64_t seed, std::size_t count);

}  // namespace covering::harness
