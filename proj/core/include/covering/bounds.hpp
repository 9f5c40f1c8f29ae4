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

// Closed-form covering density bounds, evaluated numerically.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covering/body.hpp"
#include "covering/sphere.hpp"

namespace covering {

struct BoundResult {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> parameters;
  // Minimizing argument for inf-type bounds.
  std::optional<double> attained_at;
  std::vector<std::string> flags;
  std::size_t evaluations = 0;
};

// n ln n + n ln ln n + 5n; n = 2 is evaluated as is and flagged.
BoundResult rogers_bound(int n);

// count points log-spaced on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

// Inf-type bounds minimize over the given grid. With `refine` a golden
// section search then runs between the neighbours of the best grid point;
// the reported value is the minimum over every evaluated argument.
struct SearchOptions {
  bool refine = true;
  std::size_t refine_iterations = 40;
};

// inf over delta of vol K / vol K_{-delta} * (1 + ln(vol K_{-delta/2} /
// vol B(o, delta/2))). Grid entries with empty K_{-delta} are skipped;
// InfeasibleInstance when all are.
BoundResult renbyanything_bound(const Body& k, std::span<const double> delta_grid,
                                const SearchOptions& search = {});
// 64 values log-spaced from 1e-4 w to w, w half the smallest bbox width.
std::vector<double> default_delta_grid(const Body& k, std::size_t count = 64);

// inf over delta of sigma(K)/sigma(K_{-delta}) * (1 + ln(sigma(K_{-delta/2}) /
// Omega(delta/2))).
BoundResult spherebyanything_bound(const SphericalBody& k,
                                   std::span<const double> delta_grid,
                                   const SearchOptions& search = {});
std::vector<double> default_sphere_delta_grid(const SphericalBody& k,
                                              std::size_t count = 64);

// (1 + n ln(2/eta)) (1/(1-eta))^n at eta = 1/(2 n ln n), n >= 3. The
// parameters carry eta and the Rogers expression ("headline").
BoundResult spherebycaps_bound(int n);

// inf over kappa in (0,1) with sigma_k - Omega(rho)(1 - (1-kappa)^n) > 0 of
// sigma_k / (sigma_k - Omega(rho)(1 - (1-kappa)^n)) * (2n + n ln(1/(kappa rho))).
BoundResult spherebyconvex_bound(int n, double sigma_k, double rho,
                                 std::span<const double> kappa_grid,
                                 const SearchOptions& search = {});
std::vector<double> default_kappa_grid(std::size_t count = 64);

struct SandwichBounds {
  double lower = 0.0;  // max(vol K / vol L, 1)
  double upper = 0.0;  // vol(K - L) / vol L
  double vol_k = 0.0;
  double vol_l = 0.0;
  double vol_k_minus_l = 0.0;
};

// `step` is the lattice step for bodies without exact volumes.
SandwichBounds simple_sandwich_bounds(const Body& k, const Body& l, double step = 0.0);

struct LnnesszamRow {
  double n = 0.0;
  double first = 0.0;   // (1 + n ln(4 n ln n)) exp(1/ln n)
  double middle = 0.0;  // (1 + n ln(4 n ln n)) (1 + 2/ln n)
  double last = 0.0;    // n ln n + n ln ln n + 5n
  bool link1 = false;   // first <= middle
  bool link2 = false;   // middle <= last
  double x = 0.0;       // 1/ln n
  bool scalar = false;  // exp(x) <= 1 + 2x
};

struct LnnesszamReport {
  std::vector<LnnesszamRow> rows;
  std::optional<double> first_link1;
  std::optional<double> first_link2;
  std::optional<double> first_chain;
  std::vector<double> failures;
};

LnnesszamReport lnnesszam_check(std::span<const double> n_values);

// 2x/pi <= sin x.
bool jordan_holds(double x);

struct JordanReport {
  std::size_t points = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;  // min of sin x - 2x/pi
};

// Checks `points` evenly spaced values of [0, pi/2], endpoints included.
JordanReport jordan_check(std::size_t points = 10000);

}  // namespace covering
