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

#include "covering/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>

#include "covering/errors.hpp"
#include "covering/euclid.hpp"
#include "covering/polytope.hpp"
#include "covering/raster.hpp"

namespace covering {

namespace {

using Objective = std::function<std::optional<double>(double)>;

BoundResult grid_minimize(std::string name, const std::string& arg,
                          std::span<const double> grid, const Objective& f,
                          const SearchOptions& search) {
  if (grid.empty()) throw BadParam(name + ": empty parameter grid");
  BoundResult r;
  r.name = std::move(name);
  double best = std::numeric_limits<double>::infinity();
  double best_arg = 0.0;
  auto eval = [&](double x) {
    ++r.evaluations;
    auto v = f(x);
    if (v && std::isfinite(*v) && *v < best) {
      best = *v;
      best_arg = x;
    }
    return v ? *v : std::numeric_limits<double>::infinity();
  };
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> values;
  for (double x : sorted) values.push_back(eval(x));
  if (!std::isfinite(best))
    throw InfeasibleInstance(r.name + ": no feasible point on the parameter grid");
  r.parameters["grid_points"] = static_cast<double>(sorted.size());
  r.parameters["grid_min"] = best;

  if (search.refine && sorted.size() >= 2 && sorted.front() > 0.0) {
    const auto it = std::min_element(values.begin(), values.end());
    const auto i = static_cast<std::size_t>(it - values.begin());
    double a = std::log(sorted[i > 0 ? i - 1 : i]);
    double b = std::log(sorted[i + 1 < sorted.size() ? i + 1 : i]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = eval(std::exp(c)), fd = eval(std::exp(d));
    for (std::size_t k = 0; k < search.refine_iterations; ++k) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = eval(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = eval(std::exp(d));
      }
    }
  }
  r.value = best;
  r.attained_at = best_arg;
  r.parameters[arg] = best_arg;
  r.parameters["evaluations"] = static_cast<double>(r.evaluations);
  return r;
}

// vol(K_{-delta}) as a function of delta: exact for balls and polytopes,
// one distance transform of the lattice samples otherwise.
class InnerVolumes {
 public:
  explicit InnerVolumes(const Body& k) : k_(k) {
    if (exact_volume(k)) return;
    const double step = std::get<Indicator>(k.shape()).resolution_hint;
    raster_ = std::make_shared<Raster>(rasterize(k, step));
    depth_ = depth_squared(*raster_);
    std::sort(depth_.begin(), depth_.end());
    cell_ = std::pow(step, static_cast<double>(k.dim()));
  }

  double operator()(double delta) const {
    if (!raster_) {
      const Body inner = inner_parallel_body(k_, delta);
      if (inner.empty()) return 0.0;
      return exact_volume(inner).value_or(0.0);
    }
    const double threshold = delta * delta * (1.0 + 1e-9);
    const auto above = depth_.end() - std::upper_bound(depth_.begin(), depth_.end(), threshold);
    return static_cast<double>(above) * cell_;
  }

 private:
  const Body& k_;
  std::shared_ptr<Raster> raster_;
  std::vector<double> depth_;
  double cell_ = 0.0;
};

double ball_volume(std::size_t n, double r) {
  const double nn = static_cast<double>(n);
  return std::pow(std::numbers::pi, nn / 2.0) / std::tgamma(nn / 2.0 + 1.0) * std::pow(r, nn);
}

double rogers_value(double n) { return n * std::log(n) + n * std::log(std::log(n)) + 5.0 * n; }

}  // namespace

BoundResult rogers_bound(int n) {
  if (n < 2) throw BadParam("the Rogers bound needs n >= 2");
  BoundResult r;
  r.name = "rogers";
  r.value = rogers_value(n);
  r.parameters["n"] = n;
  if (n == 2) r.flags.push_back("ln ln n < 0");
  return r;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw BadParam("log grid needs 0 < lo <= hi and count > 0");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_delta_grid(const Body& k, std::size_t count) {
  if (k.empty()) throw InfeasibleInstance("body is empty");
  const Box& b = k.bbox();
  const double w = 0.5 * (b.hi - b.lo).minCoeff();
  if (!(w > 0.0)) throw InfeasibleInstance("body has no interior");
  return log_grid(1e-4 * w, w, count);
}

BoundResult renbyanything_bound(const Body& k, std::span<const double> delta_grid,
                                const SearchOptions& search) {
  if (k.empty()) throw InfeasibleInstance("renbyanything: body is empty");
  const InnerVolumes vol(k);
  const double vk = vol(0.0);
  if (!(vk > 0.0)) throw ZeroVolume("renbyanything: body has zero volume");
  const std::size_t n = k.dim();
  auto r = grid_minimize("renbyanything", "delta", delta_grid,
                         [&](double delta) -> std::optional<double> {
                           if (!(delta > 0.0)) return std::nullopt;
                           const double inner = vol(delta);
                           if (!(inner > 0.0)) return std::nullopt;
                           const double half = vol(0.5 * delta);
                           return vk / inner * (1.0 + std::log(half / ball_volume(n, 0.5 * delta)));
                         },
                         search);
  r.parameters["n"] = static_cast<double>(n);
  return r;
}

std::vector<double> default_sphere_delta_grid(const SphericalBody& k, std::size_t count) {
  double top = std::numbers::pi / 2.0;
  if (const auto* c = std::get_if<Cap>(&k.shape())) top = c->radius;
  return log_grid(1e-4 * top, top, count);
}

BoundResult spherebyanything_bound(const SphericalBody& k, std::span<const double> delta_grid,
                                   const SearchOptions& search) {
  if (k.empty()) throw InfeasibleInstance("spherebyanything: body is empty");
  const int n = k.dim();
  const double sk = spherical_measure(k);
  if (!(sk > 0.0)) throw ZeroVolume("spherebyanything: body has zero measure");
  auto measure = [&](double delta) {
    if (const auto* c = std::get_if<Cap>(&k.shape()))
      return c->radius > delta ? cap_measure(n, c->radius - delta) : 0.0;
    const auto inner = spherical_erosion(k, delta);
    return inner.empty() ? 0.0 : spherical_measure(inner, 200'000);
  };
  auto r = grid_minimize("spherebyanything", "delta", delta_grid,
                         [&](double delta) -> std::optional<double> {
                           if (!(delta > 0.0)) return std::nullopt;
                           const double inner = measure(delta);
                           if (!(inner > 0.0)) return std::nullopt;
                           const double half = measure(0.5 * delta);
                           return sk / inner * (1.0 + std::log(half / cap_measure(n, 0.5 * delta)));
                         },
                         search);
  r.parameters["n"] = n;
  return r;
}

BoundResult spherebycaps_bound(int n) {
  if (n < 3) throw BadParam("spherebycaps needs n >= 3");
  const double nn = n;
  const double eta = 1.0 / (2.0 * nn * std::log(nn));
  BoundResult r;
  r.name = "spherebycaps";
  r.value = (1.0 + nn * std::log(2.0 / eta)) * std::pow(1.0 / (1.0 - eta), nn);
  r.parameters["n"] = nn;
  r.parameters["eta"] = eta;
  r.parameters["headline"] = rogers_value(nn);
  r.attained_at = eta;
  r.evaluations = 1;
  return r;
}

std::vector<double> default_kappa_grid(std::size_t count) { return log_grid(1e-4, 0.999, count); }

BoundResult spherebyconvex_bound(int n, double sigma_k, double rho,
                                 std::span<const double> kappa_grid, const SearchOptions& search) {
  if (n < 1) throw BadParam("spherebyconvex needs n >= 1");
  if (!(rho > 0.0) || !(rho < std::numbers::pi / 2.0))
    throw BadParam("spherebyconvex needs 0 < rho < pi/2");
  const double omega = cap_measure(n, rho);
  if (!(sigma_k > 0.0) || sigma_k > omega * (1.0 + 1e-12))
    throw BadParam("spherebyconvex needs 0 < sigma_k <= Omega(rho)");
  const double nn = n;
  auto r = grid_minimize("spherebyconvex", "kappa", kappa_grid,
                         [&](double kappa) -> std::optional<double> {
                           if (!(kappa > 0.0) || !(kappa < 1.0)) return std::nullopt;
                           const double denom = sigma_k - omega * (1.0 - std::pow(1.0 - kappa, nn));
                           if (!(denom > 0.0)) return std::nullopt;
                           return sigma_k / denom * (2.0 * nn + nn * std::log(1.0 / (kappa * rho)));
                         },
                         search);
  const double kappa = *r.attained_at;
  // The logarithmic term before the cap-size and Jordan estimates.
  const double pre = 1.0 + std::log(1.0 / cap_measure(n, 0.5 * kappa * rho));
  r.parameters["n"] = nn;
  r.parameters["rho"] = rho;
  r.parameters["sigma_k"] = sigma_k;
  r.parameters["pre_jordan_term"] = pre;
  if (pre > 2.0 * nn + nn * std::log(1.0 / (kappa * rho)))
    r.flags.push_back("pre-Jordan term exceeds the closed form");
  if (!jordan_holds(0.5 * kappa * rho)) r.flags.push_back("Jordan inequality fails at kappa rho / 2");
  return r;
}

SandwichBounds simple_sandwich_bounds(const Body& k, const Body& l, double step) {
  if (k.dim() != l.dim()) throw DimensionMismatch("K and L dimensions differ");
  SandwichBounds s;
  s.vol_l = l.empty() ? 0.0 : measure_volume(l, step);
  if (!(s.vol_l > 0.0)) throw ZeroVolume("vol L is zero");
  s.vol_k = k.empty() ? 0.0 : measure_volume(k, step);
  const Body diff = minkowski_sum(k, l.reflected(), GridOptions{step, 0});
  s.vol_k_minus_l = diff.empty() ? 0.0 : measure_volume(diff, step);
  s.lower = std::max(s.vol_k / s.vol_l, 1.0);
  s.upper = s.vol_k_minus_l / s.vol_l;
  return s;
}

LnnesszamReport lnnesszam_check(std::span<const double> n_values) {
  LnnesszamReport rep;
  for (double n : n_values) {
    if (!(n >= 3.0)) throw BadParam("lnnesszam check needs n >= 3");
    LnnesszamRow row;
    row.n = n;
    const double ln = std::log(n);
    const double a = 1.0 + n * std::log(4.0 * n * ln);
    row.x = 1.0 / ln;
    row.first = a * std::exp(row.x);
    row.middle = a * (1.0 + 2.0 * row.x);
    row.last = rogers_value(n);
    row.link1 = row.first <= row.middle;
    row.link2 = row.middle <= row.last;
    row.scalar = std::exp(row.x) <= 1.0 + 2.0 * row.x;
    rep.rows.push_back(row);
  }
  std::vector<LnnesszamRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  for (const auto& row : sorted) {
    if (row.link1 && !rep.first_link1) rep.first_link1 = row.n;
    if (row.link2 && !rep.first_link2) rep.first_link2 = row.n;
    if (row.link1 && row.link2 && !rep.first_chain) rep.first_chain = row.n;
    if (!(row.link1 && row.link2)) rep.failures.push_back(row.n);
  }
  return rep;
}

bool jordan_holds(double x) {
  // Tolerance of a few ulps for the endpoint x = pi/2, where equality holds.
  return 2.0 * x / std::numbers::pi <= std::sin(x) + 4.0 * std::numeric_limits<double>::epsilon();
}

JordanReport jordan_check(std::size_t points) {
  JordanReport rep;
  rep.points = points;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const double top = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = points == 1 ? 0.0 : top * static_cast<double>(i) / static_cast<double>(points - 1);
    rep.min_margin = std::min(rep.min_margin, std::sin(x) - 2.0 * x / std::numbers::pi);
    if (!jordan_holds(x)) ++rep.violations;
  }
  return rep;
}

}  // namespace covering
