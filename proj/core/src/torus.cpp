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

#include "covering/torus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "covering/bounds.hpp"
#include "covering/errors.hpp"
#include "covering/euclid.hpp"
#include "covering/parallel.hpp"
#include "covering/polytope.hpp"
#include "covering/rng.hpp"
#include "spatial_hash.hpp"

namespace covering {

namespace {

using detail::SpatialHash;

constexpr double kPackingSlack = 1e-9;

std::span<const double> span_of(const Vec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Largest step of the form side/m (m integer) that is <= target.
double divisor_step(double side, double target) {
  const double m = std::ceil(side / target - 1e-9);
  return side / std::max(1.0, m);
}

double gauge_extent(const std::optional<Body>& gauge) {
  if (!gauge) return 1.0;
  const Box& b = gauge->bbox();
  return std::max(b.lo.cwiseAbs().maxCoeff(), b.hi.cwiseAbs().maxCoeff());
}

// Euclidean radius of the gauge when it is a ball at the origin.
std::optional<double> euclidean_radius(const std::optional<Body>& gauge) {
  if (!gauge) return 1.0;
  if (const auto* b = std::get_if<Ball>(&gauge->shape())) return b->radius;
  return std::nullopt;
}

// Calls fn(k) for every integer vector k in {-r..r}^n.
template <typename Fn>
void for_each_shift(std::size_t n, int r, Fn&& fn) {
  std::vector<int> k(n, -r);
  while (true) {
    fn(k);
    std::size_t i = 0;
    while (i < n && k[i] == r) k[i++] = -r;
    if (i == n) return;
    ++k[i];
  }
}

class NetBuilder {
 public:
  NetBuilder(const PointNet& net, std::size_t dim)
      : net_(net),
        dim_(dim),
        extent_(gauge_extent(net.gauge)),
        hash_(dim, net.delta * extent_, period_of(net)) {}

  static std::optional<double> period_of(const PointNet& net) {
    if (const auto* t = std::get_if<TorusRegion>(&net.host)) return t->side;
    return std::nullopt;
  }

  const std::vector<Vec>& points() const { return points_; }

  void add(const Vec& p) {
    hash_.insert(static_cast<std::uint32_t>(points_.size()), span_of(p));
    points_.push_back(p);
  }

  // Smallest distance from x to the net, looking no farther than `reach`
  // gauge units (returns +inf when nothing is that close).
  double nearest(const Vec& x, double reach) const {
    Vec lo = x.array() - reach * extent_;
    Vec hi = x.array() + reach * extent_;
    double best = std::numeric_limits<double>::infinity();
    hash_.query_box(span_of(lo), span_of(hi), [&](std::uint32_t id) {
      best = std::min(best, net_distance(net_, x, points_[id]));
    });
    return best;
  }

  // Ids whose box neighbourhood overlaps x +- reach (no distance filter).
  template <typename Fn>
  void neighbours(const Vec& x, double reach, Fn&& fn) const {
    Vec lo = x.array() - reach;
    Vec hi = x.array() + reach;
    hash_.query_box(span_of(lo), span_of(hi), fn);
  }

 private:
  const PointNet& net_;
  std::size_t dim_;
  double extent_;
  SpatialHash hash_;
  std::vector<Vec> points_;
};

// Points on both delta-circles around two points at offset d (torus image).
void circle_intersections(const Vec& p, const Vec& d, double r, Vec out[2]) {
  const double len = d.norm();
  const double h = std::sqrt(std::max(0.0, r * r - 0.25 * len * len));
  Vec perp(2);
  perp << -d[1] / len, d[0] / len;
  const Vec mid = p + 0.5 * d;
  out[0] = mid + h * perp;
  out[1] = mid - h * perp;
}

// Inserts intersection points of radius-r circles (and a point on every
// isolated circle) while they keep distance >= r from the net. On
// return no torus point is farther than r from the net.
// r is the Euclidean radius of the gauge ball delta * G.
void fill_holes_2d(NetBuilder& b, const TorusRegion& torus, double r, double delta) {
  const double accept = delta * (1.0 - kPackingSlack);
  const int reach = static_cast<int>(std::ceil(2.0 * r / torus.side + 0.5));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.points().size(); ++i) {
      const Vec pi = b.points()[i];
      bool isolated = true;
      std::vector<Vec> proposals;
      b.neighbours(pi, 2.0 * r, [&](std::uint32_t j) {
        const Vec d0 = torus.wrap_centered(b.points()[j] - pi);
        for_each_shift(2, reach, [&](const std::vector<int>& k) {
          Vec d = d0;
          d[0] += k[0] * torus.side;
          d[1] += k[1] * torus.side;
          const double len = d.norm();
          if (len == 0.0 || len > 2.0 * r * (1.0 + 1e-12)) return;
          isolated = false;
          Vec q[2];
          circle_intersections(pi, d, r, q);
          proposals.push_back(q[0]);
          proposals.push_back(q[1]);
        });
      });
      if (isolated) {
        Vec q = pi;
        q[0] += r;
        proposals.push_back(q);
      }
      for (const Vec& q : proposals) {
        const Vec w = torus.wrap(q);
        if (b.nearest(w, delta) >= accept) {
          b.add(w);
          changed = true;
        }
      }
    }
  }
}

void fill_gaps_1d(NetBuilder& b, const TorusRegion& torus, double r) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<double> xs;
    for (const Vec& p : b.points()) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double next = i + 1 < xs.size() ? xs[i + 1] : xs[0] + torus.side;
      if (next - xs[i] > 2.0 * r) {
        Vec q(1);
        q[0] = xs[i] + r;
        b.add(torus.wrap(q));
        changed = true;
      }
    }
  }
}

// Grid safety net for the 2-D hole filling: any lattice point farther than
// r from the net is inserted (it keeps the packing) and holes are refilled.
void grid_check_2d(NetBuilder& b, const TorusRegion& torus, double r, double delta) {
  const double h = divisor_step(torus.side, r / 8.0);
  const auto m = static_cast<std::size_t>(std::llround(torus.side / h));
  if (m * m > 4'000'000) return;
  bool changed = true;
  while (changed) {
    changed = false;
    Vec x(2);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        x << static_cast<double>(i) * h, static_cast<double>(j) * h;
        if (b.nearest(x, delta) > delta) {
          b.add(x);
          changed = true;
        }
      }
    if (changed) fill_holes_2d(b, torus, r, delta);
  }
}

}  // namespace

double TorusRegion::volume() const { return std::pow(side, static_cast<double>(dim)); }

Vec TorusRegion::wrap(const Vec& x) const {
  Vec y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] = std::fmod(y[i], side);
    if (y[i] < 0.0) y[i] += side;
    if (y[i] >= side) y[i] -= side;
  }
  return y;
}

Vec TorusRegion::wrap_centered(const Vec& x) const {
  Vec y = wrap(x);
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] >= 0.5 * side) y[i] -= side;
  return y;
}

double net_distance(const PointNet& net, const Vec& a, const Vec& b) {
  const auto norm = [&](const Vec& v) {
    return net.gauge ? gauge_norm(*net.gauge, v) : v.norm();
  };
  const auto* torus = std::get_if<TorusRegion>(&net.host);
  if (!torus) return norm(b - a);
  const Vec d = torus->wrap_centered(b - a);
  if (!net.gauge || net.gauge->is_ball()) return norm(d);
  double best = std::numeric_limits<double>::infinity();
  for_each_shift(static_cast<std::size_t>(d.size()), 1, [&](const std::vector<int>& k) {
    Vec e = d;
    for (Eigen::Index i = 0; i < e.size(); ++i) e[i] += k[static_cast<std::size_t>(i)] * torus->side;
    best = std::min(best, norm(e));
  });
  return best;
}

std::vector<Vec> torus_lattice(const TorusRegion& region, double stride) {
  if (!(stride > 0.0)) throw BadParam("lattice stride must be positive");
  const double h = divisor_step(region.side, stride);
  const auto m = static_cast<std::size_t>(std::llround(region.side / h));
  std::size_t total = 1;
  for (std::size_t i = 0; i < region.dim; ++i) {
    if (total > 50'000'000 / m) throw SizeLimitExceeded("torus lattice is too large");
    total *= m;
  }
  std::vector<Vec> out;
  out.reserve(total);
  for (std::size_t f = 0; f < total; ++f) {
    Vec p(static_cast<Eigen::Index>(region.dim));
    std::size_t rest = f;
    for (std::size_t i = 0; i < region.dim; ++i) {
      p[static_cast<Eigen::Index>(i)] = static_cast<double>(rest % m) * h;
      rest /= m;
    }
    out.push_back(std::move(p));
  }
  return out;
}

PointNet saturated_packing_net(const NetHost& host, double delta,
                               const std::optional<Body>& gauge, std::uint64_t seed,
                               const NetOptions& options) {
  if (!(delta > 0.0)) throw BadParam("net radius must be positive");
  PointNet net;
  net.delta = delta;
  net.host = host;
  net.gauge = gauge;
  std::size_t dim = 0;
  if (const auto* t = std::get_if<TorusRegion>(&host)) {
    if (!(t->side > 0.0)) throw BadParam("torus side must be positive");
    if (t->dim == 0) throw BadParam("torus dimension must be positive");
    dim = t->dim;
  } else {
    dim = std::get<Body>(host).dim();
  }
  if (gauge) {
    if (gauge->dim() != dim) throw DimensionMismatch("gauge dimension differs from host");
    if (!is_symmetric(*gauge)) throw BadParam("gauge body must be symmetric about the origin");
  }

  const auto* torus = std::get_if<TorusRegion>(&host);
  double stride = options.stride;
  if (stride <= 0.0) {
    stride = torus ? divisor_step(torus->side, delta / 4.0) : delta / 4.0;
  } else if (torus) {
    stride = divisor_step(torus->side, stride);
  }
  if (stride >= delta / 2.0)
    throw BadParam("candidate stride must be below delta/2 for a saturated net");
  net.stride = stride;

  std::vector<Vec> candidates;
  if (torus) {
    candidates = torus_lattice(*torus, stride);
  } else {
    const Body& body = std::get<Body>(host);
    if (body.empty()) throw BadParam("net host is empty");
    const Box box = body.bbox().expanded(stride / 2.0);
    std::vector<long> lo(dim), count(dim);
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      lo[i] = static_cast<long>(std::ceil(box.lo[ii] / stride - 1e-9));
      count[i] = static_cast<long>(std::floor(box.hi[ii] / stride + 1e-9)) - lo[i] + 1;
      total *= static_cast<std::size_t>(std::max(1L, count[i]));
      if (total > 50'000'000) throw SizeLimitExceeded("net candidate lattice is too large");
    }
    for (std::size_t f = 0; f < total; ++f) {
      Vec p(static_cast<Eigen::Index>(dim));
      std::size_t rest = f;
      for (std::size_t i = 0; i < dim; ++i) {
        const auto c = static_cast<std::size_t>(std::max(1L, count[i]));
        p[static_cast<Eigen::Index>(i)] = static_cast<double>(lo[i] + static_cast<long>(rest % c)) * stride;
        rest /= c;
      }
      candidates.push_back(std::move(p));
    }
  }
  Engine engine = make_stream(seed, "net");
  shuffle(std::span<Vec>(candidates), engine);

  NetBuilder builder(net, dim);
  for (const Vec& c : candidates)
    if (builder.nearest(c, delta) >= delta) builder.add(c);

  const auto radius = euclidean_radius(gauge);
  bool exact = false;
  if (torus && radius && options.fill_holes && dim <= 2) {
    const double r = delta * *radius;
    if (dim == 1) {
      fill_gaps_1d(builder, *torus, r);
    } else {
      fill_holes_2d(builder, *torus, r, delta);
      grid_check_2d(builder, *torus, r, delta);
    }
    exact = true;
  }
  net.points = builder.points();
  if (exact) {
    net.covering_radius = delta;
  } else {
    double half = 0.0;
    for_each_shift(dim, 1, [&](const std::vector<int>& k) {
      Vec v(static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = 0.5 * stride * (k[i] == 0 ? 1 : k[i]);
      half = std::max(half, gauge ? gauge_norm(*gauge, v) : v.norm());
    });
    net.covering_radius = delta + half;
  }
  return net;
}

CoverInstance build_translate_cover_instance(const Body& l_minus_t, const PointNet& lambda,
                                             const std::vector<Vec>& centers,
                                             const std::optional<TorusRegion>& region) {
  if (lambda.points.empty()) return CoverInstance::build(0, std::vector<std::vector<ElementId>>(centers.size()));
  const std::size_t dim = static_cast<std::size_t>(lambda.points.front().size());
  if (l_minus_t.dim() != dim) throw DimensionMismatch("candidate body and net dimensions differ");
  std::vector<std::vector<ElementId>> sets(centers.size());
  if (!l_minus_t.empty()) {
    const Box box = l_minus_t.bbox();
    if (region) {
      if (((box.hi - box.lo).array() >= region->side).any())
        throw BadParam("body does not fit in the torus fundamental domain");
    }
    const double cell = std::max(lambda.delta, (box.hi - box.lo).maxCoeff() / 8.0);
    SpatialHash hash(dim, cell, region ? std::optional<double>(region->side) : std::nullopt);
    for (std::size_t i = 0; i < lambda.points.size(); ++i)
      hash.insert(static_cast<std::uint32_t>(i), span_of(lambda.points[i]));
    parallel_for(centers.size(), 64, [&](std::size_t begin, std::size_t end) {
      Vec lo(static_cast<Eigen::Index>(dim)), hi(static_cast<Eigen::Index>(dim)), d(static_cast<Eigen::Index>(dim));
      for (std::size_t c = begin; c < end; ++c) {
        const Vec& x = centers[c];
        lo = x + box.lo;
        hi = x + box.hi;
        auto& out = sets[c];
        hash.query_box(span_of(lo), span_of(hi), [&](std::uint32_t id) {
          d = lambda.points[id] - x;
          if (region) {
            for (std::size_t i = 0; i < dim; ++i) {
              const auto ii = static_cast<Eigen::Index>(i);
              double r = std::fmod(d[ii] - box.lo[ii], region->side);
              if (r < 0.0) r += region->side;
              d[ii] = box.lo[ii] + r;
            }
          }
          if (l_minus_t.contains(d)) out.push_back(id);
        });
      }
    });
  }
  auto instance = CoverInstance::build(lambda.points.size(), std::move(sets));
  if (!instance.feasible()) {
    throw InfeasibleInstance(std::to_string(instance.uncovered_elements().size()) +
                             " net points lie in no candidate translate; use denser centers");
  }
  return instance;
}

CoverInstance build_translate_cover_instance(const Body& k, const Body& l, const Body& t,
                                             const PointNet& lambda,
                                             const std::vector<Vec>& centers,
                                             const std::optional<TorusRegion>& region) {
  if (k.dim() != l.dim() || l.dim() != t.dim()) throw DimensionMismatch("K, L and T dimensions differ");
  return build_translate_cover_instance(minkowski_difference(l, t), lambda, centers, region);
}

std::uint64_t count_uncovered(const Body& k, const TorusRegion& region,
                              const std::vector<Vec>& centers, double grid_step,
                              std::uint64_t* total, int threads) {
  const std::size_t n = region.dim;
  if (k.dim() != n) throw DimensionMismatch("body and torus dimensions differ");
  const double h = divisor_step(region.side, grid_step);
  const auto m = static_cast<long>(std::llround(region.side / h));
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (cells > 400'000'000 / static_cast<std::size_t>(m)) throw SizeLimitExceeded("certification grid is too large");
    cells *= static_cast<std::size_t>(m);
  }
  if (total) *total = cells;
  std::vector<std::uint8_t> covered(cells, 0);
  if (!k.empty()) {
    const Box box = k.bbox();
    // Threads own disjoint slabs of the last axis, so no cell is shared.
    const auto slabs = static_cast<std::size_t>(m);
    parallel_for(slabs, 16, [&](std::size_t begin, std::size_t end) {
      std::vector<long> first(n), count(n), idx(n);
      Vec rel(static_cast<Eigen::Index>(n));
      for (const Vec& x : centers) {
        std::size_t inner = 1;
        bool hit = true;
        for (std::size_t i = 0; i < n; ++i) {
          const auto ii = static_cast<Eigen::Index>(i);
          first[i] = static_cast<long>(std::ceil((x[ii] + box.lo[ii]) / h - 1e-9));
          count[i] = static_cast<long>(std::floor((x[ii] + box.hi[ii]) / h + 1e-9)) - first[i] + 1;
          count[i] = std::min(count[i], m);
          if (count[i] <= 0) hit = false;
          else if (i + 1 < n) inner *= static_cast<std::size_t>(count[i]);
        }
        if (!hit) continue;
        for (long j = first[n - 1]; j < first[n - 1] + count[n - 1]; ++j) {
          long last = j % m;
          if (last < 0) last += m;
          if (static_cast<std::size_t>(last) < begin || static_cast<std::size_t>(last) >= end) continue;
          idx[n - 1] = j;
          for (std::size_t f = 0; f < inner; ++f) {
            std::size_t rest = f;
            for (std::size_t i = 0; i + 1 < n; ++i) {
              idx[i] = first[i] + static_cast<long>(rest % static_cast<std::size_t>(count[i]));
              rest /= static_cast<std::size_t>(count[i]);
            }
            std::size_t flat = 0, stride = 1;
            for (std::size_t i = 0; i < n; ++i) {
              long w = idx[i] % m;
              if (w < 0) w += m;
              flat += static_cast<std::size_t>(w) * stride;
              stride *= static_cast<std::size_t>(m);
              rel[static_cast<Eigen::Index>(i)] = static_cast<double>(idx[i]) * h - x[static_cast<Eigen::Index>(i)];
            }
            if (!covered[flat] && k.contains(rel)) covered[flat] = 1;
          }
        }
      }
    }, threads);
  }
  return static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), 0));
}

CoverReport torus_cover_density(const Body& k, const TorusRegion& region, double delta,
                                std::uint64_t seed, const TorusCoverOptions& options) {
  if (k.dim() != region.dim) throw DimensionMismatch("body and torus dimensions differ");
  if (!(delta > 0.0)) throw BadParam("delta must be positive");
  if (!(region.side > 0.0)) throw BadParam("torus side must be positive");
  if (k.empty()) throw InfeasibleInstance("body is empty");
  const std::size_t n = region.dim;

  CoverReport report;
  report.kind = "torus";
  report.dim = n;
  report.seed = seed;
  report.delta = delta;
  report.region_measure = region.volume();
  report.body_measure = measure_volume(k);

  double grid = options.grid_step;
  if (grid <= 0.0) grid = divisor_step(region.side, delta / 8.0);
  else if (grid > delta / 8.0 * (1.0 + 1e-12)) throw BadParam("certification grid step must be <= delta/8");
  grid = divisor_step(region.side, grid);
  report.grid_resolution = grid;

  const Box box = k.bbox();
  bool fills = false;
  if (k.is_polytope() && ((box.hi - box.lo).array() >= region.side).all()) {
    // A polytope containing every corner of a fundamental domain covers the
    // torus with one translate.
    fills = true;
    for_each_shift(n, 1, [&](const std::vector<int>& s) {
      Vec corner = box.lo;
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] > 0) corner[static_cast<Eigen::Index>(i)] += region.side;
      if (!k.contains(corner)) fills = false;
    });
  }

  std::vector<Vec> chosen;
  if (fills) {
    chosen.push_back(Vec::Zero(static_cast<Eigen::Index>(n)));
    report.notes.push_back("body contains a fundamental domain; one translate covers the torus");
    report.instance.greedy_size = 1;
    report.instance.ls_holds = true;
  } else {
    PointNet net = saturated_packing_net(region, delta, std::nullopt, seed, options.net);
    report.net_radius = net.covering_radius;
    report.net = net.points;
    const Body inner = inner_parallel_body(k, net.covering_radius, GridOptions{0.0, options.threads});
    if (inner.empty())
      throw InfeasibleInstance("K_{-r} is empty for the net covering radius; use a smaller delta");
    const double stride = options.center_stride > 0.0 ? options.center_stride
                                                      : divisor_step(region.side, delta / 4.0);
    const auto centers = torus_lattice(region, stride);
    const auto instance = build_translate_cover_instance(inner, net, centers, region);
    const auto selection = greedy_cover(instance);
    if (!covers_all(instance, selection.chosen))
      throw InvariantViolation("greedy selection does not cover the net");

    auto& st = report.instance;
    st.ground = instance.num_elements();
    st.candidates = instance.num_candidates();
    st.max_deg = instance.max_candidate_size();
    st.greedy_size = selection.chosen.size();
    std::size_t min_cover = std::numeric_limits<std::size_t>::max();
    for (ElementId e = 0; e < instance.num_elements(); ++e)
      min_cover = std::min(min_cover, instance.containing(e).size());
    st.tau_star_lower = static_cast<double>(st.ground) / static_cast<double>(st.max_deg);
    st.tau_star_upper = static_cast<double>(st.candidates) / static_cast<double>(min_cover);
    const double log_factor = 1.0 + std::log(static_cast<double>(st.max_deg));
    st.ls_bound_lower = log_factor * st.tau_star_lower;
    if (st.ground <= kDenseLpLimit && st.candidates <= kDenseLpLimit)
      st.tau_star = fractional_cover_lp(instance).total;
    st.ls_holds = static_cast<double>(st.greedy_size) < st.ls_bound_lower ||
                  (st.tau_star && static_cast<double>(st.greedy_size) < log_factor * *st.tau_star);
    if (!st.ls_holds) report.notes.push_back("Lovász–Stein inequality not certified by the uniform dual bound");

    // Net points in one candidate are >= delta apart, so their delta/2 balls
    // are disjoint and lie in a translate of K_{-(r - delta/2)}.
    const double half = 0.5 * delta * (1.0 - kPackingSlack);
    const auto outer = exact_volume(inner_parallel_body(k, net.covering_radius - half));
    const auto ball = exact_volume(Body::ball(Vec::Zero(static_cast<Eigen::Index>(n)), half));
    if (outer && ball) {
      st.max_deg_bound = *outer / *ball;
      if (static_cast<double>(st.max_deg) > *st.max_deg_bound * (1.0 + 1e-9))
        throw InvariantViolation("candidate cardinality exceeds the packing volume bound");
    }
    for (CandidateId c : selection.chosen) chosen.push_back(centers[c]);
  }

  std::uint64_t total = 0;
  report.uncovered_points = count_uncovered(k, region, chosen, grid, &total, options.threads);
  report.certification_points = total;
  report.valid = report.uncovered_points == 0;
  report.chosen_centers = std::move(chosen);
  report.density = static_cast<double>(report.chosen_centers.size()) * report.body_measure /
                   report.region_measure;
  if (report.valid && report.density < 1.0 - 1e-9)
    throw InvariantViolation("certified cover has density below 1");

  if (options.with_bounds) {
    try {
      report.bounds["renbyanything"] = renbyanything_bound(k, default_delta_grid(k)).value;
    } catch (const InfeasibleInstance&) {
      report.notes.push_back("renbyanything bound infeasible on the default delta grid");
    }
    if (n >= 2) report.bounds["rogers"] = rogers_bound(static_cast<int>(n)).value;
  }
  return report;
}

}  // namespace covering
