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

#include "covering/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "covering/bounds.hpp"
#include "covering/errors.hpp"
#include "covering/parallel.hpp"
#include "covering/rng.hpp"
#include "spatial_hash.hpp"

namespace covering {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPackingSlack = 1e-9;

std::span<const double> span_of(const Vec3& v) { return {v.data(), 3}; }

// Adaptive Gauss–Kronrod (7, 15) on [a, b].
template <typename F>
double gk15(const F& f, double a, double b, double& error) {
  static constexpr double xk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double s = f(c - h * xk[i]) + f(c + h * xk[i]);
    k += wk[i] * s;
    if (i % 2 == 1) g += wg[i / 2] * s;
  }
  error = std::abs((k - g) * h);
  return k * h;
}

// Globally adaptive: keeps splitting the piece with the largest error
// estimate until the summed estimate drops below rel_tol * |total|.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol, std::size_t max_pieces = 400) {
  struct Piece {
    double a, b, value, error;
  };
  std::vector<Piece> pieces;
  double err = 0.0;
  const double v = gk15(f, a, b, err);
  pieces.push_back({a, b, v, err});
  while (pieces.size() < max_pieces) {
    double total = 0.0, total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      total += pieces[i].value;
      total_err += pieces[i].error;
      if (pieces[i].error > pieces[worst].error) worst = i;
    }
    if (total_err <= rel_tol * std::abs(total)) break;
    const Piece p = pieces[worst];
    const double m = 0.5 * (p.a + p.b);
    double e1 = 0.0, e2 = 0.0;
    const double v1 = gk15(f, p.a, m, e1), v2 = gk15(f, m, p.b, e2);
    pieces[worst] = {p.a, m, v1, e1};
    pieces.push_back({m, p.b, v2, e2});
  }
  double total = 0.0;
  for (const Piece& p : pieces) total += p.value;
  return total;
}

// Integral over [0, phi] of (sin t / sin phi)^(n-1), phi in (0, pi/2].
double scaled_sine_integral(int n, double phi) {
  const double log_top = std::log(std::sin(phi));
  const double p = n - 1;
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(p * (std::log(std::sin(t)) - log_top));
  };
  // Evaluating the integrand carries a relative error of about n * eps,
  // which bounds the attainable accuracy.
  const double noise = 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  return integrate(f, 0.0, phi, std::max(1e-15, noise));
}

Vec3 to3(const Vec& v) { return Vec3(v[0], v[1], v[2]); }

// Unit vector orthogonal to u.
Vec3 orthogonal(const Vec3& u) {
  const Vec3 axis = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return u.cross(axis).normalized();
}

Vec3 uniform_on_sphere(Engine& engine) {
  Vec3 g;
  do {
    g << standard_normal(engine), standard_normal(engine), standard_normal(engine);
  } while (g.squaredNorm() < 1e-24);
  return g.normalized();
}

double chord_of(double angle) { return 2.0 * std::sin(0.5 * std::min(angle, kPi)); }

std::vector<Vec3> fibonacci_sphere(std::size_t count) {
  std::vector<Vec3> out(count);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    out[i] = Vec3(r * std::cos(a), r * std::sin(a), z);
  }
  return out;
}

class CapNet {
 public:
  explicit CapNet(double delta) : chord_(chord_of(delta)), hash_(3, std::max(chord_, 1e-6)) {}

  const std::vector<Vec3>& points() const { return points_; }
  void add(const Vec3& p) {
    hash_.insert(static_cast<std::uint32_t>(points_.size()), span_of(p));
    points_.push_back(p);
  }
  // Smallest chord from x to the net within `reach` (else +inf).
  double nearest(const Vec3& x, double reach) const {
    double best = std::numeric_limits<double>::infinity();
    each_near(x, reach, [&](std::uint32_t id) { best = std::min(best, (points_[id] - x).norm()); });
    return best;
  }
  template <typename Fn>
  void each_near(const Vec3& x, double reach, Fn&& fn) const {
    const Vec3 lo = x.array() - reach, hi = x.array() + reach;
    hash_.query_box(span_of(lo), span_of(hi), fn);
  }
  double chord() const { return chord_; }

 private:
  double chord_;
  detail::SpatialHash hash_;
  std::vector<Vec3> points_;
};

// Adds intersection points of the delta-circles around net points (and a
// point on every isolated circle) while they keep angle >= delta to the net.
void fill_cap_holes(CapNet& net, double delta) {
  const double accept = net.chord() * (1.0 - kPackingSlack);
  const double cos_d = std::cos(delta);
  const double pair_reach = chord_of(2.0 * delta);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < net.points().size(); ++i) {
      const Vec3 ui = net.points()[i];
      std::vector<Vec3> proposals;
      bool isolated = true;
      net.each_near(ui, pair_reach, [&](std::uint32_t j) {
        if (j == i) return;
        const Vec3& uj = net.points()[j];
        const double c = ui.dot(uj);
        if (c < std::cos(std::min(2.0 * delta, kPi)) - 1e-15 || c <= -1.0 + 1e-12) return;
        isolated = false;
        const Vec3 w = ui.cross(uj);
        const double alpha = cos_d / (1.0 + c);
        const double rest = 1.0 - 2.0 * alpha * alpha * (1.0 + c);
        const double denom = 1.0 - c * c;
        if (denom <= 0.0) return;
        const double beta = std::sqrt(std::max(0.0, rest / denom));
        proposals.push_back((alpha * (ui + uj) + beta * w).normalized());
        proposals.push_back((alpha * (ui + uj) - beta * w).normalized());
      });
      if (isolated) {
        proposals.push_back((std::cos(delta) * ui + std::sin(delta) * orthogonal(ui)).normalized());
      }
      for (const Vec3& q : proposals) {
        if (net.nearest(q, net.chord()) >= accept) {
          net.add(q);
          changed = true;
        }
      }
    }
  }
}

// Circumscribed balls used by Welzl's algorithm.
struct Sphere3 {
  Vec3 c = Vec3::Zero();
  double r = -1.0;
  bool contains(const Vec3& p) const { return r >= 0.0 && (p - c).norm() <= r * (1.0 + 1e-12) + 1e-15; }
};

Sphere3 ball_of(const Vec3& a) { return {a, 0.0}; }
Sphere3 ball_of(const Vec3& a, const Vec3& b) { return {0.5 * (a + b), 0.5 * (a - b).norm()}; }
Sphere3 ball_of(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = b - a, v = c - a, w = u.cross(v);
  const double w2 = w.squaredNorm();
  if (w2 < 1e-30) {
    // Collinear: the widest pair decides.
    Sphere3 s = ball_of(a, b);
    for (const Sphere3& t : {ball_of(a, c), ball_of(b, c)})
      if (t.r > s.r) s = t;
    return s;
  }
  const Vec3 off = (u.squaredNorm() * v.cross(w) + v.squaredNorm() * w.cross(u)) / (2.0 * w2);
  return {a + off, off.norm()};
}
Sphere3 ball_of(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  Eigen::Matrix3d m;
  m.row(0) = 2.0 * (b - a);
  m.row(1) = 2.0 * (c - a);
  m.row(2) = 2.0 * (d - a);
  if (std::abs(m.determinant()) < 1e-14) {
    Sphere3 s = ball_of(a, b, c);
    for (const Sphere3& t : {ball_of(a, b, d), ball_of(a, c, d), ball_of(b, c, d)})
      if (t.r > s.r) s = t;
    return s;
  }
  const Vec3 rhs(b.squaredNorm() - a.squaredNorm(), c.squaredNorm() - a.squaredNorm(),
                 d.squaredNorm() - a.squaredNorm());
  const Vec3 center = m.lu().solve(rhs);
  return {center, (a - center).norm()};
}

Sphere3 min_ball(const std::vector<Vec3>& p) {
  Sphere3 s = ball_of(p[0]);
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (s.contains(p[i])) continue;
    s = ball_of(p[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (s.contains(p[j])) continue;
      s = ball_of(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (s.contains(p[k])) continue;
        s = ball_of(p[i], p[j], p[k]);
        for (std::size_t l = 0; l < k; ++l) {
          if (s.contains(p[l])) continue;
          s = ball_of(p[i], p[j], p[k], p[l]);
        }
      }
    }
  }
  return s;
}

}  // namespace

Cap make_cap(Vec center, double phi) {
  if (center.size() < 2) throw BadParam("cap center needs at least 2 coordinates");
  if (std::abs(center.norm() - 1.0) > 1e-12) throw BadParam("cap center must be a unit vector");
  if (!(phi > 0.0) || phi > kPi / 2.0 + 1e-15) throw BadParam("cap radius must lie in (0, pi/2]");
  return Cap{std::move(center), phi};
}

SphericalBody SphericalBody::cap(Cap c) {
  const int n = static_cast<int>(c.center.size()) - 1;
  c = make_cap(std::move(c.center), c.radius);
  return SphericalBody(n, std::move(c), false);
}

SphericalBody SphericalBody::indicator(std::function<bool(const Vec3&)> oracle, double resolution) {
  if (!oracle) throw BadParam("indicator needs an oracle");
  if (!(resolution > 0.0)) throw BadParam("indicator resolution must be positive");
  return SphericalBody(2, CapIndicator{std::move(oracle), resolution}, false);
}

SphericalBody SphericalBody::empty(int n) {
  return SphericalBody(n, CapIndicator{[](const Vec3&) { return false; }, 0.01}, true);
}

bool SphericalBody::contains(const Vec3& u) const {
  if (empty_) return false;
  if (n_ != 2) throw DimensionMismatch("point membership is implemented on S^2 only");
  if (const auto* c = std::get_if<Cap>(&shape_))
    return angle_between(to3(c->center), u) <= c->radius + 1e-12;
  return std::get<CapIndicator>(shape_).oracle(u);
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

double cap_measure(int n, double phi) {
  if (n < 1) throw BadParam("cap measure needs n >= 1");
  if (!(phi >= 0.0) || phi > kPi) throw BadParam("cap radius must lie in [0, pi]");
  if (phi == 0.0) return 0.0;
  if (phi == kPi) return 1.0;
  if (n == 1) return phi / kPi;
  if (phi > kPi / 2.0) return 1.0 - cap_measure(n, kPi - phi);
  if (phi == kPi / 2.0) return 0.5;
  const double half = scaled_sine_integral(n, kPi / 2.0);
  const double part = scaled_sine_integral(n, phi);
  return 0.5 * std::exp(std::log(part) + (n - 1) * std::log(std::sin(phi)) - std::log(half));
}

double spherical_measure(const SphericalBody& k, std::uint64_t samples, std::uint64_t seed) {
  if (k.empty()) return 0.0;
  if (const auto* c = std::get_if<Cap>(&k.shape())) return cap_measure(k.dim(), c->radius);
  if (samples == 0) throw BadParam("Monte Carlo measure needs samples > 0");
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      Engine eng = make_stream(seed, "mc", c);
      const std::uint64_t todo = std::min(kChunk, samples - c * kChunk);
      for (std::uint64_t s = 0; s < todo; ++s) hits[c] += k.contains(uniform_on_sphere(eng)) ? 1 : 0;
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(samples);
}

CapSizeCheck bw_bound_check(int n, double phi, double t) {
  if (n < 1) throw BadParam("cap size check needs n >= 1");
  if (!(phi > 0.0) || !(phi < kPi / 2.0)) throw BadParam("cap size check needs 0 < phi < pi/2");
  CapSizeCheck r;
  const double nn = n;
  r.omega = cap_measure(n, phi);
  const double sn = std::pow(std::sin(phi), nn);
  r.lower_holds = r.omega > sn / std::sqrt(2.0 * kPi * (nn + 1.0));
  if (phi <= std::acos(1.0 / std::sqrt(nn + 1.0)))
    r.upper_holds = r.omega < sn / (std::sqrt(2.0 * kPi * nn) * std::cos(phi));
  if (t > 1.0 && t < kPi / (2.0 * phi))
    r.scaling_holds = cap_measure(n, t * phi) < std::pow(t, nn) * r.omega;
  return r;
}

SphericalBody spherical_erosion(const SphericalBody& k, double delta) {
  if (delta < 0.0) throw BadParam("erosion radius must be nonnegative");
  if (delta == 0.0 || k.empty()) return k;
  if (const auto* c = std::get_if<Cap>(&k.shape())) {
    if (c->radius <= delta) return SphericalBody::empty(k.dim());
    return SphericalBody::cap(Cap{c->center, c->radius - delta});
  }
  const auto& ind = std::get<CapIndicator>(k.shape());
  const double res = ind.resolution;
  const int rings = std::max(1, static_cast<int>(std::ceil(delta / res)));
  // Offsets (angle, direction angle) sampling the closed cap C(o, delta).
  std::vector<std::pair<double, double>> offsets;
  for (int j = 1; j <= rings; ++j) {
    const double a = delta * j / rings;
    const int dirs = std::max(8, static_cast<int>(std::ceil(2.0 * kPi * std::sin(a) / res)));
    for (int q = 0; q < dirs; ++q) offsets.emplace_back(a, 2.0 * kPi * q / dirs);
  }
  auto oracle = ind.oracle;
  auto eroded = [oracle, offsets](const Vec3& u) {
    if (!oracle(u)) return false;
    const Vec3 e1 = orthogonal(u), e2 = u.cross(e1);
    for (const auto& [a, b] : offsets) {
      const Vec3 p = std::cos(a) * u + std::sin(a) * (std::cos(b) * e1 + std::sin(b) * e2);
      if (!oracle(p)) return false;
    }
    return true;
  };
  // Probe for emptiness on a Fibonacci sample at the body's resolution.
  const auto probes = fibonacci_sphere(static_cast<std::size_t>(
      std::min(2.0e6, std::ceil(4.0 / cap_measure(2, std::max(res, 1e-3))))));
  bool any = false;
  for (const Vec3& p : probes)
    if (eroded(p)) {
      any = true;
      break;
    }
  if (!any) return SphericalBody::empty(2);
  return SphericalBody::indicator(eroded, res);
}

std::vector<Vec3> saturated_cap_packing(int n, double delta, std::uint64_t seed,
                                        const CapPackingOptions& options) {
  if (n != 2) throw BadParam("cap packings are constructed on S^2 only");
  if (!(delta > 0.0)) throw BadParam("packing radius must be positive");
  if (delta >= kPi) return {Vec3::UnitZ()};
  std::size_t count = options.candidates;
  if (count == 0) count = static_cast<std::size_t>(std::ceil(16.0 / cap_measure(2, delta / 4.0)));
  if (count > 50'000'000) throw SizeLimitExceeded("too many packing candidates for this delta");
  auto candidates = fibonacci_sphere(count);
  Engine engine = make_stream(seed, "net");
  shuffle(std::span<Vec3>(candidates), engine);

  CapNet net(delta);
  for (const Vec3& c : candidates)
    if (net.nearest(c, net.chord()) >= net.chord()) net.add(c);
  if (!options.fill_holes) return net.points();

  fill_cap_holes(net, delta);
  // Safety sweep on a denser Fibonacci set; any stray hole point keeps the
  // packing, so it is inserted and the holes are refilled.
  const auto probes = fibonacci_sphere(static_cast<std::size_t>(
      std::min(4.0e6, std::ceil(4.0 / cap_measure(2, delta / 4.0)))));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Vec3& p : probes) {
      if (net.nearest(p, net.chord()) > net.chord()) {
        net.add(p);
        changed = true;
      }
    }
    if (changed) fill_cap_holes(net, delta);
  }
  return net.points();
}

Mat3 random_rotation(Engine& engine) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = standard_normal(engine);
  Eigen::HouseholderQR<Mat3> qr(g);
  Mat3 q = qr.householderQ();
  const Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Mat3 rotation_between(const Vec3& from, const Vec3& to) {
  const Vec3 v = from.cross(to);
  const double s = v.norm(), c = from.dot(to);
  if (s < 1e-14) {
    if (c > 0.0) return Mat3::Identity();
    const Vec3 axis = orthogonal(from);
    return 2.0 * axis * axis.transpose() - Mat3::Identity();
  }
  Mat3 vx;
  vx << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return Mat3::Identity() + vx + vx * vx * ((1.0 - c) / (s * s));
}

SphereInstance build_sphere_instance(const SphericalBody& k, double delta,
                                     std::size_t n_rot_candidates, std::uint64_t seed,
                                     const SphereCoverOptions& options) {
  if (k.dim() != 2) throw BadParam("sphere coverings are constructed on S^2 only");
  if (!(delta > 0.0)) throw BadParam("delta must be positive");
  const SphericalBody inner = spherical_erosion(k, delta);
  if (inner.empty()) throw InfeasibleInstance("K_{-delta} is empty; use a smaller delta");

  SphereInstance out;
  out.net = saturated_cap_packing(2, delta, seed, options.packing);
  Engine engine = make_stream(seed, "rotations");
  for (std::size_t i = 0; i < n_rot_candidates; ++i) out.rotations.push_back(random_rotation(engine));
  const auto* cap = std::get_if<Cap>(&inner.shape());
  if (cap && options.net_centered) {
    const Vec3 u = to3(cap->center);
    for (const Vec3& p : out.net) out.rotations.push_back(rotation_between(u, p));
  }
  if (out.rotations.empty()) throw InfeasibleInstance("no rotation candidates; increase n_rot_candidates");

  std::vector<std::vector<ElementId>> sets(out.rotations.size());
  if (cap) {
    detail::SpatialHash hash(3, std::max(chord_of(delta), 1e-6));
    for (std::size_t i = 0; i < out.net.size(); ++i)
      hash.insert(static_cast<std::uint32_t>(i), span_of(out.net[i]));
    const double reach = chord_of(cap->radius) * (1.0 + 1e-9);
    const Vec3 u = to3(cap->center);
    parallel_for(out.rotations.size(), 64, [&](std::size_t begin, std::size_t end) {
      for (std::size_t c = begin; c < end; ++c) {
        const Vec3 center = out.rotations[c] * u;
        const Vec3 lo = center.array() - reach, hi = center.array() + reach;
        hash.query_box(span_of(lo), span_of(hi), [&](std::uint32_t id) {
          if (angle_between(center, out.net[id]) <= cap->radius) sets[c].push_back(id);
        });
      }
    }, options.threads);
  } else {
    parallel_for(out.rotations.size(), 4, [&](std::size_t begin, std::size_t end) {
      for (std::size_t c = begin; c < end; ++c) {
        const Mat3 inv = out.rotations[c].transpose();
        for (std::size_t i = 0; i < out.net.size(); ++i)
          if (inner.contains(inv * out.net[i])) sets[c].push_back(static_cast<ElementId>(i));
      }
    }, options.threads);
  }
  out.instance = CoverInstance::build(out.net.size(), std::move(sets));
  if (!out.instance.feasible()) {
    throw InfeasibleInstance(std::to_string(out.instance.uncovered_elements().size()) +
                             " net points lie in no rotated copy; increase n_rot_candidates");
  }
  return out;
}

CoverReport sphere_cover_greedy(const SphericalBody& k, double delta, std::size_t n_rot_candidates,
                                std::uint64_t seed, const SphereCoverOptions& options) {
  auto built = build_sphere_instance(k, delta, n_rot_candidates, seed, options);
  const auto& instance = built.instance;
  const auto selection = greedy_cover(instance);
  if (!covers_all(instance, selection.chosen))
    throw InvariantViolation("greedy selection does not cover the net");

  CoverReport report;
  report.kind = "sphere";
  report.dim = 2;
  report.seed = seed;
  report.delta = delta;
  report.net_radius = options.packing.fill_holes ? delta : 0.0;
  for (const Vec3& p : built.net) report.net.push_back(p);
  report.body_measure = spherical_measure(k, 1'000'000, seed);
  report.region_measure = 1.0;

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

  Vec3 reference = Vec3::UnitZ();
  if (const auto* c = std::get_if<Cap>(&k.shape())) reference = to3(c->center);
  std::vector<Mat3> chosen;
  for (CandidateId c : selection.chosen) {
    chosen.push_back(built.rotations[c]);
    report.chosen_centers.push_back(built.rotations[c] * reference);
  }
  report.chosen_rotations = chosen;

  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t samples = options.validation_samples;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> missed(chunks, 0);
  parallel_for(chunks, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      Engine eng = make_stream(seed, "mc", c);
      const std::uint64_t todo = std::min(kChunk, samples - c * kChunk);
      for (std::uint64_t s = 0; s < todo; ++s) {
        const Vec3 p = uniform_on_sphere(eng);
        bool hit = false;
        for (const Mat3& a : chosen)
          if (k.contains(a.transpose() * p)) {
            hit = true;
            break;
          }
        if (!hit) ++missed[c];
      }
    }
  }, options.threads);
  for (auto m : missed) report.uncovered_points += m;
  report.certification_points = samples;
  report.valid = report.uncovered_points == 0;
  report.density = static_cast<double>(chosen.size()) * report.body_measure;
  if (report.valid && report.density < 1.0 - 1e-9)
    throw InvariantViolation("certified cover has density below 1");

  try {
    report.bounds["spherebyanything"] = spherebyanything_bound(k, default_sphere_delta_grid(k)).value;
  } catch (const InfeasibleInstance&) {
    report.notes.push_back("spherebyanything bound infeasible on the default delta grid");
  }
  if (const auto* c = std::get_if<Cap>(&k.shape()); c && c->radius < kPi / 2.0) {
    report.bounds["spherebyconvex"] =
        spherebyconvex_bound(2, cap_measure(2, c->radius), c->radius, default_kappa_grid()).value;
  }
  return report;
}

Circumcap spherical_circumradius(const std::vector<Vec3>& points) {
  if (points.empty()) throw BadParam("circumradius of an empty point set");
  for (const Vec3& p : points)
    if (std::abs(p.norm() - 1.0) > 1e-9) throw BadParam("circumradius needs unit vectors");
  const Sphere3 ball = min_ball(points);
  if (ball.c.norm() < 1e-12) throw NotInHemisphere("points are not contained in an open hemisphere");
  Circumcap out;
  out.center = ball.c.normalized();
  for (const Vec3& p : points) {
    if (out.center.dot(p) <= 0.0) throw NotInHemisphere("points are not contained in an open hemisphere");
    out.rho = std::max(out.rho, angle_between(out.center, p));
  }
  return out;
}

std::vector<Cap> read_caps_csv(std::istream& in) {
  std::vector<Cap> caps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "ux,uy,uz,phi") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double v[4];
    for (double& x : v)
      if (!(ss >> x)) throw ParseError("cap csv line " + std::to_string(lineno) + ": expected 4 numbers");
    Vec c(3);
    c << v[0], v[1], v[2];
    try {
      caps.push_back(make_cap(c, v[3]));
    } catch (const BadParam& e) {
      throw ParseError("cap csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return caps;
}

void write_caps_csv(std::ostream& out, const std::vector<Cap>& caps) {
  out << "ux,uy,uz,phi\n";
  out.precision(17);
  for (const Cap& c : caps)
    out << c.center[0] << ',' << c.center[1] << ',' << c.center[2] << ',' << c.radius << '\n';
}

}  // namespace covering
