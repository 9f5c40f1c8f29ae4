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

#include "covering/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "covering/errors.hpp"
#include "covering/parallel.hpp"

namespace covering {

namespace {

constexpr std::size_t kGrain = 1 << 14;

// Iterates rows (lines along axis 0) of a lattice with the given lower
// corner and shape. Calls fn(row_id, rest_index) where rest_index holds the
// absolute lattice index for axes 1..n-1 (entry 0 unused).
template <typename Fn>
void for_each_row(const std::vector<long>& lo,
                  const std::vector<std::size_t>& shape, Fn&& fn) {
  const std::size_t n = shape.size();
  std::size_t rows = 1;
  for (std::size_t i = 1; i < n; ++i) rows *= shape[i];
  if (shape.empty() || shape[0] == 0) return;
  std::vector<long> idx(n, 0);
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    for (std::size_t i = 1; i < n; ++i) {
      idx[i] = lo[i] + static_cast<long>(rest % shape[i]);
      rest /= shape[i];
    }
    fn(row, idx);
  }
}

// Row id of the row with absolute indices idx[1..] (offset by `shift`), or
// npos when it falls outside the raster.
std::size_t row_of(const Raster& r, const std::vector<long>& idx,
                   const std::vector<long>& shift, long sign) {
  std::size_t row = 0, mult = 1;
  for (std::size_t i = 1; i < r.dim(); ++i) {
    const long k = idx[i] + sign * shift[i] - r.lo()[i];
    if (k < 0 || k >= static_cast<long>(r.shape()[i]))
      return static_cast<std::size_t>(-1);
    row += static_cast<std::size_t>(k) * mult;
    mult *= r.shape()[i];
  }
  return row;
}

struct Run {
  std::vector<long> rest;  // absolute index on axes 1..n-1
  long a = 0;              // first axis-0 index
  long b = 0;              // last axis-0 index
};

std::vector<Run> runs_of(const Raster& t, std::vector<long>& tmin,
                         std::vector<long>& tmax) {
  const std::size_t n = t.dim();
  tmin.assign(n, std::numeric_limits<long>::max());
  tmax.assign(n, std::numeric_limits<long>::min());
  std::vector<Run> runs;
  const std::size_t w = t.shape().empty() ? 0 : t.shape()[0];
  for_each_row(t.lo(), t.shape(), [&](std::size_t row, const std::vector<long>& idx) {
    std::size_t j = 0;
    while (j < w) {
      if (!t.cell(row * w + j)) {
        ++j;
        continue;
      }
      std::size_t e = j;
      while (e + 1 < w && t.cell(row * w + e + 1)) ++e;
      Run run{idx, t.lo()[0] + static_cast<long>(j),
              t.lo()[0] + static_cast<long>(e)};
      for (std::size_t i = 1; i < n; ++i) {
        tmin[i] = std::min(tmin[i], idx[i]);
        tmax[i] = std::max(tmax[i], idx[i]);
      }
      tmin[0] = std::min(tmin[0], run.a);
      tmax[0] = std::max(tmax[0], run.b);
      runs.push_back(std::move(run));
      j = e + 1;
    }
  });
  return runs;
}

// prefix[row * (w + 1) + j] = number of cells with value `v` among the
// first j cells of the row.
std::vector<std::uint32_t> row_prefix(const Raster& r, std::uint8_t v) {
  const std::size_t w = r.shape().empty() ? 0 : r.shape()[0];
  const std::size_t rows = w == 0 ? 0 : r.size() / w;
  std::vector<std::uint32_t> p(rows * (w + 1), 0);
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t j = 0; j < w; ++j) {
      p[row * (w + 1) + j + 1] =
          p[row * (w + 1) + j] + ((r.cell(row * w + j) != 0) == (v != 0));
    }
  }
  return p;
}

}  // namespace

Raster::Raster(double step, std::vector<long> lo, std::vector<std::size_t> shape)
    : step_(step), lo_(std::move(lo)), shape_(std::move(shape)) {
  std::size_t total = shape_.empty() ? 0 : 1;
  for (std::size_t s : shape_) total *= s;
  cells_.assign(total, 0);
}

std::size_t Raster::count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](std::uint8_t c) { return c != 0; }));
}

bool Raster::at(std::span<const long> index) const {
  std::size_t flat = 0, mult = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    const long k = index[i] - lo_[i];
    if (k < 0 || k >= static_cast<long>(shape_[i])) return false;
    flat += static_cast<std::size_t>(k) * mult;
    mult *= shape_[i];
  }
  return cells_[flat] != 0;
}

bool Raster::contains(std::span<const double> x) const {
  long idx[8];
  for (std::size_t i = 0; i < dim(); ++i)
    idx[i] = static_cast<long>(std::lround(x[i] / step_));
  return at(std::span<const long>(idx, dim()));
}

void Raster::index_of(std::size_t flat, std::span<long> index) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    index[i] = lo_[i] + static_cast<long>(flat % shape_[i]);
    flat /= shape_[i];
  }
}

Vec Raster::point(std::size_t flat) const {
  Vec p(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    p[static_cast<Eigen::Index>(i)] =
        static_cast<double>(lo_[i] + static_cast<long>(flat % shape_[i])) * step_;
    flat /= shape_[i];
  }
  return p;
}

Box Raster::bbox() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Box b{Vec(n), Vec(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    b.lo[i] = static_cast<double>(lo_[u]) * step_ - 0.5 * step_;
    b.hi[i] = static_cast<double>(lo_[u] + static_cast<long>(shape_[u]) - 1) * step_ +
              0.5 * step_;
  }
  return b;
}

double Raster::volume() const {
  return static_cast<double>(count()) * std::pow(step_, static_cast<double>(dim()));
}

double Raster::volume_error() const {
  std::size_t boundary = 0;
  std::vector<std::size_t> stride(dim(), 1);
  for (std::size_t i = 1; i < dim(); ++i) stride[i] = stride[i - 1] * shape_[i - 1];
  std::vector<long> idx(dim());
  for (std::size_t f = 0; f < cells_.size(); ++f) {
    index_of(f, idx);
    bool differs = false;
    for (std::size_t i = 0; i < dim() && !differs; ++i) {
      const long k = idx[i] - lo_[i];
      for (long d : {-1L, 1L}) {
        const long kk = k + d;
        const bool outside = kk < 0 || kk >= static_cast<long>(shape_[i]);
        const bool nb =
            !outside && cells_[static_cast<std::size_t>(static_cast<long>(f) +
                                                        d * static_cast<long>(stride[i]))];
        if (nb != (cells_[f] != 0)) {
          differs = true;
          break;
        }
      }
    }
    if (differs) ++boundary;
  }
  return static_cast<double>(boundary) * std::pow(step_, static_cast<double>(dim()));
}

Raster rasterize(const Body& body, double step, int threads) {
  if (!(step > 0.0)) throw BadParam("raster step must be positive");
  const std::size_t n = body.dim();
  if (const auto* ind = std::get_if<Indicator>(&body.shape());
      ind && ind->raster && ind->raster->step() == step) {
    return *ind->raster;
  }
  std::vector<long> lo(n);
  std::vector<std::size_t> shape(n, 0);
  if (!body.empty()) {
    const Box& b = body.bbox();
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const long first = static_cast<long>(std::ceil(b.lo[ii] / step - 1e-9));
      const long last = static_cast<long>(std::floor(b.hi[ii] / step + 1e-9));
      lo[i] = first;
      shape[i] = last >= first ? static_cast<std::size_t>(last - first + 1) : 0;
    }
  }
  Raster r(step, lo, shape);
  parallel_for(
      r.size(), kGrain,
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(n);
        std::vector<long> idx(n);
        for (std::size_t f = begin; f < end; ++f) {
          r.index_of(f, idx);
          for (std::size_t i = 0; i < n; ++i)
            x[i] = static_cast<double>(idx[i]) * step;
          r.cell(f) = body.contains(x) ? 1 : 0;
        }
      },
      threads);
  return r;
}

Raster erode(const Raster& k, const Raster& t) {
  if (k.dim() != t.dim()) throw DimensionMismatch("erode: dimensions differ");
  if (std::abs(k.step() - t.step()) > 1e-15 * k.step())
    throw BadParam("erode: rasters must share a lattice step");
  const std::size_t n = k.dim();
  std::vector<long> tmin, tmax;
  const auto runs = runs_of(t, tmin, tmax);
  if (runs.empty()) throw BadParam("erode: structuring element has no samples");
  std::vector<long> lo(n);
  std::vector<std::size_t> shape(n, 0);
  bool empty = k.size() == 0;
  for (std::size_t i = 0; i < n && !empty; ++i) {
    lo[i] = k.lo()[i] - tmin[i];
    const long last = k.lo()[i] + static_cast<long>(k.shape()[i]) - 1 - tmax[i];
    if (last < lo[i]) empty = true;
    else shape[i] = static_cast<std::size_t>(last - lo[i] + 1);
  }
  if (empty) return Raster(k.step(), k.lo(), std::vector<std::size_t>(n, 0));
  Raster out(k.step(), lo, shape);
  const auto zeros = row_prefix(k, 0);
  const std::size_t kw = k.shape()[0];
  const std::size_t w = shape[0];
  std::vector<std::size_t> row_ids;
  std::vector<std::vector<long>> rests;
  for_each_row(lo, shape, [&](std::size_t row, const std::vector<long>& idx) {
    row_ids.push_back(row);
    rests.push_back(idx);
  });
  parallel_for(rests.size(), 16, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> ok(w);
    for (std::size_t rr = begin; rr < end; ++rr) {
      std::fill(ok.begin(), ok.end(), 1);
      for (const Run& run : runs) {
        const std::size_t krow = row_of(k, rests[rr], run.rest, +1);
        if (krow == static_cast<std::size_t>(-1)) {
          std::fill(ok.begin(), ok.end(), 0);
          break;
        }
        const std::uint32_t* p = &zeros[krow * (kw + 1)];
        for (std::size_t j = 0; j < w; ++j) {
          if (!ok[j]) continue;
          const long a = lo[0] + static_cast<long>(j) + run.a - k.lo()[0];
          const long b = lo[0] + static_cast<long>(j) + run.b - k.lo()[0];
          if (a < 0 || b >= static_cast<long>(kw) ||
              p[b + 1] - p[a] != 0) {
            ok[j] = 0;
          }
        }
      }
      for (std::size_t j = 0; j < w; ++j) out.cell(row_ids[rr] * w + j) = ok[j];
    }
  });
  return out;
}

Raster dilate(const Raster& k, const Raster& m) {
  if (k.dim() != m.dim()) throw DimensionMismatch("dilate: dimensions differ");
  if (std::abs(k.step() - m.step()) > 1e-15 * k.step())
    throw BadParam("dilate: rasters must share a lattice step");
  const std::size_t n = k.dim();
  std::vector<long> mmin, mmax;
  const auto runs = runs_of(m, mmin, mmax);
  if (runs.empty() || k.count() == 0)
    return Raster(k.step(), k.lo(), std::vector<std::size_t>(n, 0));
  std::vector<long> lo(n);
  std::vector<std::size_t> shape(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = k.lo()[i] + mmin[i];
    shape[i] = k.shape()[i] + static_cast<std::size_t>(mmax[i] - mmin[i]);
  }
  Raster out(k.step(), lo, shape);
  const auto ones = row_prefix(k, 1);
  const std::size_t kw = k.shape()[0];
  const std::size_t w = shape[0];
  std::vector<std::size_t> row_ids;
  std::vector<std::vector<long>> rests;
  for_each_row(lo, shape, [&](std::size_t row, const std::vector<long>& idx) {
    row_ids.push_back(row);
    rests.push_back(idx);
  });
  parallel_for(rests.size(), 16, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> hit(w);
    for (std::size_t rr = begin; rr < end; ++rr) {
      std::fill(hit.begin(), hit.end(), 0);
      for (const Run& run : runs) {
        const std::size_t krow = row_of(k, rests[rr], run.rest, -1);
        if (krow == static_cast<std::size_t>(-1)) continue;
        const std::uint32_t* p = &ones[krow * (kw + 1)];
        for (std::size_t j = 0; j < w; ++j) {
          if (hit[j]) continue;
          long a = lo[0] + static_cast<long>(j) - run.b - k.lo()[0];
          long b = lo[0] + static_cast<long>(j) - run.a - k.lo()[0];
          a = std::max(a, 0L);
          b = std::min(b, static_cast<long>(kw) - 1);
          if (a <= b && p[b + 1] - p[a] != 0) hit[j] = 1;
        }
      }
      for (std::size_t j = 0; j < w; ++j) out.cell(row_ids[rr] * w + j) = hit[j];
    }
  });
  return out;
}

namespace {

// Felzenszwalb–Huttenlocher squared distance transform of a sampled
// function along one line.
void distance_1d(const double* f, std::size_t n, std::size_t stride,
                 double* out, std::vector<double>& fv, std::vector<long>& v,
                 std::vector<double>& z) {
  fv.resize(n);
  v.resize(n);
  z.resize(n + 1);
  for (std::size_t q = 0; q < n; ++q) fv[q] = f[q * stride];
  long k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (long q = 1; q < static_cast<long>(n); ++q) {
    double s;
    for (;;) {
      const long p = v[static_cast<std::size_t>(k)];
      s = ((fv[static_cast<std::size_t>(q)] + static_cast<double>(q * q)) -
           (fv[static_cast<std::size_t>(p)] + static_cast<double>(p * p))) /
          static_cast<double>(2 * q - 2 * p);
      if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (long q = 0; q < static_cast<long>(n); ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(q)) ++k;
    const long p = v[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(q)] =
        static_cast<double>((q - p) * (q - p)) + fv[static_cast<std::size_t>(p)];
  }
}

}  // namespace

std::vector<double> depth_squared(const Raster& k) {
  const std::size_t n = k.dim();
  if (k.size() == 0) return {};
  // Pad one ring of zeros so every line contains a zero.
  std::vector<std::size_t> pshape(n);
  std::vector<std::size_t> pstride(n, 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    pshape[i] = k.shape()[i] + 2;
    if (i > 0) pstride[i] = pstride[i - 1] * pshape[i - 1];
    total *= pshape[i];
  }
  // Larger than any squared lattice distance inside the padded box, and
  // small enough that parabola intersections stay exact.
  double far = 1.0;
  for (std::size_t i = 0; i < n; ++i) far += static_cast<double>(pshape[i] * pshape[i]);
  std::vector<double> dist(total, 0.0);
  {
    std::vector<long> idx(n);
    for (std::size_t f = 0; f < k.size(); ++f) {
      if (!k.cell(f)) continue;
      k.index_of(f, idx);
      std::size_t pf = 0;
      for (std::size_t i = 0; i < n; ++i)
        pf += static_cast<std::size_t>(idx[i] - k.lo()[i] + 1) * pstride[i];
      dist[pf] = far;
    }
  }
  for (std::size_t axis = 0; axis < n; ++axis) {
    const std::size_t len = pshape[axis];
    const std::size_t lines = total / len;
    parallel_for(lines, 64, [&](std::size_t begin, std::size_t end) {
      std::vector<double> fv, z, line(len);
      std::vector<long> v;
      for (std::size_t l = begin; l < end; ++l) {
        // Decompose l into the indices of every axis except `axis`.
        std::size_t rest = l, base = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == axis) continue;
          base += (rest % pshape[i]) * pstride[i];
          rest /= pshape[i];
        }
        distance_1d(&dist[base], len, pstride[axis], line.data(), fv, v, z);
        for (std::size_t q = 0; q < len; ++q) dist[base + q * pstride[axis]] = line[q];
      }
    });
  }
  const double h2 = k.step() * k.step();
  std::vector<double> out(k.size(), 0.0);
  std::vector<long> idx(n);
  for (std::size_t f = 0; f < k.size(); ++f) {
    if (!k.cell(f)) continue;
    k.index_of(f, idx);
    std::size_t pf = 0;
    for (std::size_t i = 0; i < n; ++i)
      pf += static_cast<std::size_t>(idx[i] - k.lo()[i] + 1) * pstride[i];
    out[f] = dist[pf] * h2;
  }
  return out;
}

Raster erode_ball(const Raster& k, double radius) {
  if (radius < 0.0) throw BadParam("erosion radius must be nonnegative");
  if (k.size() == 0) return k;
  const auto depth = depth_squared(k);
  const double threshold = radius * radius * (1.0 + 1e-9);
  Raster out(k.step(), k.lo(), k.shape());
  for (std::size_t f = 0; f < k.size(); ++f) out.cell(f) = depth[f] > threshold ? 1 : 0;
  return out;
}

}  // namespace covering
