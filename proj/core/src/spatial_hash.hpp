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

// Uniform-grid bucket index over points in R^n (n <= 4), optionally
// periodic with a common period on every axis. Queries report the ids in
// every cell overlapping a box; callers filter by exact distance.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "covering/errors.hpp"

namespace covering::detail {

class SpatialHash {
 public:
  SpatialHash(std::size_t dim, double cell, std::optional<double> period = {})
      : dim_(dim), period_(period) {
    if (dim == 0 || dim > 4) throw BadParam("spatial hash supports 1 to 4 axes");
    if (period_) {
      cells_per_axis_ = std::max<long>(1, static_cast<long>(std::floor(*period_ / cell)));
      cell_ = *period_ / static_cast<double>(cells_per_axis_);
    } else {
      cell_ = cell;
    }
  }

  void insert(std::uint32_t id, std::span<const double> x) {
    long idx[4];
    for (std::size_t i = 0; i < dim_; ++i) idx[i] = wrap(cell_index(x[i]));
    buckets_[key(idx)].push_back(id);
  }

  // fn(id) for every id stored in a cell that overlaps [lo, hi].
  template <typename Fn>
  void query_box(std::span<const double> lo, std::span<const double> hi,
                 Fn&& fn) const {
    long first[4], count[4];
    for (std::size_t i = 0; i < dim_; ++i) {
      first[i] = cell_index(lo[i]);
      count[i] = cell_index(hi[i]) - first[i] + 1;
      if (period_ && count[i] >= cells_per_axis_) {
        first[i] = 0;
        count[i] = cells_per_axis_;
      }
    }
    long idx[4];
    long total = 1;
    for (std::size_t i = 0; i < dim_; ++i) total *= count[i];
    for (long f = 0; f < total; ++f) {
      long rest = f;
      for (std::size_t i = 0; i < dim_; ++i) {
        idx[i] = wrap(first[i] + rest % count[i]);
        rest /= count[i];
      }
      auto it = buckets_.find(key(idx));
      if (it == buckets_.end()) continue;
      for (std::uint32_t id : it->second) fn(id);
    }
  }

 private:
  long cell_index(double x) const { return static_cast<long>(std::floor(x / cell_)); }
  long wrap(long k) const {
    if (!period_) return k;
    k %= cells_per_axis_;
    return k < 0 ? k + cells_per_axis_ : k;
  }
  std::uint64_t key(const long* idx) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      k = (k << 16) | static_cast<std::uint64_t>((idx[i] + 32768) & 0xFFFF);
    return k;
  }

  std::size_t dim_;
  std::optional<double> period_;
  long cells_per_axis_ = 0;
  double cell_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace covering::detail
