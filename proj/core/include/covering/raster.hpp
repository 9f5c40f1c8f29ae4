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

// Samples of a body on the lattice step * Z^n. Every raster produced by the
// library is anchored at the origin, so rasters with the same step line up
// cell for cell and erosions/dilations reduce to integer offsets.
//
// Memory is one byte per lattice point: a 4-dimensional raster at 100
// points per axis is 10^8 bytes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "covering/body.hpp"

namespace covering {

class Raster {
 public:
  Raster() = default;
  Raster(double step, std::vector<long> lo, std::vector<std::size_t> shape);

  double step() const { return step_; }
  std::size_t dim() const { return lo_.size(); }
  const std::vector<long>& lo() const { return lo_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t count() const;

  std::uint8_t& cell(std::size_t flat) { return cells_[flat]; }
  std::uint8_t cell(std::size_t flat) const { return cells_[flat]; }
  std::span<const std::uint8_t> cells() const { return cells_; }

  // Lattice index -> value; indices outside the raster read as 0.
  bool at(std::span<const long> index) const;
  // Value at the lattice point nearest to x.
  bool contains(std::span<const double> x) const;

  void index_of(std::size_t flat, std::span<long> index) const;
  Vec point(std::size_t flat) const;
  Box bbox() const;

  // Volume as count * step^n, with error estimated as the number of
  // boundary samples (a sample whose axis neighbour differs) times the
  // cell volume.
  double volume() const;
  double volume_error() const;

 private:
  double step_ = 0.0;
  std::vector<long> lo_;
  std::vector<std::size_t> shape_;
  std::vector<std::uint8_t> cells_;  // axis 0 varies fastest
};

// Samples body at every lattice point of step * Z^n inside its bbox.
Raster rasterize(const Body& body, double step, int threads = 0);

// Lattice erosion {x : x + (T samples) subset of K samples}.
Raster erode(const Raster& k, const Raster& t);
// Erosion by the closed ball of the given radius centred at the origin,
// via a separable Euclidean distance transform.
Raster erode_ball(const Raster& k, double radius);
// Squared distance from each sample to the nearest lattice point outside K
// (0 for samples outside K). erode_ball(k, r) keeps samples with depth > r^2.
std::vector<double> depth_squared(const Raster& k);
// Lattice Minkowski sum K + M.
Raster dilate(const Raster& k, const Raster& m);

}  // namespace covering
