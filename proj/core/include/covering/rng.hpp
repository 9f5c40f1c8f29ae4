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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace covering {

using Engine = std::mt19937_64;

// All randomness is derived from one user seed through named sub-streams
// ("net", "rotations", "mc", ...). Sampling loops additionally key by a
// chunk index so results do not depend on how chunks map to threads.
Engine make_stream(std::uint64_t seed, std::string_view name,
                   std::uint64_t chunk = 0);

// boost::random distributions produce the same values on every standard
// library, unlike the std:: ones.
inline double uniform01(Engine& engine) {
  return boost::random::uniform_01<double>{}(engine);
}

inline double standard_normal(Engine& engine) {
  return boost::random::normal_distribution<double>{0.0, 1.0}(engine);
}

inline std::size_t uniform_index(Engine& engine, std::size_t n) {
  return boost::random::uniform_int_distribution<std::size_t>{0, n - 1}(
      engine);
}

// Fisher-Yates; std::shuffle is not specified precisely enough to be
// reproducible across implementations.
template <typename T>
void shuffle(std::span<T> values, Engine& engine) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = uniform_index(engine, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace covering
