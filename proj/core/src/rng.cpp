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

#include "covering/rng.hpp"

#include <boost/crc.hpp>

#include "covering/parallel.hpp"

namespace covering {

Engine make_stream(std::uint64_t seed, std::string_view name,
                   std::uint64_t chunk) {
  boost::crc_32_type crc;
  crc.process_bytes(name.data(), name.size());
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(crc.checksum()),
                    static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return Engine(seq);
}

namespace {
std::atomic<int> g_default_threads{0};
}

int default_threads() {
  int t = g_default_threads.load();
  if (t > 0) return t;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_default_threads(int threads) { g_default_threads.store(threads); }

}  // namespace covering
