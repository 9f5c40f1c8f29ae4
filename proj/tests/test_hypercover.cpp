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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

#include "covering/errors.hpp"
#include "covering/hypercover.hpp"
#include "covering/rng.hpp"
#include "doctest.h"

using namespace covering;

namespace {

// Test oracle: smallest k such that some k candidates cover everything,
// by plain enumeration of k-subsets (elements fit in a 64-bit mask).
std::size_t brute_force_tau(const CoverInstance& inst) {
  REQUIRE(inst.num_elements() <= 64);
  const std::uint64_t full = inst.num_elements() == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << inst.num_elements()) - 1;
  std::vector<std::uint64_t> masks;
  for (CandidateId c = 0; c < inst.num_candidates(); ++c) {
    std::uint64_t m = 0;
    for (ElementId e : inst.members(c)) m |= std::uint64_t{1} << e;
    masks.push_back(m);
  }
  const std::size_t n = masks.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::uint64_t u = 0;
      for (std::size_t i : idx) u |= masks[i];
      if (u == full) return k;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n + 1;
}

// Weak-duality certificate: a covering x and a packing y with equal value
// prove both optimal without trusting the solver.
void check_lp_certificate(const CoverInstance& inst,
                          const FractionalWeights& fw) {
  for (double w : fw.weights) CHECK(w >= 0.0);
  for (ElementId e = 0; e < inst.num_elements(); ++e) {
    double cov = 0.0;
    for (CandidateId c : inst.containing(e)) cov += fw.weights[c];
    CHECK(cov >= 1.0 - kFeasibilityTol);
  }
  double sum = std::accumulate(fw.weights.begin(), fw.weights.end(), 0.0);
  CHECK(std::abs(sum - fw.total) <= 1e-12 * std::max(1.0, sum));
  CHECK(fw.dual_bound <= fw.total + 1e-12);
  CHECK(fw.total - fw.dual_bound <= 1e-9);
}

}  // namespace

TEST_CASE("instance construction normalises and detects infeasibility") {
  auto inst = CoverInstance::build(4, {{2, 0, 2}, {1}});
  CHECK(inst.members(0).size() == 2);
  CHECK(inst.members(0)[0] == 0);
  CHECK_FALSE(inst.feasible());
  CHECK(inst.uncovered_elements() == std::vector<ElementId>{3});
  CHECK_THROWS_AS(greedy_cover(inst), InfeasibleInstance);
  CHECK_THROWS_AS(fractional_cover_lp(inst), InfeasibleInstance);
  CHECK_THROWS_AS(CoverInstance::build(2, {{0, 5}}), BadParam);

  auto ok = CoverInstance::build(3, {{0, 1}, {1, 2}});
  for (ElementId e = 0; e < 3; ++e) {
    for (CandidateId c : ok.containing(e)) {
      auto m = ok.members(c);
      CHECK(std::find(m.begin(), m.end(), e) != m.end());
    }
  }
}

TEST_CASE("greedy on a single covering set") {
  auto inst = CoverInstance::build(3, {{0, 1, 2}});
  auto sel = greedy_cover(inst);
  CHECK(sel.chosen == std::vector<CandidateId>{0});
  auto r = verify_ls_bound(inst);
  CHECK(r.greedy_size == 1);
  CHECK(r.bound == doctest::Approx(1.0 + std::log(3.0)));
  CHECK(r.holds);
}

TEST_CASE("greedy breaks ties by lowest candidate id") {
  auto inst = CoverInstance::build(4, {{0, 1}, {2, 3}, {1, 2}, {0, 3}});
  CHECK(greedy_cover(inst).chosen == std::vector<CandidateId>{0, 1});
}

TEST_CASE("Fano plane") {
  auto fano = fano_plane();
  CHECK(brute_force_tau(fano) == 3);
  CHECK(exact_cover_bruteforce(fano) == 3);

  auto fw = fractional_cover_lp(fano);
  CHECK(fw.total == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
  check_lp_certificate(fano, fw);
  CHECK(fractional_cover_number_exact(fano) == Rational(7, 3));

  auto sel = greedy_cover(fano, fw.total);
  CHECK(sel.chosen.size() <= 3);
  CHECK(covers_all(fano, sel.chosen));
  CHECK(*sel.certificate == doctest::Approx((1 + std::log(3.0)) * 7 / 3));
  CHECK(static_cast<double>(sel.chosen.size()) < 4.897);

  auto r = verify_ls_bound(fano, true);
  CHECK(r.tau == 3u);
  CHECK(r.holds);
}

TEST_CASE("fractional cover of simple instances") {
  auto singletons = CoverInstance::build(5, {{0}, {1}, {2}, {3}, {4}});
  CHECK(fractional_cover_lp(singletons).total == doctest::Approx(5.0));
  auto whole = CoverInstance::build(5, {{0, 1}, {0, 1, 2, 3, 4}, {3}});
  CHECK(fractional_cover_lp(whole).total == doctest::Approx(1.0));
  CHECK(fractional_cover_lp(whole, 1e-9, LpArithmetic::kExact).total == 1.0);
  CHECK_THROWS_AS(fractional_cover_lp(whole, 0.0), BadParam);
}

// Arcs of length L at every position of an n-cycle: the uniform weight 1/L
// is feasible for the cover and the uniform 1/L packing is feasible for the
// dual, so tau* = n/L. Heavily degenerate, which is what drifts a tableau.
TEST_CASE("fractional cover of cyclic arcs is n/L in floating point") {
  for (auto [n, len] : {std::pair{120, 7}, {300, 11}, {97, 13}}) {
    std::vector<std::vector<ElementId>> sets(n);
    for (int s = 0; s < n; ++s)
      for (int k = 0; k < len; ++k) sets[s].push_back((s + k) % n);
    const auto inst = CoverInstance::build(n, sets);
    const FractionalWeights fw = fractional_cover_lp(inst);
    CHECK(fw.total == doctest::Approx(double(n) / len).epsilon(1e-9));
    CHECK(fw.max_violation <= 1e-9);
  }
}

TEST_CASE("double and exact LP agree on random instances") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = random_cover_instance(30, 45, 4, 12, seed);
    const double fast = fractional_cover_lp(inst).total;
    const double exact =
        fractional_cover_number_exact(inst).convert_to<double>();
    CHECK(fast == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("degenerate singleton family is flagged, not passed") {
  // max candidate size 1 makes the bound equal the greedy size.
  auto singletons = CoverInstance::build(5, {{0}, {1}, {2}, {3}, {4}});
  auto r = verify_ls_bound(singletons);
  CHECK(r.greedy_size == 5);
  CHECK(r.bound == doctest::Approx(5.0));
  CHECK_FALSE(r.holds);
}

TEST_CASE("empty ground set is a vacuous cover") {
  auto empty = CoverInstance::build(0, {{}, {}});
  CHECK(greedy_cover(empty).chosen.empty());
  CHECK(fractional_cover_lp(empty).total == 0.0);
  CHECK(exact_cover_bruteforce(empty) == 0);
  auto r = verify_ls_bound(empty, true);
  CHECK(r.tau == 0u);
  CHECK(r.holds);
}

TEST_CASE("dense LP size cap") {
  std::vector<std::vector<ElementId>> sets(501);
  for (std::size_t i = 0; i < sets.size(); ++i)
    sets[i] = {static_cast<ElementId>(i % 3)};
  auto big = CoverInstance::build(3, sets);
  CHECK_THROWS_AS(fractional_cover_lp(big), SizeLimitExceeded);
}

TEST_CASE("exact cover on tiny and random instances") {
  auto tiny = CoverInstance::build(2, {{0}, {1}, {0, 1}});
  CHECK(exact_cover_bruteforce(tiny) == 1);

  auto r7 = random_cover_instance(12, 18, 2, 5, 7);
  const std::size_t tau = exact_cover_bruteforce(r7);
  CHECK(tau == brute_force_tau(r7));
  CHECK(tau <= greedy_cover(r7).chosen.size());

  auto r42 = random_cover_instance(20, 40, 2, 6, 42);
  const std::size_t tau42 = exact_cover_bruteforce(r42);
  CHECK(tau42 == brute_force_tau(r42));
  auto fw = fractional_cover_lp(r42);
  check_lp_certificate(r42, fw);
  const auto greedy = greedy_cover(r42).chosen.size();
  CHECK(greedy >= tau42);
  CHECK(static_cast<double>(greedy) <
        (1 + std::log(static_cast<double>(r42.max_candidate_size()))) *
            fw.total);
  CHECK(fw.total <= static_cast<double>(tau42) + 1e-9);

  auto many = random_cover_instance(30, 60, 2, 6, 3);
  CHECK_THROWS_AS(exact_cover_bruteforce(many), SizeLimitExceeded);
  CHECK_THROWS_AS(exact_cover_bruteforce(many, 1), SizeLimitExceeded);
}

TEST_CASE("Lovász–Stein sweep over 200 seeded instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Engine eng = make_stream(seed, "sweep");
    const std::size_t m = 5 + uniform_index(eng, 26);
    const std::size_t k = 3 + uniform_index(eng, 38);
    const std::size_t hi = 2 + uniform_index(eng, std::min<std::size_t>(m - 1, 8));
    auto inst = random_cover_instance(m, k, 2, hi, seed);
    auto r = verify_ls_bound(inst, true);
    INFO("seed " << seed);
    CHECK(r.holds);
    REQUIRE(r.tau.has_value());
    CHECK(*r.tau <= r.greedy_size);
    CHECK(r.tau_star <= static_cast<double>(*r.tau) + 1e-9);
    CHECK(r.tau_star >= 1.0 - 1e-9);
  }
}

TEST_CASE("LP value is invariant under relabelling; greedy is deterministic") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_cover_instance(25, 35, 2, 7, seed);
    const double base = fractional_cover_lp(inst).total;

    Engine eng = make_stream(seed, "perm");
    std::vector<ElementId> ep(inst.num_elements());
    std::iota(ep.begin(), ep.end(), 0);
    shuffle(std::span<ElementId>(ep), eng);
    std::vector<CandidateId> cp(inst.num_candidates());
    std::iota(cp.begin(), cp.end(), 0);
    shuffle(std::span<CandidateId>(cp), eng);
    std::vector<std::vector<ElementId>> sets(inst.num_candidates());
    for (CandidateId c = 0; c < inst.num_candidates(); ++c) {
      for (ElementId e : inst.members(c)) sets[cp[c]].push_back(ep[e]);
    }
    auto permuted = CoverInstance::build(inst.num_elements(), sets);
    CHECK(fractional_cover_lp(permuted).total ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(greedy_cover(inst).chosen == greedy_cover(inst).chosen);
  }
}

TEST_CASE("instance text format") {
  std::istringstream in(
      "c a comment\np cover 4 3\ns 2 3 4\ns 1 1 2\ns 3 2 3\n");
  auto inst = read_cover_instance(in);
  CHECK(inst.num_elements() == 4);
  CHECK(inst.num_candidates() == 3);
  CHECK(inst.members(1).size() == 2);
  CHECK(inst.members(1)[0] == 2);

  std::ostringstream out;
  write_cover_instance(out, inst);
  std::istringstream back(out.str());
  auto again = read_cover_instance(back);
  std::ostringstream out2;
  write_cover_instance(out2, again);
  CHECK(out.str() == out2.str());

  for (const char* bad : {"s 1 1\n", "p cover 2 1\ns 1 3\n",
                          "p cover 2 2\ns 1 1\n", "p cover 2 1\ns 1 x\n",
                          "p set 2 1\n"}) {
    std::istringstream bin(bad);
    CHECK_THROWS_AS(read_cover_instance(bin), ParseError);
  }
}
