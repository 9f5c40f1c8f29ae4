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

// Finite set-cover engine: greedy, fractional (LP) and exact solvers, and
// the Lovász–Stein comparison between the greedy size and the fractional
// covering number.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace covering {

using ElementId = std::uint32_t;
using CandidateId = std::uint32_t;
using Rational = boost::multiprecision::cpp_rational;

// A finite hypergraph: ground elements 0..num_elements-1 and candidate sets
// 0..num_candidates-1. Immutable once built; incidence is kept in both
// directions in compressed form.
class CoverInstance {
 public:
  CoverInstance() = default;

  // Element lists are sorted and deduplicated. Element ids out of range
  // raise BadParam. Uncovered elements are allowed here; they make the
  // instance infeasible, which feasible() reports and the solvers reject.
  static CoverInstance build(std::size_t num_elements,
                             std::vector<std::vector<ElementId>> sets);

  std::size_t num_elements() const { return num_elements_; }
  std::size_t num_candidates() const { return set_offsets_.size() - 1; }
  std::size_t num_incidences() const { return set_members_.size(); }

  std::span<const ElementId> members(CandidateId c) const {
    return {set_members_.data() + set_offsets_[c],
            set_members_.data() + set_offsets_[c + 1]};
  }
  std::span<const CandidateId> containing(ElementId e) const {
    return {elem_sets_.data() + elem_offsets_[e],
            elem_sets_.data() + elem_offsets_[e + 1]};
  }

  std::size_t max_candidate_size() const { return max_candidate_size_; }
  bool feasible() const { return uncovered_.empty(); }
  const std::vector<ElementId>& uncovered_elements() const {
    return uncovered_;
  }
  // Throws InfeasibleInstance naming the first uncovered element.
  void require_feasible() const;

 private:
  std::size_t num_elements_ = 0;
  std::vector<std::size_t> set_offsets_{0};
  std::vector<ElementId> set_members_;
  std::vector<std::size_t> elem_offsets_{0};
  std::vector<CandidateId> elem_sets_;
  std::vector<ElementId> uncovered_;
  std::size_t max_candidate_size_ = 0;
};

// Nonnegative weights on candidates covering every element at least
// 1 - feasibility_tol. `dual_bound` is the value of a feasible solution of
// the dual packing LP, so dual_bound <= tau* <= total.
struct FractionalWeights {
  std::vector<double> weights;
  double total = 0.0;
  double dual_bound = 0.0;
  double max_violation = 0.0;
  std::size_t pivots = 0;
};

struct CoverSelection {
  std::vector<CandidateId> chosen;  // in selection order
  // (1 + ln(max candidate size)) * tau*, when tau* was known at solve time.
  std::optional<double> certificate;
};

enum class LpArithmetic { kDouble, kExact };

inline constexpr std::size_t kDenseLpLimit = 500;
inline constexpr double kFeasibilityTol = 1e-9;

// Repeatedly picks the candidate covering the most uncovered elements;
// ties go to the lowest candidate id.
CoverSelection greedy_cover(const CoverInstance& instance);
CoverSelection greedy_cover(const CoverInstance& instance, double tau_star);

// min sum x_S  s.t.  sum_{S ni e} x_S >= 1, x >= 0, solved through its dual
// packing LP by the dense simplex. Instances above kDenseLpLimit elements or
// candidates raise SizeLimitExceeded.
FractionalWeights fractional_cover_lp(
    const CoverInstance& instance, double tol = kFeasibilityTol,
    LpArithmetic arithmetic = LpArithmetic::kDouble);

// Exact optimum of the covering LP in rational arithmetic.
Rational fractional_cover_number_exact(const CoverInstance& instance);

struct ExactOptions {
  std::size_t node_limit = 50'000'000;
};

// Minimum cover cardinality by branch and bound. With size_cap == 0 the
// instance must have at most 40 candidates; otherwise only covers of size
// <= size_cap are searched and SizeLimitExceeded is raised if none exists
// (or the node budget runs out).
std::size_t exact_cover_bruteforce(const CoverInstance& instance,
                                   std::size_t size_cap = 0,
                                   const ExactOptions& options = {});

struct LsReport {
  std::size_t greedy_size = 0;
  std::optional<std::size_t> tau;
  double tau_star = 0.0;
  std::size_t max_deg = 0;
  double bound = 0.0;  // (1 + ln max_deg) * tau*
  bool holds = false;  // greedy_size < bound, strictly
};

// Compares greedy against the Lovász–Stein bound. When compute_tau is set
// the exact covering number is also computed (bounded by the greedy size).
LsReport verify_ls_bound(const CoverInstance& instance,
                         bool compute_tau = false);

// True iff the union of the chosen candidates contains every element.
bool covers_all(const CoverInstance& instance,
                std::span<const CandidateId> chosen);

// Line format: "p cover <#elements> <#sets>" then "s <id> <e1> <e2> ..."
// with 1-based set and element ids; lines starting with 'c' are comments.
CoverInstance read_cover_instance(std::istream& in);
void write_cover_instance(std::ostream& out, const CoverInstance& instance);

// The Fano plane: 7 points, 7 lines of 3 points.
CoverInstance fano_plane();

// Random instance: each candidate draws its size uniformly from
// [min_size, max_size] and its members uniformly; elements left uncovered
// are then added to a random candidate so the result is feasible.
CoverInstance random_cover_instance(std::size_t num_elements,
                                    std::size_t num_sets,
                                    std::size_t min_size,
                                    std::size_t max_size,
                                    std::uint64_t seed);

}  // namespace covering
