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

#include "covering/hypercover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "covering/errors.hpp"
#include "covering/lp.hpp"
#include "covering/rng.hpp"

namespace covering {

CoverInstance CoverInstance::build(std::size_t num_elements,
                                   std::vector<std::vector<ElementId>> sets) {
  CoverInstance inst;
  inst.num_elements_ = num_elements;
  inst.set_offsets_.assign(1, 0);
  inst.set_offsets_.reserve(sets.size() + 1);
  std::vector<std::size_t> degree(num_elements, 0);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= num_elements) {
      throw BadParam("candidate references element " + std::to_string(s.back()) +
                     " but the ground set has " + std::to_string(num_elements) +
                     " elements");
    }
    for (ElementId e : s) ++degree[e];
    inst.set_members_.insert(inst.set_members_.end(), s.begin(), s.end());
    inst.set_offsets_.push_back(inst.set_members_.size());
    inst.max_candidate_size_ = std::max(inst.max_candidate_size_, s.size());
  }
  inst.elem_offsets_.assign(num_elements + 1, 0);
  for (std::size_t e = 0; e < num_elements; ++e)
    inst.elem_offsets_[e + 1] = inst.elem_offsets_[e] + degree[e];
  inst.elem_sets_.resize(inst.set_members_.size());
  std::vector<std::size_t> fill(inst.elem_offsets_.begin(),
                                inst.elem_offsets_.end() - 1);
  for (CandidateId c = 0; c < sets.size(); ++c) {
    for (ElementId e : sets[c]) inst.elem_sets_[fill[e]++] = c;
  }
  for (ElementId e = 0; e < num_elements; ++e) {
    if (degree[e] == 0) inst.uncovered_.push_back(e);
  }
  return inst;
}

void CoverInstance::require_feasible() const {
  if (!uncovered_.empty()) {
    throw InfeasibleInstance(
        "element " + std::to_string(uncovered_.front()) +
        " lies in no candidate (" + std::to_string(uncovered_.size()) +
        " uncovered elements)");
  }
}

bool covers_all(const CoverInstance& instance,
                std::span<const CandidateId> chosen) {
  std::vector<bool> hit(instance.num_elements(), false);
  for (CandidateId c : chosen) {
    for (ElementId e : instance.members(c)) hit[e] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

CoverSelection greedy_cover(const CoverInstance& instance) {
  instance.require_feasible();
  const std::size_t k = instance.num_candidates();
  std::vector<std::size_t> gain(k);
  for (CandidateId c = 0; c < k; ++c) gain[c] = instance.members(c).size();
  std::vector<bool> covered(instance.num_elements(), false);
  std::size_t remaining = instance.num_elements();

  CoverSelection sel;
  while (remaining > 0) {
    CandidateId best = 0;
    for (CandidateId c = 1; c < k; ++c) {
      if (gain[c] > gain[best]) best = c;
    }
    sel.chosen.push_back(best);
    for (ElementId e : instance.members(best)) {
      if (covered[e]) continue;
      covered[e] = true;
      --remaining;
      for (CandidateId c : instance.containing(e)) --gain[c];
    }
  }
  return sel;
}

CoverSelection greedy_cover(const CoverInstance& instance, double tau_star) {
  CoverSelection sel = greedy_cover(instance);
  const double d = static_cast<double>(instance.max_candidate_size());
  sel.certificate = d > 0 ? (1.0 + std::log(d)) * tau_star : 0.0;
  return sel;
}

namespace {

void check_lp_size(const CoverInstance& instance) {
  if (instance.num_elements() > kDenseLpLimit ||
      instance.num_candidates() > kDenseLpLimit) {
    throw SizeLimitExceeded(
        "dense LP limited to " + std::to_string(kDenseLpLimit) + "x" +
        std::to_string(kDenseLpLimit) + ", instance is " +
        std::to_string(instance.num_elements()) + " elements x " +
        std::to_string(instance.num_candidates()) + " candidates");
  }
}

// Dual packing LP: rows are candidates, columns are elements.
//   maximize sum_e y_e  s.t.  sum_{e in S} y_e <= 1 for every S, y >= 0.
// The origin is feasible, so no phase one is needed; the row multipliers
// are an optimal covering.
template <typename Scalar>
lp::Result<Scalar> solve_packing_dual(const CoverInstance& instance) {
  const std::size_t m = instance.num_elements();
  const std::size_t k = instance.num_candidates();
  lp::DenseMatrix<Scalar> a(k, m);
  for (CandidateId c = 0; c < k; ++c) {
    for (ElementId e : instance.members(c)) a(c, e) = Scalar(1);
  }
  std::vector<Scalar> b(k, Scalar(1));
  std::vector<Scalar> obj(m, Scalar(1));
  auto res = lp::maximize(a, b, obj);
  if (res.status != lp::Status::kOptimal) {
    throw InvariantViolation(std::string("covering LP ended with status ") +
                             lp::to_string(res.status));
  }
  return res;
}

FractionalWeights polish(const CoverInstance& instance,
                         std::vector<double> x, std::vector<double> y,
                         std::size_t pivots, double tol) {
  FractionalWeights fw;
  fw.pivots = pivots;
  for (double& v : x) v = std::max(v, 0.0);
  double min_cov = std::numeric_limits<double>::infinity();
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    double cov = 0.0;
    for (CandidateId c : instance.containing(e)) cov += x[c];
    min_cov = std::min(min_cov, cov);
  }
  if (instance.num_elements() > 0 && min_cov < 1.0) {
    if (min_cov < 1.0 - 1e-3) {
      throw InvariantViolation("LP covering violates a constraint by " +
                               std::to_string(1.0 - min_cov));
    }
    // Rescale so every constraint holds; the change is below solver noise.
    for (double& v : x) v /= min_cov;
  }
  fw.max_violation = 0.0;
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    double cov = 0.0;
    for (CandidateId c : instance.containing(e)) cov += x[c];
    fw.max_violation = std::max(fw.max_violation, 1.0 - cov);
  }
  fw.total = std::accumulate(x.begin(), x.end(), 0.0);
  fw.weights = std::move(x);

  for (double& v : y) v = std::max(v, 0.0);
  double max_load = 0.0;
  for (CandidateId c = 0; c < instance.num_candidates(); ++c) {
    double load = 0.0;
    for (ElementId e : instance.members(c)) load += y[e];
    max_load = std::max(max_load, load);
  }
  double ysum = std::accumulate(y.begin(), y.end(), 0.0);
  fw.dual_bound = max_load > 1.0 ? ysum / max_load : ysum;
  if (fw.total - fw.dual_bound > tol * std::max(1.0, fw.total)) {
    throw InvariantViolation("LP duality gap " +
                             std::to_string(fw.total - fw.dual_bound) +
                             " exceeds tolerance");
  }
  return fw;
}

}  // namespace

FractionalWeights fractional_cover_lp(const CoverInstance& instance,
                                      double tol, LpArithmetic arithmetic) {
  if (!(tol > 0.0)) throw BadParam("LP tolerance must be positive");
  instance.require_feasible();
  check_lp_size(instance);
  if (instance.num_elements() == 0) {
    FractionalWeights fw;
    fw.weights.assign(instance.num_candidates(), 0.0);
    return fw;
  }
  if (arithmetic == LpArithmetic::kExact) {
    auto res = solve_packing_dual<Rational>(instance);
    std::vector<double> x, y;
    for (const auto& v : res.dual) x.push_back(v.convert_to<double>());
    for (const auto& v : res.x) y.push_back(v.convert_to<double>());
    return polish(instance, std::move(x), std::move(y), res.pivots, tol);
  }
  auto res = solve_packing_dual<double>(instance);
  return polish(instance, std::move(res.dual), std::move(res.x), res.pivots,
                tol);
}

Rational fractional_cover_number_exact(const CoverInstance& instance) {
  instance.require_feasible();
  check_lp_size(instance);
  if (instance.num_elements() == 0) return Rational(0);
  return solve_packing_dual<Rational>(instance).objective;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const CoverInstance& inst, std::size_t best,
                 std::size_t floor, const ExactOptions& opt)
      : inst_(inst), best_(best), floor_(floor), opt_(opt),
        words_((inst.num_elements() + 63) / 64),
        cand_words_((inst.num_candidates() + 63) / 64) {
    const std::size_t k = inst.num_candidates();
    cand_bits_.assign(k * words_, 0);
    for (CandidateId c = 0; c < k; ++c) {
      for (ElementId e : inst.members(c)) set_bit(&cand_bits_[c * words_], e);
    }
    elem_cands_.assign(inst.num_elements() * cand_words_, 0);
    for (ElementId e = 0; e < inst.num_elements(); ++e) {
      for (CandidateId c : inst.containing(e))
        set_bit(&elem_cands_[e * cand_words_], c);
    }
    elem_order_.resize(inst.num_elements());
    std::iota(elem_order_.begin(), elem_order_.end(), 0);
    std::stable_sort(elem_order_.begin(), elem_order_.end(),
                     [&](ElementId a, ElementId b) {
                       return inst.containing(a).size() <
                              inst.containing(b).size();
                     });
  }

  std::size_t run() {
    std::vector<std::uint64_t> covered(words_, 0);
    search(covered, 0);
    return best_;
  }

 private:
  static void set_bit(std::uint64_t* w, std::size_t i) {
    w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  static bool test_bit(const std::uint64_t* w, std::size_t i) {
    return (w[i / 64] >> (i % 64)) & 1U;
  }

  std::size_t gain(CandidateId c, const std::vector<std::uint64_t>& cov) const {
    const std::uint64_t* s = &cand_bits_[c * words_];
    std::size_t g = 0;
    for (std::size_t w = 0; w < words_; ++w)
      g += static_cast<std::size_t>(std::popcount(s[w] & ~cov[w]));
    return g;
  }

  // Lower bound on the number of further candidates needed: the larger of
  // ceil(uncovered / best gain) and a set of uncovered elements no two of
  // which share a candidate (an integral dual packing).
  std::size_t lower_bound(const std::vector<std::uint64_t>& cov,
                          std::size_t uncovered) const {
    std::size_t max_gain = 0;
    for (CandidateId c = 0; c < inst_.num_candidates(); ++c)
      max_gain = std::max(max_gain, gain(c, cov));
    std::size_t ratio = (uncovered + max_gain - 1) / max_gain;
    std::vector<std::uint64_t> used(cand_words_, 0);
    std::size_t packed = 0;
    for (ElementId e : elem_order_) {
      if (test_bit(cov.data(), e)) continue;
      const std::uint64_t* ec = &elem_cands_[e * cand_words_];
      bool clash = false;
      for (std::size_t w = 0; w < cand_words_ && !clash; ++w)
        clash = (ec[w] & used[w]) != 0;
      if (clash) continue;
      for (std::size_t w = 0; w < cand_words_; ++w) used[w] |= ec[w];
      ++packed;
    }
    return std::max(ratio, packed);
  }

  void search(const std::vector<std::uint64_t>& cov, std::size_t depth) {
    if (done_) return;
    if (++nodes_ > opt_.node_limit) {
      throw SizeLimitExceeded("exact cover search exceeded " +
                              std::to_string(opt_.node_limit) + " nodes");
    }
    std::size_t covered_count = 0;
    for (std::uint64_t w : cov)
      covered_count += static_cast<std::size_t>(std::popcount(w));
    const std::size_t uncovered = inst_.num_elements() - covered_count;
    if (uncovered == 0) {
      if (depth < best_) best_ = depth;
      if (best_ <= floor_) done_ = true;
      return;
    }
    if (depth + 1 >= best_) return;
    if (depth + lower_bound(cov, uncovered) >= best_) return;

    ElementId pivot = 0;
    for (ElementId e : elem_order_) {
      if (!test_bit(cov.data(), e)) {
        pivot = e;
        break;
      }
    }
    std::vector<std::pair<std::size_t, CandidateId>> branches;
    for (CandidateId c : inst_.containing(pivot))
      branches.emplace_back(gain(c, cov), c);
    std::stable_sort(branches.begin(), branches.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::uint64_t> next(words_);
    for (const auto& [g, c] : branches) {
      const std::uint64_t* s = &cand_bits_[c * words_];
      for (std::size_t w = 0; w < words_; ++w) next[w] = cov[w] | s[w];
      search(next, depth + 1);
      if (done_) return;
    }
  }

  const CoverInstance& inst_;
  std::size_t best_;
  std::size_t floor_;
  ExactOptions opt_;
  std::size_t words_;
  std::size_t cand_words_;
  std::vector<std::uint64_t> cand_bits_;
  std::vector<std::uint64_t> elem_cands_;
  std::vector<ElementId> elem_order_;
  std::size_t nodes_ = 0;
  bool done_ = false;
};

}  // namespace

std::size_t exact_cover_bruteforce(const CoverInstance& instance,
                                   std::size_t size_cap,
                                   const ExactOptions& options) {
  instance.require_feasible();
  if (instance.num_elements() == 0) return 0;
  if (size_cap == 0) {
    if (instance.num_candidates() > 40) {
      throw SizeLimitExceeded(
          "exhaustive cover search needs a size cap above 40 candidates");
    }
    size_cap = instance.num_candidates();
  }
  // best is "smallest cover found so far", initialised to one past the cap.
  std::size_t best = size_cap + 1;
  const std::size_t greedy = greedy_cover(instance).chosen.size();
  best = std::min(best, greedy);

  std::size_t floor = 1;
  if (instance.num_elements() <= kDenseLpLimit &&
      instance.num_candidates() <= kDenseLpLimit) {
    const double tau_star = fractional_cover_lp(instance).dual_bound;
    floor = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tau_star - 1e-7)));
  }
  if (best > floor) best = BranchAndBound(instance, best, floor, options).run();
  if (best > size_cap) {
    throw SizeLimitExceeded("no cover with at most " +
                            std::to_string(size_cap) + " candidates");
  }
  return best;
}

LsReport verify_ls_bound(const CoverInstance& instance, bool compute_tau) {
  instance.require_feasible();
  LsReport r;
  r.max_deg = instance.max_candidate_size();
  if (instance.num_elements() == 0) {
    r.tau = 0;
    r.holds = true;  // vacuous: empty selection, empty ground
    return r;
  }
  const FractionalWeights fw = fractional_cover_lp(instance);
  r.tau_star = fw.total;
  const CoverSelection sel = greedy_cover(instance, fw.dual_bound);
  r.greedy_size = sel.chosen.size();
  r.bound = (1.0 + std::log(static_cast<double>(r.max_deg))) * fw.total;
  // Use the certified lower side of tau* so "holds" is never an artifact of
  // LP round-off.
  r.holds = static_cast<double>(r.greedy_size) < *sel.certificate;
  if (compute_tau) r.tau = exact_cover_bruteforce(instance, r.greedy_size);
  return r;
}

CoverInstance read_cover_instance(std::istream& in) {
  std::string line;
  std::size_t num_elements = 0, num_sets = 0;
  bool have_header = false;
  std::vector<std::vector<ElementId>> sets;
  std::vector<bool> seen;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    auto fail = [&](const std::string& what) {
      throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };
    if (tag == "p") {
      std::string kind;
      if (have_header) fail("duplicate header");
      if (!(ls >> kind >> num_elements >> num_sets) || kind != "cover")
        fail("expected 'p cover <#elements> <#sets>'");
      have_header = true;
      sets.assign(num_sets, {});
      seen.assign(num_sets, false);
    } else if (tag == "s") {
      if (!have_header) fail("set line before header");
      long long id = 0;
      if (!(ls >> id) || id < 1 || static_cast<std::size_t>(id) > num_sets)
        fail("set id must be in 1.." + std::to_string(num_sets));
      if (seen[id - 1]) fail("duplicate set id " + std::to_string(id));
      seen[id - 1] = true;
      long long e = 0;
      while (ls >> e) {
        if (e < 1 || static_cast<std::size_t>(e) > num_elements)
          fail("element id must be in 1.." + std::to_string(num_elements));
        sets[id - 1].push_back(static_cast<ElementId>(e - 1));
      }
      if (!ls.eof()) fail("malformed element list");
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError("missing 'p cover' header");
  for (std::size_t i = 0; i < num_sets; ++i) {
    if (!seen[i]) throw ParseError("set " + std::to_string(i + 1) + " missing");
  }
  return CoverInstance::build(num_elements, std::move(sets));
}

void write_cover_instance(std::ostream& out, const CoverInstance& instance) {
  out << "p cover " << instance.num_elements() << ' '
      << instance.num_candidates() << '\n';
  for (CandidateId c = 0; c < instance.num_candidates(); ++c) {
    out << "s " << c + 1;
    for (ElementId e : instance.members(c)) out << ' ' << e + 1;
    out << '\n';
  }
}

CoverInstance fano_plane() {
  return CoverInstance::build(7, {{0, 1, 2},
                                  {0, 3, 4},
                                  {0, 5, 6},
                                  {1, 3, 5},
                                  {1, 4, 6},
                                  {2, 3, 6},
                                  {2, 4, 5}});
}

CoverInstance random_cover_instance(std::size_t num_elements,
                                    std::size_t num_sets,
                                    std::size_t min_size,
                                    std::size_t max_size,
                                    std::uint64_t seed) {
  if (num_sets == 0 || min_size == 0 || min_size > max_size ||
      max_size > num_elements) {
    throw BadParam("random instance needs 0 < min_size <= max_size <= "
                   "num_elements and at least one set");
  }
  Engine eng = make_stream(seed, "instance");
  std::vector<ElementId> pool(num_elements);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::vector<ElementId>> sets(num_sets);
  std::vector<bool> hit(num_elements, false);
  for (auto& s : sets) {
    const std::size_t size =
        min_size + uniform_index(eng, max_size - min_size + 1);
    shuffle(std::span<ElementId>(pool), eng);
    s.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    for (ElementId e : s) hit[e] = true;
  }
  for (ElementId e = 0; e < num_elements; ++e) {
    if (!hit[e]) sets[uniform_index(eng, num_sets)].push_back(e);
  }
  return CoverInstance::build(num_elements, std::move(sets));
}

}  // namespace covering
