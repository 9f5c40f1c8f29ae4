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

// Dense tableau simplex for small linear programs in inequality form
//
//     maximize    c^T x
//     subject to  A x <= b,  x >= 0.
//
// Exact scalars pivot by Bland's rule (lowest-index entering column,
// lowest-index leaving basic variable on ratio ties), which cannot cycle;
// floating point uses a stabler rule described at optimize(). Rows with a
// negative right-hand side trigger an auxiliary-variable phase one. The
// solver is templated on the scalar so the same code runs in double and in
// exact rational arithmetic. In floating point the tableau is rebuilt from
// the original data and the current basis every `refactor_interval` pivots
// and again before optimality is declared, so round-off cannot accumulate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace covering::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(Status status);

template <typename Scalar>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, Scalar(0)) {}
  Scalar& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
};

template <typename Scalar>
struct Result {
  Status status = Status::kInfeasible;
  Scalar objective = Scalar(0);
  std::vector<Scalar> x;     // primal solution, size = #columns of A
  std::vector<Scalar> dual;  // multipliers of the rows of A, all >= 0
  std::size_t pivots = 0;
};

struct Options {
  double eps = 1e-11;  // ignored for exact scalars
  std::size_t max_pivots = 1'000'000;
  // Floating point only.
  std::size_t refactor_interval = 64;
  double pivot_tol = 1e-9;     // smallest acceptable pivot element
  double perturbation = 1e-7;  // relative right-hand-side perturbation
};

namespace detail {

template <typename Scalar>
inline constexpr bool kInexact = std::is_floating_point_v<Scalar>;

template <typename Scalar>
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t total_vars)
      : m_(m), width_(total_vars + 1), cells_((m + 1) * (total_vars + 1)),
        basis_(m), blocked_(total_vars, false) {}

  Scalar& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
  Scalar& rhs(std::size_t i) { return at(i, width_ - 1); }
  Scalar& obj(std::size_t j) { return at(m_, j); }
  std::size_t vars() const { return width_ - 1; }
  std::size_t rows() const { return m_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& blocked() { return blocked_; }

  void pivot(std::size_t r, std::size_t e) {
    const Scalar p = at(r, e);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, e) = Scalar(1);
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const Scalar f = at(i, e);
      if (f == Scalar(0)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        const Scalar& v = at(r, j);
        if (v != Scalar(0)) at(i, j) -= f * v;
      }
      at(i, e) = Scalar(0);
    }
    basis_[r] = e;
  }

  // Pivots until optimal or unbounded, or until `budget` pivots have been
  // made (reported as kIterationLimit). Exact scalars use Bland's rule
  // throughout. Floating point enters on the largest reduced cost and, among
  // rows tied in the ratio test, leaves on the largest pivot element; after
  // a run of degenerate pivots it reverts to Bland's order until the
  // objective moves again, so it cannot cycle either.
  Status optimize(const Options& opt, std::size_t& pivots,
                  std::size_t budget = std::numeric_limits<std::size_t>::max()) {
    constexpr std::size_t kDegenerateRun = 50;
    for (std::size_t done = 0;; ++done) {
      const bool bland = !kInexact<Scalar> || stalled_ >= kDegenerateRun;
      std::size_t enter = vars();
      for (std::size_t j = 0; j < vars(); ++j) {
        if (blocked_[j] || !positive(obj(j), opt)) continue;
        if (enter == vars() || (!bland && obj(j) > obj(enter))) enter = j;
        if (bland) break;
      }
      if (enter == vars()) return Status::kOptimal;
      const std::size_t leave = choose_leaving(enter, bland, opt);
      if (leave == m_) return Status::kUnbounded;
      if (pivots >= opt.max_pivots || done >= budget)
        return Status::kIterationLimit;
      const Scalar before = rhs(m_);
      pivot(leave, enter);
      ++pivots;
      if constexpr (kInexact<Scalar>) {
        // rhs(m_) is minus the objective; it decreases on progress.
        if (rhs(m_) < before - static_cast<Scalar>(opt.eps)) {
          stalled_ = 0;
        } else {
          ++stalled_;
        }
      }
    }
  }

  std::size_t choose_leaving(std::size_t enter, bool bland,
                             const Options& opt) {
    std::size_t leave = m_;
    if constexpr (!kInexact<Scalar>) {
      Scalar best_ratio{};
      for (std::size_t i = 0; i < m_; ++i) {
        const Scalar& a = at(i, enter);
        if (!positive(a, opt)) continue;
        Scalar ratio = rhs(i) / a;
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      return leave;
    } else {
      const Scalar tol = static_cast<Scalar>(opt.pivot_tol);
      Scalar min_ratio = std::numeric_limits<Scalar>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const Scalar a = at(i, enter);
        if (a > tol) min_ratio = std::min(min_ratio, std::max(rhs(i), Scalar(0)) / a);
      }
      if (!std::isfinite(min_ratio)) return m_;
      // Rows tied with the minimum ratio up to round-off.
      Scalar largest = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const Scalar a = at(i, enter);
        if (a > tol && std::max(rhs(i), Scalar(0)) / a <= min_ratio + tol)
          largest = std::max(largest, a);
      }
      for (std::size_t i = 0; i < m_; ++i) {
        const Scalar a = at(i, enter);
        if (!(a > tol) || std::max(rhs(i), Scalar(0)) / a > min_ratio + tol)
          continue;
        if (bland) {
          // Lowest basic index among the well-conditioned tied rows.
          if (a >= 1e-3 * largest &&
              (leave == m_ || basis_[i] < basis_[leave]))
            leave = i;
        } else if (leave == m_ || a > at(leave, enter) ||
                   (a == at(leave, enter) && basis_[i] < basis_[leave])) {
          leave = i;
        }
      }
      return leave;
    }
  }

  // Recomputes every row from the original constraint matrix `full`
  // (m x vars), right-hand side `b` and costs `cost` for the current basis.
  // Returns false if the basis matrix is numerically singular.
  bool rebuild(const Eigen::MatrixXd& full, const Eigen::VectorXd& b,
               const Eigen::VectorXd& cost) {
    Eigen::MatrixXd basis_cols(m_, m_);
    Eigen::VectorXd cb(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_cols.col(i) = full.col(basis_[i]);
      cb(i) = cost(basis_[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_cols);
    if (!lu.isInvertible()) return false;
    const Eigen::MatrixXd body = lu.solve(full);
    const Eigen::VectorXd beta = lu.solve(b);
    const Eigen::RowVectorXd reduced = cost.transpose() - cb.transpose() * body;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < vars(); ++j) at(i, j) = body(i, j);
      at(i, basis_[i]) = Scalar(1);
      rhs(i) = beta(i);
    }
    for (std::size_t j = 0; j < vars(); ++j) obj(j) = reduced(j);
    for (std::size_t i = 0; i < m_; ++i) obj(basis_[i]) = Scalar(0);
    rhs(m_) = -cb.dot(beta);
    return true;
  }

  static bool positive(const Scalar& v, const Options& opt) {
    if constexpr (kInexact<Scalar>) {
      return v > static_cast<Scalar>(opt.eps);
    } else {
      return v > Scalar(0);
    }
  }
  static bool nonzero(const Scalar& v, const Options& opt) {
    if constexpr (kInexact<Scalar>) {
      return std::abs(v) > static_cast<Scalar>(opt.eps);
    } else {
      return v != Scalar(0);
    }
  }

 private:
  std::size_t m_;
  std::size_t width_;
  std::vector<Scalar> cells_;
  std::vector<std::size_t> basis_;
  std::vector<bool> blocked_;
  // Consecutive degenerate pivots; kept across rebuilds.
  std::size_t stalled_ = 0;
};

}  // namespace detail

// Dual simplex on a dual feasible floating-point tableau until every basic
// value is nonnegative up to the pivot tolerance.
template <typename Scalar>
Status dual_repair(detail::Tableau<Scalar>& t, const Options& opt, std::size_t& pivots,
                   const Eigen::MatrixXd& full, const Eigen::VectorXd& b,
                   const Eigen::VectorXd& cost) {
  const std::size_t m = t.rows();
  for (std::size_t done = 0;; ++done) {
    std::size_t r = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.rhs(i) < -opt.pivot_tol && (r == m || t.rhs(i) < t.rhs(r))) r = i;
    }
    if (r == m) return Status::kOptimal;
    std::size_t enter = t.vars();
    Scalar best{};
    for (std::size_t j = 0; j < t.vars(); ++j) {
      const Scalar a = t.at(r, j);
      if (t.blocked()[j] || !(a < -opt.pivot_tol)) continue;
      const Scalar ratio = std::min(t.obj(j), Scalar(0)) / a;
      if (enter == t.vars() || ratio < best - opt.pivot_tol ||
          (ratio <= best + opt.pivot_tol && a < t.at(r, enter))) {
        enter = j;
        best = ratio;
      }
    }
    if (enter == t.vars()) return Status::kInfeasible;
    if (pivots >= opt.max_pivots) return Status::kIterationLimit;
    t.pivot(r, enter);
    ++pivots;
    if ((done + 1) % opt.refactor_interval == 0 && !t.rebuild(full, b, cost))
      return Status::kIterationLimit;
  }
}

template <typename Scalar>
Result<Scalar> maximize(const DenseMatrix<Scalar>& a,
                        const std::vector<Scalar>& b,
                        const std::vector<Scalar>& c,
                        const Options& opt = {}) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  // Columns: [0, n) structural, [n, n + m) slacks, n + m auxiliary.
  const std::size_t aux = n + m;
  detail::Tableau<Scalar> t(m, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = a(i, j);
    t.at(i, n + i) = Scalar(1);
    t.at(i, aux) = Scalar(-1);
    t.rhs(i) = b[i];
    t.basis()[i] = n + i;
  }

  Result<Scalar> result;
  // Floating point only: original data for tableau rebuilds.
  Eigen::MatrixXd full;
  Eigen::VectorXd rhs_full;
  if constexpr (detail::kInexact<Scalar>) {
    full = Eigen::MatrixXd::Zero(m, n + m + 1);
    rhs_full.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) full(i, j) = a(i, j);
      full(i, n + i) = 1.0;
      full(i, aux) = -1.0;
      // A small deterministic spread of the right-hand side keeps the
      // heavily degenerate covering LPs from stalling. It is removed again
      // once the perturbed problem is optimal.
      const double spread = 1.0 + std::fmod(0.6180339887498949 * double(i), 1.0);
      rhs_full(i) = b[i] + opt.perturbation * spread * std::max(1.0, std::abs(b[i]));
      t.rhs(i) = rhs_full(i);
    }
  }
  auto run = [&](const Eigen::VectorXd& cost) {
    if constexpr (!detail::kInexact<Scalar>) {
      return t.optimize(opt, result.pivots);
    } else {
      for (int confirmations = 0;;) {
        Status s = t.optimize(opt, result.pivots, opt.refactor_interval);
        const bool budget_hit = s == Status::kIterationLimit &&
                                result.pivots < opt.max_pivots;
        if (s != Status::kOptimal && !budget_hit) return s;
        if (!t.rebuild(full, rhs_full, cost)) return s;
        if (s == Status::kOptimal) {
          // Stop once a fresh tableau confirms optimality.
          bool improving = false;
          for (std::size_t j = 0; j < t.vars() && !improving; ++j)
            improving = !t.blocked()[j] && t.positive(t.obj(j), opt);
          if (!improving || ++confirmations > 8) return Status::kOptimal;
        }
      }
    }
  };
  std::size_t worst = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.rhs(i) < Scalar(0) && (worst == m || t.rhs(i) < t.rhs(worst)))
      worst = i;
  }

  if (worst != m) {
    // Phase one: maximize -aux.
    t.obj(aux) = Scalar(-1);
    t.pivot(worst, aux);
    ++result.pivots;
    Eigen::VectorXd phase_one_cost;
    if constexpr (detail::kInexact<Scalar>) {
      phase_one_cost = Eigen::VectorXd::Zero(n + m + 1);
      phase_one_cost(aux) = -1.0;
    }
    Status s = run(phase_one_cost);
    if (s == Status::kIterationLimit) {
      result.status = s;
      return result;
    }
    // obj rhs holds -value; value = -aux.
    const Scalar value = -t.rhs(m);
    if (detail::Tableau<Scalar>::positive(-value, opt)) {
      result.status = Status::kInfeasible;
      return result;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] != aux) continue;
      for (std::size_t j = 0; j < aux; ++j) {
        if (detail::Tableau<Scalar>::nonzero(t.at(i, j), opt)) {
          t.pivot(i, j);
          ++result.pivots;
          break;
        }
      }
      // A row whose only nonzero is the auxiliary column is redundant; it
      // stays in the tableau with aux pinned at zero by the blocked flag.
    }
    for (std::size_t j = 0; j <= aux; ++j) t.obj(j) = Scalar(0);
    t.rhs(m) = Scalar(0);
  }
  t.blocked()[aux] = true;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bv = t.basis()[i];
    const Scalar cb = bv < n ? c[bv] : Scalar(0);
    if (cb == Scalar(0)) continue;
    for (std::size_t j = 0; j <= aux + 1; ++j) t.at(m, j) -= cb * t.at(i, j);
  }

  Eigen::VectorXd cost;
  if constexpr (detail::kInexact<Scalar>) {
    cost = Eigen::VectorXd::Zero(n + m + 1);
    for (std::size_t j = 0; j < n; ++j) cost(j) = c[j];
  }
  Status s = run(cost);
  if constexpr (detail::kInexact<Scalar>) {
    // Drop the perturbation. The basis stays dual feasible; a few dual
    // simplex pivots repair any primal infeasibility it leaves behind.
    for (std::size_t i = 0; i < m; ++i) rhs_full(i) = b[i];
    for (int round = 0; s == Status::kOptimal && round < 8; ++round) {
      if (!t.rebuild(full, rhs_full, cost)) break;
      s = dual_repair(t, opt, result.pivots, full, rhs_full, cost);
      if (s != Status::kOptimal) break;
      s = run(cost);
      bool feasible = true;
      for (std::size_t i = 0; i < m && feasible; ++i)
        feasible = t.rhs(i) >= -opt.pivot_tol;
      if (s == Status::kOptimal && feasible) break;
    }
  }
  result.status = s;
  if (s != Status::kOptimal) return result;

  result.objective = -t.rhs(m);
  result.x.assign(n, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < n) result.x[t.basis()[i]] = t.rhs(i);
  }
  result.dual.assign(m, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) result.dual[i] = -t.obj(n + i);
  return result;
}

}  // namespace covering::lp
