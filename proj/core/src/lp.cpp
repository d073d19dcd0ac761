// Copyright 2026 The ricmig Authors
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

#include "ricmig/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ricmig::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kStallLimit = 30;

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), a_(static_cast<std::size_t>(rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return a_[static_cast<std::size_t>(r) * (n_ + 1) + c]; }
  double at(int r, int c) const { return a_[static_cast<std::size_t>(r) * (n_ + 1) + c]; }
  double& rhs(int r) { return at(r, n_); }
  // Row m_ holds reduced costs; its rhs cell is minus the objective.
  double& cost(int c) { return at(m_, c); }

  int rows() const { return m_; }
  int cols() const { return n_; }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= n_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      double* row = &a_[static_cast<std::size_t>(r) * (n_ + 1)];
      const double* prow = &a_[static_cast<std::size_t>(pr) * (n_ + 1)];
      for (int c = 0; c <= n_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
  }

 private:
  int m_;
  int n_;
  std::vector<double> a_;
};

// Runs primal simplex on the tableau over the columns allowed by `usable`.
// Returns kOptimal, kUnbounded or kIterationLimit.
Status run_simplex(Tableau& t, std::vector<int>& basis, const std::vector<bool>& usable,
                   int& budget) {
  int stall = 0;
  double last_obj = t.at(t.rows(), t.cols());
  while (true) {
    if (budget-- <= 0) return Status::kIterationLimit;
    const bool bland = stall >= kStallLimit;
    int pc = -1;
    double best = -kCostTol;
    for (int c = 0; c < t.cols(); ++c) {
      if (!usable[c]) continue;
      const double d = t.at(t.rows(), c);
      if (d < best) {
        pc = c;
        if (bland) break;
        best = d;
      }
    }
    if (pc < 0) return Status::kOptimal;

    int pr = -1;
    double best_ratio = kInf;
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, pc);
      if (a <= kPivotTol) continue;
      const double ratio = t.at(r, t.cols()) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && pr >= 0 && basis[r] < basis[pr])) {
        best_ratio = ratio;
        pr = r;
      }
    }
    if (pr < 0) return Status::kUnbounded;
    t.pivot(pr, pc);
    basis[pr] = pc;
    const double obj = t.at(t.rows(), t.cols());
    stall = std::fabs(obj - last_obj) <= 1e-12 * std::max(1.0, std::fabs(obj)) ? stall + 1 : 0;
    last_obj = obj;
  }
}

}  // namespace

int Problem::add_variable(double lo, double hi, double cost) {
  if (!std::isfinite(lo)) throw std::invalid_argument("lp: lower bounds must be finite");
  if (hi < lo) throw std::invalid_argument("lp: empty variable domain");
  lo_.push_back(lo);
  hi_.push_back(hi);
  cost_.push_back(cost);
  return static_cast<int>(lo_.size()) - 1;
}

void Problem::add_row(std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs) {
  rows_.push_back(Row{std::move(coeffs), sense, rhs});
}

Result Problem::solve(int max_iterations) const {
  const int nv = num_variables();
  // Column map: fixed variables are substituted out.
  std::vector<int> col(nv, -1);
  int ny = 0;
  double const_obj = 0.0;
  for (int j = 0; j < nv; ++j) {
    const_obj += cost_[j] * lo_[j];
    if (hi_[j] > lo_[j]) col[j] = ny++;
  }

  struct StdRow {
    std::vector<std::pair<int, double>> coeffs;  // over shifted columns
    Sense sense;
    double rhs;
  };
  std::vector<StdRow> rows;
  rows.reserve(rows_.size() + ny);
  for (const Row& row : rows_) {
    StdRow sr{{}, row.sense, row.rhs};
    for (const auto& [j, a] : row.coeffs) {
      if (a == 0.0) continue;
      sr.rhs -= a * lo_[j];
      if (col[j] >= 0) sr.coeffs.emplace_back(col[j], a);
    }
    if (sr.coeffs.empty()) {
      const bool ok = (sr.sense == Sense::kLessEqual && sr.rhs >= -kFeasTol) ||
                      (sr.sense == Sense::kGreaterEqual && sr.rhs <= kFeasTol) ||
                      (sr.sense == Sense::kEqual && std::fabs(sr.rhs) <= kFeasTol);
      if (!ok) return Result{Status::kInfeasible, kInf, {}};
      continue;
    }
    rows.push_back(std::move(sr));
  }
  for (int j = 0; j < nv; ++j) {
    if (col[j] >= 0 && std::isfinite(hi_[j])) {
      rows.push_back(StdRow{{{col[j], 1.0}}, Sense::kLessEqual, hi_[j] - lo_[j]});
    }
  }
  for (StdRow& r : rows) {
    if (r.rhs < 0.0) {
      r.rhs = -r.rhs;
      for (auto& c : r.coeffs) c.second = -c.second;
      if (r.sense == Sense::kLessEqual) {
        r.sense = Sense::kGreaterEqual;
      } else if (r.sense == Sense::kGreaterEqual) {
        r.sense = Sense::kLessEqual;
      }
    }
  }

  const int m = static_cast<int>(rows.size());
  int n_slack = 0;
  int n_art = 0;
  for (const StdRow& r : rows) {
    if (r.sense != Sense::kEqual) ++n_slack;
    if (r.sense != Sense::kLessEqual) ++n_art;
  }
  const int n_cols = ny + n_slack + n_art;
  Tableau t(m, n_cols);
  std::vector<int> basis(m, -1);
  std::vector<bool> is_art(n_cols, false);
  int next_slack = ny;
  int next_art = ny + n_slack;
  for (int i = 0; i < m; ++i) {
    for (const auto& [c, a] : rows[i].coeffs) t.at(i, c) += a;
    t.rhs(i) = rows[i].rhs;
    if (rows[i].sense == Sense::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (rows[i].sense == Sense::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      is_art[next_art] = true;
      basis[i] = next_art++;
    }
  }

  int budget = max_iterations > 0 ? max_iterations : 50 * (m + n_cols) + 1000;
  std::vector<bool> usable(n_cols, true);

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    for (int c = 0; c <= n_cols; ++c) t.at(m, c) = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!is_art[basis[i]]) continue;
      for (int c = 0; c <= n_cols; ++c) t.at(m, c) -= t.at(i, c);
    }
    for (int c = 0; c < n_cols; ++c) {
      if (is_art[c]) t.at(m, c) = 0.0;
    }
    const Status s1 = run_simplex(t, basis, usable, budget);
    if (s1 == Status::kIterationLimit) return Result{Status::kIterationLimit, kInf, {}};
    if (-t.at(m, n_cols) > kFeasTol * std::max(1.0, static_cast<double>(m))) {
      return Result{Status::kInfeasible, kInf, {}};
    }
    // Drive remaining zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (!is_art[basis[i]]) continue;
      int pc = -1;
      double best = kPivotTol;
      for (int c = 0; c < n_cols; ++c) {
        if (is_art[c]) continue;
        if (std::fabs(t.at(i, c)) > best) {
          best = std::fabs(t.at(i, c));
          pc = c;
        }
      }
      if (pc >= 0) {
        t.pivot(i, pc);
        basis[i] = pc;
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
    for (int c = 0; c < n_cols; ++c) usable[c] = !is_art[c];
  }

  // Phase 2 objective in reduced form.
  for (int c = 0; c <= n_cols; ++c) t.at(m, c) = 0.0;
  for (int j = 0; j < nv; ++j) {
    if (col[j] >= 0) t.at(m, col[j]) = cost_[j];
  }
  for (int i = 0; i < m; ++i) {
    const int b = basis[i];
    const double cb = t.at(m, b);
    if (cb == 0.0) continue;
    for (int c = 0; c <= n_cols; ++c) t.at(m, c) -= cb * t.at(i, c);
  }
  const Status s2 = run_simplex(t, basis, usable, budget);
  if (s2 != Status::kOptimal) return Result{s2, s2 == Status::kUnbounded ? -kInf : kInf, {}};

  std::vector<double> y(n_cols, 0.0);
  for (int i = 0; i < m; ++i) y[basis[i]] = t.at(i, n_cols);
  Result res;
  res.status = Status::kOptimal;
  res.x.resize(nv);
  double obj = const_obj;
  for (int j = 0; j < nv; ++j) {
    res.x[j] = lo_[j] + (col[j] >= 0 ? std::max(0.0, y[col[j]]) : 0.0);
    if (col[j] >= 0) obj += cost_[j] * (res.x[j] - lo_[j]);
  }
  res.objective = obj;
  return res;
}

}  // namespace ricmig::lp
