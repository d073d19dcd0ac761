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

#ifndef RICMIG_LP_HPP
#define RICMIG_LP_HPP

#include <limits>
#include <utility>
#include <vector>

namespace ricmig::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kInfeasible;
  double objective = kInf;
  std::vector<double> x;
};

/// Small dense linear program: minimize c'x subject to rows and finite lower
/// bounds. Solved with a two-phase tableau simplex (Dantzig pricing, Bland's
/// rule once pivots stall), which is adequate for the few hundred columns of
/// a node relaxation.
class Problem {
 public:
  /// Returns the column index. `lo` must be finite; `hi` may be kInf.
  int add_variable(double lo, double hi, double cost);
  void add_row(std::vector<std::pair<int, double>> coeffs, Sense sense, double rhs);

  int num_variables() const { return static_cast<int>(lo_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  Result solve(int max_iterations = 0) const;

 private:
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<Row> rows_;
};

}  // namespace ricmig::lp

#endif  // RICMIG_LP_HPP
