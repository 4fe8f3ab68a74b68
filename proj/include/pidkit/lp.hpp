// Copyright 2026 The pidkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIDKIT_LP_HPP_
#define PIDKIT_LP_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/storage.hpp"

namespace pidkit {

/// Exact tableau simplex for  max c.y  s.t.  A y <= b, y >= 0  with b >= 0,
/// so the slack basis is feasible from the start. Bland's rule prevents cycling.
class PackingSimplex {
 public:
  struct Result {
    Rational value;
    std::vector<Rational> primal;  // y
    std::vector<Rational> dual;    // shadow price of each row of A
  };

  PackingSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                 std::vector<Rational> c)
      : rows_(a.size()), vars_(c.size()) {
    for (const auto& bi : b) {
      if (bi < Rational(0)) throw Error(ErrorCode::kInvalidParameters, "negative right-hand side");
    }
    tableau_.assign(rows_ + 1, std::vector<Rational>(vars_ + rows_ + 1, Rational(0)));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != vars_) throw Error(ErrorCode::kDimensionMismatch, "ragged LP row");
      for (std::size_t j = 0; j < vars_; ++j) tableau_[i][j] = a[i][j];
      tableau_[i][vars_ + i] = Rational(1);
      tableau_[i].back() = b[i];
      basis_.push_back(vars_ + i);
    }
    // Objective row holds reduced costs c_j - z_j; the last cell is -value.
    for (std::size_t j = 0; j < vars_; ++j) tableau_[rows_][j] = c[j];
  }

  Result solve() {
    const std::size_t width = vars_ + rows_;
    for (;;) {
      std::size_t enter = width;
      for (std::size_t j = 0; j < width; ++j) {
        if (tableau_[rows_][j] > Rational(0)) {
          enter = j;
          break;
        }
      }
      if (enter == width) break;
      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tableau_[i][enter] <= Rational(0)) continue;
        const Rational ratio = tableau_[i].back() / tableau_[i][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) throw Error(ErrorCode::kInvalidParameters, "LP is unbounded");
      pivot(leave, enter);
    }
    Result res;
    res.value = -tableau_[rows_].back();
    res.primal.assign(vars_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) res.primal[basis_[i]] = tableau_[i].back();
    }
    for (std::size_t i = 0; i < rows_; ++i) res.dual.push_back(-tableau_[rows_][vars_ + i]);
    return res;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = Rational(1) / tableau_[r][c];
    for (auto& x : tableau_[r]) x *= inv;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r || tableau_[i][c] == Rational(0)) continue;
      const Rational factor = tableau_[i][c];
      for (std::size_t j = 0; j < tableau_[i].size(); ++j) {
        if (tableau_[r][j] != Rational(0)) tableau_[i][j] -= factor * tableau_[r][j];
      }
    }
    basis_[r] = c;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<std::size_t> basis_;
};

struct DownloadSolution {
  Rational value;                  // min sum of D_n per unit message length
  std::vector<Rational> downloads; // an optimal D_n, per server
  std::vector<Rational> weights;   // multipliers on each constraint; they sum to value
};

/// min sum_n D_n  s.t.  sum_{n in S} D_n >= 1 for every S,  D >= 0.
///
/// Solved through its dual packing LP (max sum y_S, sum_{S containing n} y_S <= 1),
/// whose optimal y are exactly the weights with which the constraints can be
/// added up to prove the bound.
inline DownloadSolution solve_min_download(const std::vector<IndexSet>& constraints,
                                           std::size_t n_servers) {
  if (constraints.empty()) throw Error(ErrorCode::kInvalidParameters, "no constraints");
  for (const auto& s : constraints) {
    if (s.empty()) throw Error(ErrorCode::kInvalidDesign, "empty constraint is unsatisfiable");
    for (std::size_t n : s) {
      if (n < 1 || n > n_servers) {
        throw Error(ErrorCode::kIndexOutOfRange, "server " + std::to_string(n) + " in constraint");
      }
    }
  }
  std::vector<std::vector<Rational>> a(n_servers,
                                       std::vector<Rational>(constraints.size(), Rational(0)));
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    for (std::size_t n : constraints[j]) a[n - 1][j] = Rational(1);
  }
  PackingSimplex lp(std::move(a), std::vector<Rational>(n_servers, Rational(1)),
                    std::vector<Rational>(constraints.size(), Rational(1)));
  auto res = lp.solve();
  return {res.value, std::move(res.dual), std::move(res.primal)};
}

inline Rational min_download(const std::vector<IndexSet>& constraints, std::size_t n_servers) {
  return solve_min_download(constraints, n_servers).value;
}

}  // namespace pidkit

#endif  // PIDKIT_LP_HPP_
