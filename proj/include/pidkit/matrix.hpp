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

#ifndef PIDKIT_MATRIX_HPP_
#define PIDKIT_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/field.hpp"

namespace pidkit {

// 1-based index vector, as used for row/column selection.
using IndexVector = std::vector<std::size_t>;

/// Dense row-major matrix over a prime field.
///
/// Element access through operator() is 0-based (it is the storage view);
/// every selection API that takes an IndexVector is 1-based.
class MatrixFp {
 public:
  MatrixFp(const PrimeField& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static MatrixFp identity(const PrimeField& field, std::size_t n) {
    MatrixFp m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Entries are reduced mod p, so negative literals are accepted.
  static MatrixFp from_rows(const PrimeField& field,
                            const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    MatrixFp m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "ragged row " + std::to_string(i + 1));
      }
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.reduce(rows[i][j]);
    }
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  FieldElement element(std::size_t r, std::size_t c) const {
    return FieldElement(field_, (*this)(r, c));
  }

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
  }

  bool row_is_zero(std::size_t r) const {
    auto rw = row(r);
    return std::all_of(rw.begin(), rw.end(), [](Residue v) { return v == 0; });
  }

  std::vector<std::vector<std::int64_t>> to_rows() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const MatrixFp&, const MatrixFp&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

inline MatrixFp mat_mul(const MatrixFp& a, const MatrixFp& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::kFieldMismatch, "mat_mul over different fields");
  }
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " times " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
  const auto& f = a.field();
  const std::uint64_t p = f.modulus();
  MatrixFp out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) {
        acc = (acc + static_cast<std::uint64_t>(a(i, t)) * b(t, j)) % p;
      }
      out(i, j) = static_cast<Residue>(acc);
    }
  }
  return out;
}

/// y = m * x for a column vector x of residues.
inline std::vector<Residue> mat_vec(const MatrixFp& m, std::span<const Residue> x) {
  if (x.size() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector of length " + std::to_string(x.size()) + " against " +
                    std::to_string(m.cols()) + " columns");
  }
  const std::uint64_t p = m.field().modulus();
  std::vector<Residue> y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      acc = (acc + static_cast<std::uint64_t>(m(i, j)) * x[j]) % p;
    }
    y[i] = static_cast<Residue>(acc);
  }
  return y;
}

/// V(i, j) = 1 / (alpha_i - beta_j).
inline MatrixFp cauchy(std::span<const FieldElement> alphas,
                       std::span<const FieldElement> betas) {
  if (alphas.empty() && betas.empty()) {
    throw Error(ErrorCode::kInvalidPoints, "no evaluation points");
  }
  const PrimeField field = alphas.empty() ? betas.front().field() : alphas.front().field();
  auto distinct = [](std::span<const FieldElement> pts) {
    std::vector<Residue> v;
    for (const auto& e : pts) v.push_back(e.value());
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(alphas) || !distinct(betas)) {
    throw Error(ErrorCode::kInvalidPoints, "repeated evaluation point");
  }
  MatrixFp v(field, alphas.size(), betas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      FieldElement diff = alphas[i] - betas[j];
      if (diff.value() == 0) {
        throw Error(ErrorCode::kInvalidPoints,
                    "alpha_" + std::to_string(i + 1) + " equals beta_" +
                        std::to_string(j + 1));
      }
      v(i, j) = diff.inverse().value();
    }
  }
  return v;
}

/// Rows and columns are taken in the order given (1-based).
inline MatrixFp submatrix(const MatrixFp& m, const IndexVector& row_idx,
                          const IndexVector& col_idx) {
  auto check = [](const IndexVector& idx, std::size_t bound, const char* what) {
    for (std::size_t i : idx) {
      if (i < 1 || i > bound) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    std::string(what) + " index " + std::to_string(i) +
                        " outside [1:" + std::to_string(bound) + "]");
      }
    }
  };
  check(row_idx, m.rows(), "row");
  check(col_idx, m.cols(), "column");
  MatrixFp out(m.field(), row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      out(i, j) = m(row_idx[i] - 1, col_idx[j] - 1);
  return out;
}

/// (first:last) as a 1-based index vector; empty when last < first.
inline IndexVector index_range(std::size_t first, std::size_t last) {
  IndexVector v;
  for (std::size_t i = first; i <= last; ++i) v.push_back(i);
  return v;
}

inline MatrixFp hstack(const MatrixFp& a, const MatrixFp& b) {
  if (a.rows() != b.rows() || !(a.field() == b.field())) {
    throw Error(ErrorCode::kDimensionMismatch, "hstack row counts differ");
  }
  MatrixFp out(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline MatrixFp vstack(const MatrixFp& a, const MatrixFp& b) {
  if (a.cols() != b.cols() || !(a.field() == b.field())) {
    throw Error(ErrorCode::kDimensionMismatch, "vstack column counts differ");
  }
  MatrixFp out(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

namespace detail {

// Row-reduces m in place (first nonzero pivot) and returns the rank.
inline std::size_t row_reduce(MatrixFp& m) {
  const auto& f = m.field();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
    }
    const Residue scale = f.inv(m(rank, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(rank, j) = f.mul(m(rank, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, c) == 0) continue;
      const Residue factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline std::size_t rank(const MatrixFp& m) {
  MatrixFp work = m;
  return detail::row_reduce(work);
}

/// Gauss-Jordan on [m | I].
inline MatrixFp inverse(const MatrixFp& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  }
  const std::size_t n = m.rows();
  MatrixFp aug = hstack(m, MatrixFp::identity(m.field(), n));
  detail::row_reduce(aug);
  for (std::size_t i = 0; i < n; ++i) {
    if (aug(i, i) != 1) {
      throw Error(ErrorCode::kSingularMatrix,
                  std::to_string(n) + "x" + std::to_string(n) + " matrix is singular");
    }
  }
  return submatrix(aug, index_range(1, n), index_range(n + 1, 2 * n));
}

/// Right null-space complement of a systematic decoder g = [I_L | V]:
/// returns H = [V; -I] so that g * H = 0.
inline MatrixFp solve_H(const MatrixFp& g) {
  const std::size_t l = g.rows();
  const std::size_t total = g.cols();
  if (total < l) {
    throw Error(ErrorCode::kUnsupportedForm, "decoder has fewer columns than rows");
  }
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      if (g(i, j) != (i == j ? 1u : 0u)) {
        throw Error(ErrorCode::kUnsupportedForm, "decoder is not of the form [I | V]");
      }
    }
  }
  const auto& f = g.field();
  MatrixFp h(f, total, total - l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < total - l; ++j) h(i, j) = g(i, l + j);
  for (std::size_t j = 0; j < total - l; ++j) h(l + j, j) = f.neg(1);
  return h;
}

}  // namespace pidkit

#endif  // PIDKIT_MATRIX_HPP_
