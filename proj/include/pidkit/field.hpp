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

#ifndef PIDKIT_FIELD_HPP_
#define PIDKIT_FIELD_HPP_

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pidkit/error.hpp"

namespace pidkit {

// Residues are always kept canonical in [0, p-1].
using Residue = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint32_t next_prime_at_least(std::uint32_t n) {
  if (n < 2) n = 2;
  while (!is_prime(n)) ++n;
  return n;
}

/// The prime field F_p. Construction rejects composite moduli.
class PrimeField {
 public:
  // Keeps p*p inside 64 bits with a wide margin; desk-scale fields are tiny.
  static constexpr std::uint32_t kMaxModulus = 1u << 20;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p > kMaxModulus) {
      throw Error(ErrorCode::kInvalidParameters,
                  "modulus " + std::to_string(p) + " exceeds supported range");
    }
    if (!is_prime(p)) {
      throw Error(ErrorCode::kNotPrime,
                  "modulus " + std::to_string(p) + " is not prime");
    }
  }

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }

  // Extended Euclid on (a, p).
  Residue inv(Residue a) const {
    if (a % p_ == 0) {
      throw Error(ErrorCode::kDivisionByZero, "inverse of zero in F_" +
                                                  std::to_string(p_));
    }
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a % p_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
      std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    return reduce(t);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// An element of a PrimeField. Mixing elements of different fields throws.
class FieldElement {
 public:
  FieldElement(const PrimeField& field, std::int64_t value)
      : field_(field), value_(field.reduce(value)) {}

  const PrimeField& field() const noexcept { return field_; }
  Residue value() const noexcept { return value_; }

  FieldElement inverse() const {
    return FieldElement(field_, field_.inv(value_), Canonical{});
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_), Canonical{}};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_), Canonical{}};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_), Canonical{}};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return a * b.inverse();
  }
  FieldElement operator-() const {
    return {field_, field_.neg(value_), Canonical{}};
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  struct Canonical {};
  FieldElement(const PrimeField& field, Residue value, Canonical)
      : field_(field), value_(value) {}

  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) {
      throw Error(ErrorCode::kFieldMismatch,
                  "F_" + std::to_string(a.field_.modulus()) + " vs F_" +
                      std::to_string(b.field_.modulus()));
    }
  }

  PrimeField field_;
  Residue value_;
};

inline FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  return a + b;
}
inline FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  return a * b;
}
inline FieldElement fe_inv(const FieldElement& a) { return a.inverse(); }

struct EvaluationPoints {
  std::vector<FieldElement> alphas;
  std::vector<FieldElement> betas;
};

/// Alphas are 0..n_alpha-1 and betas continue from n_alpha, so all
/// n_alpha + n_beta values are pairwise distinct.
inline EvaluationPoints distinct_points(const PrimeField& field,
                                        std::size_t n_alpha,
                                        std::size_t n_beta) {
  if (n_alpha + n_beta > field.modulus()) {
    throw Error(ErrorCode::kFieldTooSmall,
                std::to_string(n_alpha + n_beta) + " distinct points needed in F_" +
                    std::to_string(field.modulus()));
  }
  EvaluationPoints pts;
  pts.alphas.reserve(n_alpha);
  pts.betas.reserve(n_beta);
  for (std::size_t i = 0; i < n_alpha; ++i) {
    pts.alphas.emplace_back(field, static_cast<std::int64_t>(i));
  }
  for (std::size_t j = 0; j < n_beta; ++j) {
    pts.betas.emplace_back(field, static_cast<std::int64_t>(n_alpha + j));
  }
  return pts;
}

}  // namespace pidkit

#endif  // PIDKIT_FIELD_HPP_
