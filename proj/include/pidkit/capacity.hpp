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

#ifndef PIDKIT_CAPACITY_HPP_
#define PIDKIT_CAPACITY_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "pidkit/error.hpp"
#include "pidkit/rational.hpp"

namespace pidkit {

namespace detail {

inline void check_km(std::int64_t k, std::int64_t m) {
  if (k < 1 || m < 1 || m > k) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= M <= K, got K=" + std::to_string(k) + " M=" + std::to_string(m));
  }
}

}  // namespace detail

/// Smallest number of servers that can store all K messages.
inline std::int64_t min_servers(std::int64_t k, std::int64_t m) {
  detail::check_km(k, m);
  return ceil_div(k, m);
}

/// Server count at and above which the rate M/K is achievable.
inline std::int64_t threshold_N(std::int64_t k, std::int64_t m) {
  detail::check_km(k, m);
  const std::int64_t g = std::gcd(k, m);
  return k / g - (m / g - 1) * (k / m - 1);
}

/// Replication factor of the intermediate-regime scheme.
inline std::int64_t theorem3_l(std::int64_t k, std::int64_t m, std::int64_t n) {
  detail::check_km(k, m);
  if (k % m == 0) {
    throw Error(ErrorCode::kInvalidParameters, "K/M is an integer");
  }
  if (n < ceil_div(k, m)) {
    throw Error(ErrorCode::kInvalidParameters,
                "N=" + std::to_string(n) + " below ceil(K/M)");
  }
  const std::int64_t q = k / m;
  return (n - q + 1) * m / (k - (q - 1) * m);
}

inline Rational theorem3_rate(std::int64_t k, std::int64_t m, std::int64_t n) {
  const std::int64_t l = theorem3_l(k, m, n);
  return Rational(l, n + (l - 1) * (k / m - 1));
}

struct LowerBound {
  Rational rate;
  std::int64_t witness_N;
};

/// Best achievable rate using at most N servers, and the smallest server count
/// that attains it.
inline LowerBound best_lower_bound(std::int64_t k, std::int64_t m, std::int64_t n) {
  const std::int64_t n_min = min_servers(k, m);
  if (n < n_min) {
    throw Error(ErrorCode::kInvalidParameters,
                "N=" + std::to_string(n) + " cannot store K=" + std::to_string(k) +
                    " messages at M=" + std::to_string(m) + " per server");
  }
  const std::int64_t thr = threshold_N(k, m);
  if (k % m == 0) return {Rational(m, k), thr};
  LowerBound best{Rational(0), 0};
  for (std::int64_t np = n_min; np <= std::min(n, thr); ++np) {
    Rational r;
    if (np == n_min) {
      r = Rational(1, n_min);
    } else if (np == thr) {
      r = Rational(m, k);
    } else {
      r = theorem3_rate(k, m, np);
    }
    if (r > best.rate) best = {r, np};
  }
  return best;
}

enum class Regime { kInfeasible, kTightAtNMin, kIntermediate, kFullRate };

inline std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kInfeasible: return "infeasible";
    case Regime::kTightAtNMin: return "tight-at-N-min";
    case Regime::kIntermediate: return "intermediate";
    case Regime::kFullRate: return "full-rate";
  }
  return "unknown";
}

struct CapacityReport {
  std::int64_t K = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;
  bool feasible = false;
  Rational lower{0};
  Rational upper{0};
  std::optional<Rational> exact;
  Regime regime = Regime::kInfeasible;
  std::int64_t witness_N = 0;  // server count of the best scheme; 0 if infeasible
};

/// Closed-form bounds only. In the intermediate regime `exact` stays empty even
/// when a converse search could settle it.
inline CapacityReport capacity_report(std::int64_t k, std::int64_t m, std::int64_t n) {
  detail::check_km(k, m);
  CapacityReport rep;
  rep.K = k;
  rep.M = m;
  rep.N = n;
  const std::int64_t n_min = min_servers(k, m);
  if (n < n_min) {
    rep.exact = Rational(0);
    return rep;
  }
  rep.feasible = true;
  const LowerBound lb = best_lower_bound(k, m, n);
  rep.lower = lb.rate;
  rep.witness_N = lb.witness_N;
  rep.upper = Rational(m, k);
  if (n >= threshold_N(k, m)) {
    rep.regime = Regime::kFullRate;
  } else if (n == n_min) {
    rep.regime = Regime::kTightAtNMin;
    rep.upper = Rational(1, n_min);
  } else {
    rep.regime = Regime::kIntermediate;
  }
  if (rep.lower == rep.upper) rep.exact = rep.lower;
  return rep;
}

}  // namespace pidkit

#endif  // PIDKIT_CAPACITY_HPP_
