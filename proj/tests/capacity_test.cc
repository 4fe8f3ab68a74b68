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

#include <cstdint>
#include <numeric>
#include <optional>

#include <gtest/gtest.h>

#include "pidkit/builders.hpp"
#include "pidkit/capacity.hpp"

namespace pidkit {
namespace {

// Three-branch capacity for M = 2 and odd K.
Rational two_per_server_capacity(std::int64_t k, std::int64_t n) {
  const std::int64_t half = (k + 1) / 2;
  if (n >= half + 1) return Rational(2, k);
  if (n == half) return Rational(1, half);
  return Rational(0);
}

TEST(ThresholdTest, Examples) {
  EXPECT_EQ(threshold_N(8, 3), 6);
  EXPECT_EQ(threshold_N(5, 2), 4);
  EXPECT_EQ(threshold_N(7, 3), 5);
  EXPECT_EQ(threshold_N(5, 4), 5);
  for (std::int64_t k = 3; k <= 41; k += 2) EXPECT_EQ(threshold_N(k, 2), (k + 1) / 2 + 1);
}

TEST(ThresholdTest, DivisibleCaseIsKOverM) {
  for (std::int64_t k = 1; k <= 30; ++k) {
    for (std::int64_t m = 1; m <= k; ++m) {
      if (k % m == 0) {
        EXPECT_EQ(threshold_N(k, m), k / m) << k << "," << m;
      }
    }
  }
}

TEST(ThresholdTest, IntermediateWidthBound) {
  for (std::int64_t k = 1; k <= 40; ++k) {
    for (std::int64_t m = 1; m <= k; ++m) {
      const std::int64_t g = std::gcd(k, m);
      EXPECT_LT(threshold_N(k, m) - min_servers(k, m), 2 * m / g - 1)
          << k << "," << m;
      EXPECT_GE(threshold_N(k, m), min_servers(k, m));
    }
  }
}

TEST(IntermediateLengthTest, Examples) {
  EXPECT_EQ(theorem3_l(7, 3, 4), 2);
  EXPECT_EQ(theorem3_rate(7, 3, 4), Rational(2, 5));
  EXPECT_EQ(theorem3_l(5, 4, 3), 2);
  EXPECT_EQ(theorem3_rate(5, 4, 3), Rational(2, 3));
  EXPECT_EQ(theorem3_l(5, 4, 4), 3);
  EXPECT_EQ(theorem3_rate(5, 4, 4), Rational(3, 4));
}

TEST(IntermediateLengthTest, MinimalServersGiveOne) {
  for (std::int64_t k = 2; k <= 30; ++k) {
    for (std::int64_t m = 1; m < k; ++m) {
      if (k % m != 0) {
        EXPECT_EQ(theorem3_l(k, m, min_servers(k, m)), 1) << k << "," << m;
      }
    }
  }
}

TEST(IntermediateLengthTest, RegimeErrors) {
  EXPECT_THROW(theorem3_l(6, 3, 2), Error);
  EXPECT_THROW(theorem3_l(7, 3, 2), Error);
}

TEST(BestLowerBoundTest, Examples) {
  auto lb = best_lower_bound(7, 3, 4);
  EXPECT_EQ(lb.rate, Rational(2, 5));
  EXPECT_EQ(lb.witness_N, 4);
  lb = best_lower_bound(7, 3, 5);
  EXPECT_EQ(lb.rate, Rational(3, 7));
  EXPECT_EQ(lb.witness_N, 5);
  for (std::int64_t n = 6; n <= 12; ++n) {
    lb = best_lower_bound(8, 3, n);
    EXPECT_EQ(lb.rate, Rational(3, 8));
    EXPECT_EQ(lb.witness_N, 6);
  }
  EXPECT_THROW(best_lower_bound(7, 3, 2), Error);
}

TEST(BestLowerBoundTest, MonotoneInN) {
  for (std::int64_t k = 1; k <= 16; ++k) {
    for (std::int64_t m = 1; m <= k; ++m) {
      Rational prev(0);
      for (std::int64_t n = min_servers(k, m); n <= threshold_N(k, m) + 2; ++n) {
        const auto lb = best_lower_bound(k, m, n);
        EXPECT_GE(lb.rate, prev);
        EXPECT_LE(lb.rate, Rational(m, k));
        EXPECT_LE(lb.witness_N, n);
        prev = lb.rate;
      }
    }
  }
}

TEST(BestLowerBoundTest, MatchesBuiltSchemeRates) {
  for (std::size_t k = 1; k <= 12; ++k) {
    for (std::size_t m = 1; m <= k; ++m) {
      const auto ki = static_cast<std::int64_t>(k), mi = static_cast<std::int64_t>(m);
      for (std::int64_t n = min_servers(ki, mi); n <= threshold_N(ki, mi); ++n) {
        const auto lb = best_lower_bound(ki, mi, n);
        const Scheme s = build_best(k, m, static_cast<std::size_t>(n));
        EXPECT_EQ(s.rate, lb.rate) << k << "," << m << "," << n;
        EXPECT_EQ(static_cast<std::int64_t>(s.N), lb.witness_N);
      }
    }
  }
}

TEST(CapacityReportTest, Examples) {
  auto r = capacity_report(3, 1, 3);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, Rational(1, 3));
  r = capacity_report(3, 2, 3);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, Rational(2, 3));
  r = capacity_report(7, 3, 4);
  EXPECT_EQ(r.lower, Rational(2, 5));
  EXPECT_EQ(r.upper, Rational(3, 7));
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.regime, Regime::kIntermediate);
  r = capacity_report(7, 3, 2);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.regime, Regime::kInfeasible);
  EXPECT_EQ(r.lower, Rational(0));
  EXPECT_EQ(r.upper, Rational(0));
}

TEST(CapacityReportTest, Invariants) {
  for (std::int64_t k = 1; k <= 20; ++k) {
    for (std::int64_t m = 1; m <= k; ++m) {
      for (std::int64_t n = 0; n <= threshold_N(k, m) + 2; ++n) {
        const auto r = capacity_report(k, m, n);
        EXPECT_LE(r.lower, r.upper);
        EXPECT_EQ(r.exact.has_value(), r.lower == r.upper);
        EXPECT_EQ(!r.feasible, n < min_servers(k, m));
        if (k % m == 0 && n >= k / m) {
          ASSERT_TRUE(r.exact);
          EXPECT_EQ(*r.exact, Rational(m, k));
        }
        if (n == min_servers(k, m)) {
          ASSERT_TRUE(r.exact);
          EXPECT_EQ(*r.exact, Rational(1, min_servers(k, m)));
        }
      }
    }
  }
}

TEST(CapacityReportTest, TwoPerServerOddK) {
  for (std::int64_t k = 3; k <= 21; k += 2) {
    for (std::int64_t n = 0; n <= k + 3; ++n) {
      const auto r = capacity_report(k, 2, n);
      ASSERT_TRUE(r.exact) << k << "," << n;
      EXPECT_EQ(*r.exact, two_per_server_capacity(k, n)) << k << "," << n;
    }
  }
}

TEST(CapacityReportTest, RejectsBadParameters) {
  EXPECT_THROW(capacity_report(3, 4, 3), Error);
  EXPECT_THROW(capacity_report(0, 0, 1), Error);
}

}  // namespace
}  // namespace pidkit
