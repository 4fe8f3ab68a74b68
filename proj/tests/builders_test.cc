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
#include <vector>

#include <gtest/gtest.h>

#include "pidkit/builders.hpp"
#include "pidkit/verifier.hpp"
#include "test_util.hpp"

namespace pidkit {
namespace {

using ::pidkit::testing::builder_grid;
using ::pidkit::testing::build_for;

void expect_sound(const Scheme& s) {
  EXPECT_NO_THROW(validate_scheme(s));
  EXPECT_TRUE(mat_mul(s.G, s.H).is_zero());
  for (std::size_t k = 1; k <= s.K; ++k) {
    EXPECT_EQ(mat_mul(s.G, s.precoder(k)), MatrixFp::identity(s.field, s.L)) << "k=" << k;
    EXPECT_EQ(rank(hstack(s.precoder(k), s.H)), s.download()) << "k=" << k;
    EXPECT_TRUE(respects_storage(s, k)) << "k=" << k;
  }
  EXPECT_EQ(s.eta, Rational(1) / s.rate - Rational(1));
}

std::vector<IndexSet> sets_of(const Scheme& s) { return s.storage.sets(); }

TEST(BuildBasicTest, ThreeSingletonServers) {
  const Scheme s = build_basic(3, 1);
  const PrimeField f2(2);
  EXPECT_EQ(s.N, 3u);
  EXPECT_EQ(s.field.modulus(), 2u);
  EXPECT_EQ(s.rate, Rational(1, 3));
  EXPECT_EQ(sets_of(s), (std::vector<IndexSet>{{1}, {2}, {3}}));
  // Answers for W_1 are (W_1 + z_1, z_2, z_1 + z_2).
  EXPECT_EQ(s.H, MatrixFp::from_rows(f2, {{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(s.precoder(1), MatrixFp::from_rows(f2, {{1}, {0}, {0}}));
  EXPECT_EQ(s.G, MatrixFp::from_rows(f2, {{1, 1, 1}}));
  expect_sound(s);
}

TEST(BuildBasicTest, Centralized) {
  const Scheme s = build_basic(1, 1);
  EXPECT_EQ(s.N, 1u);
  EXPECT_EQ(s.rate, Rational(1));
  EXPECT_EQ(s.randomness(), 0u);
  expect_sound(s);
}

TEST(BuildBasicTest, SequentialFill) {
  const Scheme s = build_basic(7, 3);
  EXPECT_EQ(sets_of(s), (std::vector<IndexSet>{{1, 2, 3}, {4, 5, 6}, {7}}));
  EXPECT_EQ(s.rate, Rational(1, 3));
  expect_sound(s);
}

TEST(BuildFullRateTest, EightMessagesThreePerServer) {
  const Scheme s = build_full_rate(8, 3);
  EXPECT_EQ(s.N, 6u);
  EXPECT_EQ(s.L, 3u);
  EXPECT_EQ(s.field.modulus(), 11u);
  EXPECT_EQ(s.randomness(), 5u);
  EXPECT_EQ(s.rate, Rational(3, 8));
  EXPECT_EQ(s.eta, Rational(5, 3));
  EXPECT_EQ(s.storage.availability(1), (IndexSet{1, 4, 5}));
  const IndexVector cols{1, 4, 5};
  EXPECT_EQ(mat_mul(submatrix(s.G, index_range(1, 3), cols),
                    submatrix(s.precoder(1), cols, index_range(1, 3))),
            MatrixFp::identity(s.field, 3));
  // The last server alone holds messages 6, 7, 8 and answers with 3 symbols.
  EXPECT_EQ(s.storage.stored_at(6), (IndexSet{6, 7, 8}));
  EXPECT_EQ(s.D.back(), 3u);
  expect_sound(s);
}

TEST(BuildFullRateTest, SmallCases) {
  Scheme s = build_full_rate(3, 2);
  EXPECT_EQ(s.N, 3u);
  EXPECT_EQ(s.L, 2u);
  EXPECT_EQ(s.rate, Rational(2, 3));
  EXPECT_EQ(s.randomness(), 1u);
  expect_sound(s);
  s = build_full_rate(4, 2);
  EXPECT_EQ(s.N, 2u);
  EXPECT_EQ(s.L, 1u);
  EXPECT_EQ(s.rate, Rational(1, 2));
  expect_sound(s);
}

TEST(BuildFullRateTest, AllSmallParameters) {
  for (std::size_t k = 1; k <= 12; ++k) {
    for (std::size_t m = 1; m <= k; ++m) {
      SCOPED_TRACE(::testing::Message() << "K=" << k << " M=" << m);
      const Scheme s = build_full_rate(k, m);
      const std::size_t g = std::gcd(k, m);
      EXPECT_EQ(static_cast<std::int64_t>(s.N),
                threshold_N(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m)));
      EXPECT_EQ(s.rate, Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(k)));
      EXPECT_EQ(s.field.modulus(), next_prime_at_least(std::max<std::uint32_t>(2, k / g)));
      // Answer symbols cover every block exactly once: D_sum = K / g.
      EXPECT_EQ(s.download(), k / g);
      for (const auto& set : s.storage.sets()) EXPECT_EQ(set.size(), m);
      expect_sound(s);
    }
  }
}

TEST(BuildIntermediateTest, SevenMessagesFourServers) {
  const Scheme s = build_intermediate(7, 3, 4);
  EXPECT_EQ(s.L, 2u);
  EXPECT_EQ(s.rate, Rational(2, 5));
  EXPECT_EQ(sets_of(s), (std::vector<IndexSet>{{1, 2, 4}, {1, 3, 4}, {2, 3}, {5, 6, 7}}));
  expect_sound(s);
}

TEST(BuildIntermediateTest, FiveMessagesFourPerServer) {
  Scheme s = build_intermediate(5, 4, 3);
  EXPECT_EQ(s.L, 2u);
  EXPECT_EQ(s.rate, Rational(2, 3));
  expect_sound(s);
  s = build_intermediate(5, 4, 4);
  EXPECT_EQ(s.L, 3u);
  EXPECT_EQ(s.rate, Rational(3, 4));
  expect_sound(s);
}

TEST(BuildIntermediateTest, EndpointsMatchOtherSchemes) {
  for (std::size_t k = 2; k <= 12; ++k) {
    for (std::size_t m = 1; m < k; ++m) {
      if (k % m == 0) continue;
      const auto ki = static_cast<std::int64_t>(k), mi = static_cast<std::int64_t>(m);
      const auto lo = static_cast<std::size_t>(min_servers(ki, mi));
      const auto hi = static_cast<std::size_t>(threshold_N(ki, mi));
      EXPECT_EQ(build_intermediate(k, m, lo).rate, Rational(1, static_cast<std::int64_t>(lo)));
      EXPECT_EQ(build_intermediate(k, m, hi).rate, Rational(mi, ki));
    }
  }
}

TEST(BuildIntermediateTest, RegimeErrors) {
  try {
    build_intermediate(6, 3, 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParameters);
  }
  EXPECT_THROW(build_intermediate(7, 3, 2), Error);
  EXPECT_THROW(build_intermediate(7, 3, 6), Error);
  EXPECT_THROW(build_basic(3, 4), Error);
  EXPECT_THROW(build_full_rate(0, 0), Error);
}

TEST(BuildersTest, EveryGridSchemeIsSound) {
  for (const auto& p : builder_grid(12)) {
    SCOPED_TRACE(::testing::Message() << "K=" << p.K << " M=" << p.M << " N=" << p.N);
    const Scheme s = build_for(p);
    EXPECT_EQ(s.N, p.N);
    const auto ki = static_cast<std::int64_t>(p.K), mi = static_cast<std::int64_t>(p.M);
    if (p.K % p.M != 0) {
      EXPECT_EQ(s.rate, theorem3_rate(ki, mi, static_cast<std::int64_t>(p.N)));
      EXPECT_EQ(s.field.modulus(), next_prime_at_least(std::max<std::uint32_t>(2, s.download())));
    }
    expect_sound(s);
  }
}

TEST(BuildBestTest, DispatchesByWitness) {
  EXPECT_EQ(build_best(8, 3, 6).N, 6u);
  EXPECT_EQ(build_best(8, 3, 9).N, 6u);
  EXPECT_EQ(build_best(7, 3, 4).rate, Rational(2, 5));
  const Scheme s = build_best(3, 1, 3);
  EXPECT_EQ(s.field.modulus(), 2u);
  EXPECT_EQ(s, build_basic(3, 1));
}

}  // namespace
}  // namespace pidkit
