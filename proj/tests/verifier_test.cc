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
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pidkit/builders.hpp"
#include "pidkit/verifier.hpp"
#include "test_util.hpp"

namespace pidkit {
namespace {

using ::pidkit::testing::builder_grid;
using ::pidkit::testing::build_for;
using ::pidkit::testing::ring_scheme;

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::uint64_t> digits(std::uint64_t code, std::uint64_t p, std::size_t len) {
  std::vector<std::uint64_t> d(len);
  for (auto& x : d) {
    x = code % p;
    code /= p;
  }
  return d;
}

struct OracleVerdict {
  bool uniform = true;
  bool identical = true;
  bool pass() const { return uniform && identical; }
};

// Direct evaluation of A = F[k] w + H z over every (w, z), counting
// (answer, w) pairs per k.
OracleVerdict brute_force_privacy(const Scheme& s) {
  const std::uint64_t p = s.field.modulus();
  const std::size_t total = s.download(), r = s.randomness();
  const std::uint64_t states = ipow(p, total);
  std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, int> first;
  OracleVerdict v;
  for (std::size_t k = 1; k <= s.K; ++k) {
    std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>, int> joint;
    std::map<std::vector<std::uint64_t>, int> marginal;
    for (std::uint64_t code = 0; code < states; ++code) {
      const auto x = digits(code, p, total);
      std::vector<std::uint64_t> w(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(s.L));
      std::vector<std::uint64_t> a(total, 0);
      for (std::size_t i = 0; i < total; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < s.L; ++j) acc += s.F[k - 1](i, j) * w[j];
        for (std::size_t j = 0; j < r; ++j) acc += s.H(i, j) * x[s.L + j];
        a[i] = acc % p;
      }
      ++marginal[a];
      ++joint[{a, w}];
    }
    if (marginal.size() != states) v.uniform = false;
    if (k == 1) {
      first = joint;
    } else if (joint != first) {
      v.identical = false;
    }
  }
  return v;
}

std::vector<Scheme> small_corpus() {
  std::vector<Scheme> out{ring_scheme()};
  for (const auto& p : builder_grid(7)) {
    Scheme s = build_for(p);
    if (ipow(s.field.modulus(), s.download()) <= 20'000) out.push_back(std::move(s));
  }
  const std::size_t originals = out.size();
  std::mt19937_64 rng(2026);
  for (std::size_t i = 0; i < originals; ++i) {
    for (int rep = 0; rep < 3; ++rep) {
      Scheme s = out[i];
      const std::uint64_t p = s.field.modulus();
      const std::size_t k = rng() % s.K;
      MatrixFp& target = rep == 2 ? s.H : s.F[k];
      if (target.rows() == 0 || target.cols() == 0) continue;
      const std::size_t row = rng() % target.rows(), col = rng() % target.cols();
      target(row, col) = static_cast<Residue>((target(row, col) + 1 + rng() % (p - 1)) % p);
      out.push_back(std::move(s));
    }
  }
  return out;
}

TEST(VerifierTest, RingSchemePassesEverything) {
  const auto rep = verify(ring_scheme());
  EXPECT_TRUE(rep.correctness_ok);
  EXPECT_TRUE(rep.rank_privacy_ok);
  EXPECT_TRUE(rep.security_ok);
  EXPECT_TRUE(rep.eta_ok);
  EXPECT_EQ(rep.exhaustive.status, ExhaustiveStatus::kPassed);
  EXPECT_EQ(rep.exhaustive.state_space, 125u);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.details.empty());
}

TEST(VerifierTest, XorSchemePassesEverything) {
  const Scheme s = build_basic(3, 1);
  const auto rep = verify(s);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.exhaustive.status, ExhaustiveStatus::kPassed);
  EXPECT_EQ(rep.exhaustive.state_space, 8u);
}

TEST(VerifierTest, PerturbedDecoderFailsCorrectness) {
  Scheme s = ring_scheme();
  s.G(1, 2) = 4;
  const auto rep = verify(s);
  EXPECT_FALSE(rep.correctness_ok);
  EXPECT_TRUE(rep.rank_privacy_ok);
  EXPECT_FALSE(rep.ok());
  ASSERT_FALSE(rep.details.empty());
  EXPECT_EQ(rep.details.front().check, "correctness");
}

TEST(VerifierTest, ZeroRandomnessFailsRank) {
  Scheme s = ring_scheme();
  for (std::size_t i = 0; i < 3; ++i) s.H(i, 0) = 0;
  const auto rep = verify(s);
  EXPECT_FALSE(rep.rank_privacy_ok);
  EXPECT_EQ(rep.exhaustive.status, ExhaustiveStatus::kFailed);
  EXPECT_EQ(rep.exhaustive.answers_uniform, std::optional<bool>(false));
  EXPECT_EQ(rep.exhaustive.counterexample_k, 1u);
  EXPECT_FALSE(rep.ok());
}

TEST(VerifierTest, RankDeficientPrecoderIsCaughtPerMessage) {
  Scheme s = ring_scheme();
  // Make F[2]'s two columns equal so [F[2] | H] drops rank.
  s.F[1] = MatrixFp::from_rows(s.field, {{1, 1}, {-2, -2}, {0, 0}});
  const auto rep = verify(s);
  EXPECT_FALSE(rep.rank_privacy_ok);
  bool saw_k2 = false;
  for (const auto& f : rep.details) saw_k2 |= (f.k == 2 && f.check == "rank_privacy");
  EXPECT_TRUE(saw_k2);
}

TEST(VerifierTest, StorageLeakFailsSecurity) {
  Scheme s = ring_scheme();
  s.F[0](1, 0) = 1;  // server 2 does not store message 1
  const auto rep = verify(s);
  EXPECT_FALSE(rep.security_ok);
  EXPECT_FALSE(check_security(s));
  EXPECT_FALSE(rep.ok());
}

TEST(VerifierTest, WrongEtaIsReported) {
  Scheme s = ring_scheme();
  s.eta = Rational(1);
  EXPECT_FALSE(check_eta(s));
  EXPECT_FALSE(verify(s).eta_ok);
}

TEST(VerifierTest, LargeSchemeIsSkipped) {
  const Scheme s = build_full_rate(8, 3);
  const auto rep = verify(s);
  EXPECT_EQ(rep.exhaustive.status, ExhaustiveStatus::kSkipped);
  EXPECT_FALSE(rep.exhaustive.answers_uniform.has_value());
  EXPECT_FALSE(rep.exhaustive.reason.empty());
  EXPECT_TRUE(rep.ok());
  EXPECT_THROW(oracle_equivalence(s), Error);
}

TEST(VerifierTest, BudgetControlsSkipping) {
  const Scheme s = ring_scheme();
  EXPECT_EQ(check_privacy_exhaustive(s, 124).status, ExhaustiveStatus::kSkipped);
  EXPECT_EQ(check_privacy_exhaustive(s, 125).status, ExhaustiveStatus::kPassed);
}

TEST(VerifierTest, JointMismatchWithUniformAnswers) {
  // Swapping the columns of F[2] keeps every rank but changes which answer
  // maps to which delivered value.
  Scheme s = ring_scheme();
  s.F[1] = MatrixFp::from_rows(s.field, {{-1, 2}, {1, -1}, {0, 0}});
  const auto ex = check_privacy_exhaustive(s);
  EXPECT_EQ(ex.answers_uniform, std::optional<bool>(true));
  EXPECT_EQ(ex.joint_identical, std::optional<bool>(false));
  EXPECT_EQ(ex.status, ExhaustiveStatus::kFailed);
  EXPECT_EQ(ex.counterexample_k, 2u);
  EXPECT_FALSE(check_correctness(s));
  EXPECT_TRUE(oracle_equivalence(s));
}

TEST(VerifierTest, AgreesWithBruteForceOnCorpus) {
  const auto corpus = small_corpus();
  ASSERT_GE(corpus.size(), 50u);
  std::size_t passing = 0, failing = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Scheme& s = corpus[i];
    const auto oracle = brute_force_privacy(s);
    const auto ex = check_privacy_exhaustive(s);
    ASSERT_NE(ex.status, ExhaustiveStatus::kSkipped) << i;
    EXPECT_EQ(ex.status == ExhaustiveStatus::kPassed, oracle.pass()) << "scheme " << i;
    EXPECT_EQ(*ex.answers_uniform, oracle.uniform) << "scheme " << i;
    EXPECT_EQ(check_privacy_rank(s), oracle.uniform) << "scheme " << i;
    EXPECT_TRUE(oracle_equivalence(s)) << "scheme " << i;
    (oracle.pass() ? passing : failing)++;
  }
  EXPECT_GT(passing, 10u);
  EXPECT_GT(failing, 10u);
}

TEST(VerifierTest, BuiltSchemesVerify) {
  for (const auto& p : builder_grid(12)) {
    const Scheme s = build_for(p);
    const auto rep = verify(s, 200'000);
    EXPECT_TRUE(rep.ok()) << p.K << "," << p.M << "," << p.N;
  }
}

}  // namespace
}  // namespace pidkit
