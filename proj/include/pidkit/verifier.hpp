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

// Certification of delivery schemes.
//
// Correctness and the rank condition are exact algebra. The exhaustive check
// enumerates every (W_k, Z) for every k and compares the joint law of
// (answers, delivered message) across k; it exists to cross-examine the
// algebra on small fields.

#ifndef PIDKIT_VERIFIER_HPP_
#define PIDKIT_VERIFIER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/scheme.hpp"

namespace pidkit {

inline constexpr std::uint64_t kDefaultExhaustiveBudget = 10'000'000;

struct Finding {
  std::size_t k = 0;  // 0 when the finding is not tied to one message
  std::string check;
  std::string message;
};

enum class ExhaustiveStatus { kPassed, kSkipped, kFailed };

inline std::string_view exhaustive_status_name(ExhaustiveStatus s) {
  switch (s) {
    case ExhaustiveStatus::kPassed: return "passed";
    case ExhaustiveStatus::kSkipped: return "skipped";
    case ExhaustiveStatus::kFailed: return "failed";
  }
  return "unknown";
}

struct ExhaustiveResult {
  ExhaustiveStatus status = ExhaustiveStatus::kSkipped;
  // p^D_sum states per message, saturated at uint64 max.
  std::uint64_t state_space = 0;
  // Populated only when the enumeration ran.
  std::optional<bool> answers_uniform;
  std::optional<bool> joint_identical;
  std::size_t counterexample_k = 0;
  std::string reason;
};

struct VerificationReport {
  bool correctness_ok = false;
  bool rank_privacy_ok = false;
  ExhaustiveResult exhaustive;
  bool security_ok = false;
  bool eta_ok = false;
  std::vector<Finding> details;

  bool ok() const {
    return correctness_ok && rank_privacy_ok && security_ok && eta_ok &&
           exhaustive.status != ExhaustiveStatus::kFailed;
  }
};

namespace detail {

inline std::vector<Finding> correctness_findings(const Scheme& s) {
  std::vector<Finding> out;
  const MatrixFp ident = MatrixFp::identity(s.field, s.L);
  if (!mat_mul(s.G, s.H).is_zero()) {
    out.push_back({0, "correctness", "G * H is not zero"});
  }
  for (std::size_t k = 1; k <= s.K; ++k) {
    if (mat_mul(s.G, s.precoder(k)) != ident) {
      out.push_back({k, "correctness", "G * F[" + std::to_string(k) + "] is not I_L"});
    }
  }
  return out;
}

inline std::vector<Finding> rank_findings(const Scheme& s) {
  std::vector<Finding> out;
  const std::size_t total = s.download();
  for (std::size_t k = 1; k <= s.K; ++k) {
    const std::size_t r = rank(hstack(s.precoder(k), s.H));
    if (r != total) {
      out.push_back({k, "rank_privacy",
                     "[F[" + std::to_string(k) + "] | H] has rank " + std::to_string(r) +
                         " < " + std::to_string(total)});
    }
  }
  return out;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

// Walks every input x = (W_k, Z) in odometer order (least significant digit
// first, W digits lowest) and hands (answer code, W code) to `visit`.
// Incrementing digit j adds column j of B to the answer; a digit wrapping from
// p-1 to 0 has added p * column = 0, so the running answer stays exact.
template <typename Visit>
void enumerate_answers(const MatrixFp& b, std::size_t l, std::uint64_t states, Visit&& visit) {
  const auto& f = b.field();
  const std::uint64_t p = f.modulus();
  const std::size_t dim = b.rows();
  const std::uint64_t w_states = saturating_pow(p, l);
  std::vector<Residue> digits(dim, 0);
  std::vector<Residue> answer(dim, 0);
  for (std::uint64_t s = 0; s < states; ++s) {
    std::uint64_t code = 0;
    for (std::size_t i = dim; i-- > 0;) code = code * p + answer[i];
    visit(code, static_cast<std::uint32_t>(s % w_states));
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t i = 0; i < dim; ++i) answer[i] = f.add(answer[i], b(i, j));
      if (++digits[j] < p) break;
      digits[j] = 0;
    }
  }
}

inline std::vector<std::uint64_t> joint_multiset(const MatrixFp& b, std::size_t l,
                                                 std::uint64_t states) {
  const std::uint64_t w_states = saturating_pow(b.field().modulus(), l);
  std::vector<std::uint64_t> out;
  out.reserve(states);
  enumerate_answers(b, l, states, [&](std::uint64_t a, std::uint32_t w) {
    out.push_back(a * w_states + w);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// G * F[k] = I_L for every k, and G * H = 0.
inline bool check_correctness(const Scheme& s) { return detail::correctness_findings(s).empty(); }

/// [F[k] | H] has full rank D_sum for every k.
inline bool check_privacy_rank(const Scheme& s) { return detail::rank_findings(s).empty(); }

/// Exact enumeration of the joint law of (A_1..A_N, W_k) for every k.
///
/// Passes iff for every k the answers are uniform over F_p^D_sum and the
/// multiset of (answers, delivered value) pairs is the same for all k. Skipped
/// when p^D_sum exceeds the budget.
inline ExhaustiveResult check_privacy_exhaustive(const Scheme& s,
                                                 std::uint64_t budget = kDefaultExhaustiveBudget) {
  ExhaustiveResult res;
  const std::size_t total = s.download();
  res.state_space = detail::saturating_pow(s.field.modulus(), total);
  // Per-answer tables are indexed by 32-bit codes.
  constexpr std::uint64_t kHardCap = std::uint64_t{1} << 31;
  if (res.state_space > budget || res.state_space > kHardCap) {
    res.status = ExhaustiveStatus::kSkipped;
    res.reason = "state space " + std::to_string(res.state_space) + " exceeds budget " +
                 std::to_string(std::min(budget, kHardCap));
    return res;
  }
  const std::uint64_t states = res.state_space;
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

  // When every answer law is uniform, each answer value occurs once and the
  // joint multiset is just the map answer -> delivered value.
  std::vector<std::uint32_t> reference;
  std::vector<std::uint32_t> current;
  std::size_t first_nonuniform = 0;
  std::size_t first_mismatch = 0;
  std::uint64_t mismatch_code = 0;
  for (std::size_t k = 1; k <= s.K; ++k) {
    const MatrixFp b = hstack(s.precoder(k), s.H);
    current.assign(states, kUnseen);
    bool uniform = true;
    detail::enumerate_answers(b, s.L, states, [&](std::uint64_t a, std::uint32_t w) {
      if (current[a] != kUnseen) uniform = false;
      current[a] = w;
    });
    if (!uniform) {
      first_nonuniform = k;
      break;
    }
    if (k == 1) {
      reference.swap(current);
    } else if (first_mismatch == 0 && current != reference) {
      first_mismatch = k;
      mismatch_code = static_cast<std::uint64_t>(
          std::mismatch(current.begin(), current.end(), reference.begin()).first -
          current.begin());
    }
  }

  if (first_nonuniform != 0) {
    res.answers_uniform = false;
    // Compare the full joint multisets against message 1.
    const auto base = detail::joint_multiset(hstack(s.precoder(1), s.H), s.L, states);
    bool identical = true;
    for (std::size_t k = 2; k <= s.K && identical; ++k) {
      identical = detail::joint_multiset(hstack(s.precoder(k), s.H), s.L, states) == base;
    }
    res.joint_identical = identical;
    res.status = ExhaustiveStatus::kFailed;
    res.counterexample_k = first_nonuniform;
    res.reason = "answers for message " + std::to_string(first_nonuniform) +
                 " are not uniform over F_" + std::to_string(s.field.modulus()) + "^" +
                 std::to_string(total);
    return res;
  }
  res.answers_uniform = true;
  res.joint_identical = first_mismatch == 0;
  if (first_mismatch != 0) {
    res.status = ExhaustiveStatus::kFailed;
    res.counterexample_k = first_mismatch;
    res.reason = "joint law of (answers, delivered value) for message " +
                 std::to_string(first_mismatch) + " differs from message 1 at answer code " +
                 std::to_string(mismatch_code);
    return res;
  }
  res.status = ExhaustiveStatus::kPassed;
  return res;
}

/// eta = (D_sum - L) / L equals 1/rate - 1 and the stored eta.
inline bool check_eta(const Scheme& s) {
  const auto total = static_cast<std::int64_t>(s.download());
  const auto l = static_cast<std::int64_t>(s.L);
  if (s.rate == Rational(0)) return false;
  const Rational eta(total - l, l);
  return eta == Rational(1) / s.rate - Rational(1) && eta == s.eta;
}

/// Every precoder touches only servers storing its message, so the answers
/// for k are a function of (W_k, Z) alone.
inline bool check_security(const Scheme& s) {
  for (std::size_t k = 1; k <= s.K; ++k) {
    if (!respects_storage(s, k)) return false;
  }
  return true;
}

/// Full-rank verdict versus the enumerated verdict.
///
/// Full rank of [F[k] | H] is equivalent to uniform answers, so the rank
/// verdict must match the uniformity found by enumeration. When the scheme is
/// also correct, it must match the complete exhaustive verdict.
inline bool oracle_equivalence(const Scheme& s, std::uint64_t budget = kDefaultExhaustiveBudget) {
  const ExhaustiveResult ex = check_privacy_exhaustive(s, budget);
  if (ex.status == ExhaustiveStatus::kSkipped) {
    throw Error(ErrorCode::kBudgetExceeded, ex.reason);
  }
  const bool rank_ok = check_privacy_rank(s);
  if (rank_ok != *ex.answers_uniform) return false;
  if (check_correctness(s) && rank_ok != (ex.status == ExhaustiveStatus::kPassed)) return false;
  return true;
}

inline VerificationReport verify(const Scheme& s,
                                 std::uint64_t budget = kDefaultExhaustiveBudget) {
  VerificationReport rep;
  auto correctness = detail::correctness_findings(s);
  auto ranks = detail::rank_findings(s);
  rep.correctness_ok = correctness.empty();
  rep.rank_privacy_ok = ranks.empty();
  rep.details.insert(rep.details.end(), correctness.begin(), correctness.end());
  rep.details.insert(rep.details.end(), ranks.begin(), ranks.end());
  rep.exhaustive = check_privacy_exhaustive(s, budget);
  if (rep.exhaustive.status == ExhaustiveStatus::kFailed) {
    rep.details.push_back({rep.exhaustive.counterexample_k, "exhaustive_privacy",
                           rep.exhaustive.reason});
  }
  rep.security_ok = true;
  for (std::size_t k = 1; k <= s.K; ++k) {
    if (!respects_storage(s, k)) {
      rep.security_ok = false;
      rep.details.push_back({k, "security",
                             "F[" + std::to_string(k) +
                                 "] has a nonzero row at a server not storing the message"});
    }
  }
  rep.eta_ok = check_eta(s);
  if (!rep.eta_ok) rep.details.push_back({0, "eta", "eta differs from 1/rate - 1"});
  return rep;
}

}  // namespace pidkit

#endif  // PIDKIT_VERIFIER_HPP_
