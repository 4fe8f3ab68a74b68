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

// Constructions of linear delivery schemes for the three server-count
// regimes. All builders emit the same Scheme shape: a decoder G shared by
// every message, a randomness precoder H with G * H = 0, and per-message
// precoders F[k] whose nonzero rows sit only at servers storing k.

#ifndef PIDKIT_BUILDERS_HPP_
#define PIDKIT_BUILDERS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "pidkit/capacity.hpp"
#include "pidkit/error.hpp"
#include "pidkit/field.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/scheme.hpp"
#include "pidkit/storage.hpp"

namespace pidkit {

namespace detail {

inline void require_km(std::size_t k, std::size_t m) {
  if (k < 1 || m < 1 || m > k) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= M <= K, got K=" + std::to_string(k) + " M=" + std::to_string(m));
  }
}

inline Scheme scheme_shell(std::size_t k, std::size_t m, const PrimeField& field,
                           std::size_t l, StorageDesign storage,
                           std::vector<std::size_t> d) {
  Scheme s;
  s.K = k;
  s.M = m;
  s.N = storage.servers();
  s.field = field;
  s.L = l;
  s.storage = std::move(storage);
  s.D = std::move(d);
  return s;
}

// Decoder columns that carry message k: the answer rows of every server in its
// availability set, in server order. Must be exactly L of them.
inline IndexVector decoding_columns(const Scheme& s, std::size_t k) {
  IndexVector cols;
  for (std::size_t n : s.storage.availability(k)) {
    for (std::size_t r : s.server_rows(n)) cols.push_back(r);
  }
  return cols;
}

// G = [I_L | Cauchy], H = [V; -I], F[k] rows = inverse of the matching
// square block of G. Storage, D, L and the field must already be set.
inline void fill_systematic_code(Scheme& s) {
  const std::size_t total = s.download();
  const auto pts = distinct_points(s.field, s.L, total - s.L);
  const MatrixFp v = cauchy(pts.alphas, pts.betas);
  s.G = hstack(MatrixFp::identity(s.field, s.L), v);
  s.H = solve_H(s.G);
  s.F.clear();
  for (std::size_t k = 1; k <= s.K; ++k) {
    const IndexVector cols = decoding_columns(s, k);
    if (cols.size() != s.L) {
      throw Error(ErrorCode::kConstructionFailure,
                  "message " + std::to_string(k) + " reaches " + std::to_string(cols.size()) +
                      " answer symbols, expected L=" + std::to_string(s.L));
    }
    MatrixFp block_inv(s.field, 0, 0);
    try {
      block_inv = inverse(submatrix(s.G, index_range(1, s.L), cols));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConstructionFailure,
                  "decoder block for message " + std::to_string(k) + ": " + e.what());
    }
    MatrixFp f(s.field, total, s.L);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = 0; j < s.L; ++j) f(cols[i] - 1, j) = block_inv(i, j);
    s.F.push_back(std::move(f));
  }
}

// Privacy needs [F[k] | H] to be invertible for every k; builders refuse to
// hand out a scheme that fails it.
inline void require_full_rank(const Scheme& s) {
  const std::size_t total = s.download();
  for (std::size_t k = 1; k <= s.K; ++k) {
    if (rank(hstack(s.precoder(k), s.H)) != total) {
      throw Error(ErrorCode::kConstructionFailure,
                  "[F | H] is singular for message " + std::to_string(k) + " (K=" +
                      std::to_string(s.K) + " M=" + std::to_string(s.M) + " N=" +
                      std::to_string(s.N) + " p=" + std::to_string(s.field.modulus()) + ")");
    }
  }
}

}  // namespace detail

/// ceil(K/M) servers, messages stored sequentially, one symbol per answer.
/// Server i < N sends z_i (plus W_k if it stores k); the last server sends
/// -(z_1 + ... + z_{N-1}) (plus W_k if it stores k). The user sums all answers.
inline Scheme build_basic(std::size_t k_count, std::size_t m) {
  detail::require_km(k_count, m);
  const std::size_t n = (k_count + m - 1) / m;
  std::vector<IndexSet> sets(n);
  for (std::size_t k = 1; k <= k_count; ++k) sets[(k - 1) / m].push_back(k);

  const PrimeField field(2);
  Scheme s = detail::scheme_shell(k_count, m, field, 1,
                                   StorageDesign(k_count, m, std::move(sets)), std::vector<std::size_t>(n, 1));
  s.G = MatrixFp(field, 1, n);
  for (std::size_t j = 0; j < n; ++j) s.G(0, j) = 1;
  s.H = MatrixFp(field, n, n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    s.H(j, j) = 1;
    s.H(n - 1, j) = field.neg(1);
  }
  for (std::size_t k = 1; k <= k_count; ++k) {
    MatrixFp f(field, n, 1);
    f((k - 1) / m, 0) = 1;
    s.F.push_back(std::move(f));
  }
  set_accounting(s);
  validate_scheme(s);
  return s;
}

/// Rate M/K with threshold_N(K, M) servers.
///
/// Messages are grouped into K/g blocks of g = gcd(K, M) consecutive messages.
/// The first N1 servers store L = M/g blocks each, cyclically over the first N1
/// blocks, and send one symbol; the last N2 = floor(K/M) - 1 servers store L
/// distinct blocks each, sequentially, and send L symbols.
inline Scheme build_full_rate(std::size_t k_count, std::size_t m) {
  detail::require_km(k_count, m);
  const auto ki = static_cast<std::int64_t>(k_count);
  const auto mi = static_cast<std::int64_t>(m);
  const std::size_t g = std::gcd(k_count, m);
  const std::size_t blocks = k_count / g;
  const std::size_t l = m / g;
  const auto n = static_cast<std::size_t>(threshold_N(ki, mi));
  const std::size_t n2 = k_count / m - 1;
  const std::size_t n1 = n - n2;

  auto block_messages = [g](std::size_t b) {
    IndexSet out;
    for (std::size_t t = 1; t <= g; ++t) out.push_back((b - 1) * g + t);
    return out;
  };
  std::vector<IndexSet> sets(n);
  for (std::size_t i = 1; i <= n1; ++i) {
    for (std::size_t t = 0; t < l; ++t) {
      const std::size_t b = (i - 1 + t) % n1 + 1;
      for (std::size_t w : block_messages(b)) sets[i - 1].push_back(w);
    }
  }
  for (std::size_t j = 1; j <= n2; ++j) {
    for (std::size_t t = 1; t <= l; ++t) {
      const std::size_t b = n1 + (j - 1) * l + t;
      for (std::size_t w : block_messages(b)) sets[n1 + j - 1].push_back(w);
    }
  }

  std::vector<std::size_t> d(n, 1);
  for (std::size_t j = n1; j < n; ++j) d[j] = l;
  const PrimeField field(next_prime_at_least(static_cast<std::uint32_t>(std::max<std::size_t>(2, blocks))));
  Scheme s = detail::scheme_shell(k_count, m, field, l,
                                   StorageDesign(k_count, m, std::move(sets)), std::move(d));
  detail::fill_systematic_code(s);
  set_accounting(s);
  validate_scheme(s);
  detail::require_full_rank(s);
  return s;
}

/// Intermediate regime ceil(K/M) <= N <= threshold_N(K, M), K/M not an integer.
///
/// The first K1 messages are each replicated l times and poured column-major
/// into an N1 x M table (rows are servers), so every one of them lands on l
/// cyclically consecutive servers; cells left over stay empty. The last
/// K2 = N2 * M messages go M per server onto the last N2 servers, which send
/// L = l symbols each.
inline Scheme build_intermediate(std::size_t k_count, std::size_t m, std::size_t n) {
  detail::require_km(k_count, m);
  const auto ki = static_cast<std::int64_t>(k_count);
  const auto mi = static_cast<std::int64_t>(m);
  const auto ni = static_cast<std::int64_t>(n);
  if (k_count % m == 0) {
    throw Error(ErrorCode::kInvalidParameters,
                "intermediate scheme needs K/M non-integer (K=" + std::to_string(k_count) +
                    " M=" + std::to_string(m) + ")");
  }
  if (ni < min_servers(ki, mi) || ni > threshold_N(ki, mi)) {
    throw Error(ErrorCode::kInvalidParameters,
                "N=" + std::to_string(n) + " outside [" + std::to_string(min_servers(ki, mi)) +
                    ":" + std::to_string(threshold_N(ki, mi)) + "]");
  }
  const std::size_t n2 = k_count / m - 1;
  const std::size_t n1 = n - n2;
  const std::size_t k2 = n2 * m;
  const std::size_t k1 = k_count - k2;
  const auto l = static_cast<std::size_t>(theorem3_l(ki, mi, ni));

  std::vector<IndexSet> sets(n);
  for (std::size_t t = 0; t < k1 * l; ++t) {
    sets[t % n1].push_back(t / l + 1);
  }
  for (std::size_t j = 1; j <= n2; ++j) {
    for (std::size_t t = 1; t <= m; ++t) sets[n1 + j - 1].push_back(k1 + (j - 1) * m + t);
  }

  std::vector<std::size_t> d(n, 1);
  for (std::size_t j = n1; j < n; ++j) d[j] = l;
  const std::size_t total = n1 + l * n2;
  const PrimeField field(next_prime_at_least(static_cast<std::uint32_t>(std::max<std::size_t>(2, total))));
  Scheme s = detail::scheme_shell(k_count, m, field, l,
                                   StorageDesign(k_count, m, std::move(sets)), std::move(d));
  detail::fill_systematic_code(s);
  set_accounting(s);
  validate_scheme(s);
  detail::require_full_rank(s);
  return s;
}

/// Best known scheme with at most N servers, built at the best-lower-bound
/// witness server count. When M divides K the basic scheme already reaches M/K
/// and is preferred for its binary field. The result may use fewer than N servers.
inline Scheme build_best(std::size_t k_count, std::size_t m, std::size_t n) {
  detail::require_km(k_count, m);
  const auto ki = static_cast<std::int64_t>(k_count);
  const auto mi = static_cast<std::int64_t>(m);
  const auto ni = static_cast<std::int64_t>(n);
  const LowerBound lb = best_lower_bound(ki, mi, ni);
  if (lb.witness_N == min_servers(ki, mi)) return build_basic(k_count, m);
  if (lb.witness_N == threshold_N(ki, mi)) return build_full_rate(k_count, m);
  return build_intermediate(k_count, m, static_cast<std::size_t>(lb.witness_N));
}

}  // namespace pidkit

#endif  // PIDKIT_BUILDERS_HPP_
