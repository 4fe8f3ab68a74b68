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

#ifndef PIDKIT_SCHEME_HPP_
#define PIDKIT_SCHEME_HPP_

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/field.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/storage.hpp"

namespace pidkit {

/// A linear delivery code. To deliver message k, server n sends the rows of
/// F[k] * W_k + H * Z that belong to it (D[n-1] symbols); the user applies the
/// same decoder G to the stacked answers regardless of k.
struct Scheme {
  std::size_t K = 0;
  std::size_t M = 0;
  std::size_t N = 0;
  PrimeField field{2};
  std::size_t L = 0;
  StorageDesign storage{1, 1, {{1}}};
  std::vector<std::size_t> D;  // per-server answer sizes
  MatrixFp G{field, 0, 0};     // L x D_sum
  MatrixFp H{field, 0, 0};     // D_sum x (D_sum - L)
  std::vector<MatrixFp> F;     // F[k-1] is D_sum x L
  Rational rate{0};
  Rational eta{0};

  std::size_t download() const { return std::accumulate(D.begin(), D.end(), std::size_t{0}); }
  std::size_t randomness() const { return download() - L; }

  const MatrixFp& precoder(std::size_t k) const { return F.at(k - 1); }

  /// 1-based rows of the stacked answer that server n sends.
  IndexVector server_rows(std::size_t n) const {
    std::size_t offset = 0;
    for (std::size_t i = 1; i < n; ++i) offset += D.at(i - 1);
    return index_range(offset + 1, offset + D.at(n - 1));
  }

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

/// Fills in rate and eta from L and D.
inline void set_accounting(Scheme& s) {
  const auto total = static_cast<std::int64_t>(s.download());
  const auto l = static_cast<std::int64_t>(s.L);
  s.rate = Rational(l, total);
  s.eta = Rational(total - l, l);
}

/// Structural invariants shared by builders and the deserializer.
inline void validate_scheme(const Scheme& s) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidParameters, "scheme: " + what);
  };
  if (s.K == 0 || s.M == 0 || s.M > s.K) fail("need 1 <= M <= K");
  if (s.L == 0) fail("message length L must be positive");
  if (s.storage.messages() != s.K || s.storage.capacity() != s.M) {
    fail("storage design parameters disagree with K, M");
  }
  if (s.storage.servers() != s.N) fail("storage lists a different server count");
  if (!s.storage.covers_all()) {
    fail("message " + std::to_string(s.storage.first_uncovered()) + " is stored nowhere");
  }
  if (s.D.size() != s.N) fail("D has " + std::to_string(s.D.size()) + " entries for N servers");
  const std::size_t total = s.download();
  if (total < s.L) fail("total download D_sum is smaller than L");
  auto same_field = [&](const MatrixFp& m) { return m.field() == s.field; };
  if (!same_field(s.G) || s.G.rows() != s.L || s.G.cols() != total) {
    fail("G must be L x D_sum over F_p");
  }
  if (!same_field(s.H) || s.H.rows() != total || s.H.cols() != total - s.L) {
    fail("H must be D_sum x (D_sum - L) over F_p");
  }
  if (s.F.size() != s.K) fail("need one precoder per message");
  for (std::size_t k = 1; k <= s.K; ++k) {
    const auto& f = s.precoder(k);
    if (!same_field(f) || f.rows() != total || f.cols() != s.L) {
      fail("F[" + std::to_string(k) + "] must be D_sum x L over F_p");
    }
  }
  const auto t = static_cast<std::int64_t>(total);
  const auto l = static_cast<std::int64_t>(s.L);
  if (s.rate != Rational(l, t)) fail("rate is not L / D_sum");
  if (s.eta != Rational(t - l, l)) fail("eta is not (D_sum - L) / L");
}

/// True when every nonzero row of F[k] belongs to a server that stores k.
inline bool respects_storage(const Scheme& s, std::size_t k) {
  const auto& f = s.precoder(k);
  for (std::size_t n = 1; n <= s.N; ++n) {
    if (s.storage.holds(n, k)) continue;
    for (std::size_t r : s.server_rows(n)) {
      if (!f.row_is_zero(r - 1)) return false;
    }
  }
  return true;
}

}  // namespace pidkit

#endif  // PIDKIT_SCHEME_HPP_
