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

// Upper bounds on the delivery rate by exhaustive search over replication
// storage designs. Each design contributes the covering LP built from its
// availability sets; the bound is the largest 1 / LP value over all designs.

#ifndef PIDKIT_CONVERSE_HPP_
#define PIDKIT_CONVERSE_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/lp.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/storage.hpp"

namespace pidkit {

inline constexpr std::uint64_t kDefaultConverseBudget = 1'000'000;
inline constexpr std::size_t kMaxConverseMessages = 16;

/// For each message, the set of servers holding it. Repeated sets appear once,
/// in order of first appearance.
inline std::vector<IndexSet> lemma1_constraints(const StorageDesign& d) {
  std::vector<IndexSet> out;
  for (std::size_t k = 1; k <= d.messages(); ++k) {
    IndexSet a = d.availability(k);
    if (a.empty()) {
      throw Error(ErrorCode::kInvalidDesign, "message " + std::to_string(k) + " is stored nowhere");
    }
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  }
  return out;
}

/// True iff every server holds a message no other server holds.
inline bool property1_check(const StorageDesign& d) {
  for (std::size_t n = 1; n <= d.servers(); ++n) {
    bool unique = false;
    for (std::size_t k : d.stored_at(n)) {
      if (d.availability(k).size() == 1) {
        unique = true;
        break;
      }
    }
    if (!unique) return false;
  }
  return true;
}

struct ConverseOptions {
  std::uint64_t budget = kDefaultConverseBudget;  // max designs to examine
  bool symmetry_reduction = true;
};

struct ConverseCertificate {
  std::size_t K = 0;
  std::size_t M = 0;
  std::size_t N = 0;
  StorageDesign best_design{1, 1, {{1}}};
  std::vector<IndexSet> constraints;
  Rational lp_value;
  Rational rate_bound;
  std::uint64_t designs_examined = 0;
  std::vector<Rational> downloads;  // optimal D_n for best_design, L = 1
  std::vector<Rational> weights;    // per-constraint multipliers summing to lp_value
  bool symmetry_reduction = false;
  bool sub_capacity_winner = false;
  std::vector<std::string> notes;
};

namespace detail {

using Mask = std::uint32_t;

inline IndexSet mask_to_set(Mask m) {
  IndexSet out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1U) out.push_back(i + 1);
  }
  return out;
}

inline std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = r * num / i;  // exact: r * num is divisible by i
  }
  return r;
}

// All size-exactly-m subsets of [1:k] as bit masks, in lexicographic order of
// their sorted index lists.
inline std::vector<Mask> subsets_lex(std::size_t k, std::size_t m) {
  std::vector<Mask> out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    Mask mask = 0;
    for (std::size_t i : idx) mask |= Mask{1} << i;
    out.push_back(mask);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == k - m + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Calls fn on every n_prime-subset (by index, increasing) of `pool` whose union
// covers `full`. Returns false if fn asked to stop.
inline bool for_each_cover(const std::vector<Mask>& pool, std::size_t n_prime, Mask full,
                           const std::function<bool(const std::vector<Mask>&)>& fn) {
  std::vector<Mask> chosen;
  // Union of pool[i..] for cheap coverage pruning.
  std::vector<Mask> suffix(pool.size() + 1, 0);
  for (std::size_t i = pool.size(); i > 0; --i) suffix[i - 1] = suffix[i] | pool[i - 1];
  std::function<bool(std::size_t, Mask)> rec = [&](std::size_t start, Mask acc) -> bool {
    if (chosen.size() == n_prime) return acc != full || fn(chosen);
    const std::size_t need = n_prime - chosen.size();
    for (std::size_t i = start; i + need <= pool.size(); ++i) {
      if ((acc | suffix[i]) != full) break;
      chosen.push_back(pool[i]);
      const bool go_on = rec(i + 1, acc | pool[i]);
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(0, 0);
}

// Double-lex canonical incidence matrices: n_prime rows (servers) by k columns
// (messages), every row sum exactly m, every column nonzero, columns
// non-decreasing and rows strictly increasing in lexicographic order. Every
// design with distinct servers has at least one such representative under
// server and message relabeling.
inline bool for_each_double_lex(std::size_t k, std::size_t m, std::size_t n_prime,
                                const std::function<bool(const std::vector<Mask>&)>& fn) {
  const Mask top = Mask{1} << n_prime;
  std::vector<Mask> cols;
  std::vector<std::size_t> row_sum(n_prime, 0);
  // tied[i]: rows i and i+1 agree on every column placed so far.
  std::vector<char> tied(n_prime > 0 ? n_prime - 1 : 0, 1);
  auto bit = [n_prime](Mask c, std::size_t row) { return (c >> (n_prime - 1 - row)) & 1U; };

  std::function<bool(Mask)> rec = [&](Mask lo) -> bool {
    const std::size_t j = cols.size();
    if (j == k) {
      for (char t : tied) {
        if (t) return true;
      }
      for (std::size_t s : row_sum) {
        if (s != m) return true;
      }
      std::vector<Mask> rows(n_prime, 0);
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < n_prime; ++r) {
          if (bit(cols[c], r)) rows[r] |= Mask{1} << c;
        }
      }
      return fn(rows);
    }
    const std::size_t left_after = k - j - 1;
    for (Mask c = lo; c < top; ++c) {
      bool ok = true;
      for (std::size_t r = 0; r < n_prime && ok; ++r) {
        const std::size_t s = row_sum[r] + bit(c, r);
        ok = s <= m && s + left_after >= m;
      }
      for (std::size_t r = 0; r + 1 < n_prime && ok; ++r) {
        if (tied[r] && bit(c, r) && !bit(c, r + 1)) ok = false;
      }
      if (!ok) continue;
      const std::vector<char> saved = tied;
      for (std::size_t r = 0; r < n_prime; ++r) row_sum[r] += bit(c, r);
      for (std::size_t r = 0; r + 1 < n_prime; ++r) {
        if (tied[r] && bit(c, r) != bit(c, r + 1)) tied[r] = 0;
      }
      cols.push_back(c);
      const bool go_on = rec(c);
      cols.pop_back();
      tied = saved;
      for (std::size_t r = 0; r < n_prime; ++r) row_sum[r] -= bit(c, r);
      if (!go_on) return false;
    }
    return true;
  };
  return rec(1);
}

// Server masks of each message's availability set, sorted and deduplicated.
inline std::vector<Mask> constraint_masks(const std::vector<Mask>& rows, std::size_t k) {
  std::vector<Mask> out;
  for (std::size_t msg = 0; msg < k; ++msg) {
    Mask a = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if ((rows[r] >> msg) & 1U) a |= Mask{1} << r;
    }
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<IndexSet> sorted_sets(const std::vector<Mask>& rows) {
  std::vector<IndexSet> sets;
  for (Mask r : rows) sets.push_back(mask_to_set(r));
  std::sort(sets.begin(), sets.end());
  return sets;
}

inline std::uint64_t plain_design_count(std::size_t k, std::size_t m, std::size_t n_lo,
                                        std::size_t n_hi) {
  const std::uint64_t pool = binomial_saturating(k, m);
  std::uint64_t total = 0;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const std::uint64_t c = binomial_saturating(pool, n);
    total = (c > std::numeric_limits<std::uint64_t>::max() - total)
                ? std::numeric_limits<std::uint64_t>::max()
                : total + c;
  }
  return total;
}

}  // namespace detail

/// Calls fn on every design of exactly n_prime distinct servers covering [1:K].
/// With allow_sub_capacity, servers may hold anywhere from 1 to M messages;
/// otherwise exactly M. Designs arrive in lexicographic order of their sorted
/// server sets. fn returns false to stop.
inline void for_each_design(std::size_t k, std::size_t m, std::size_t n_prime,
                            bool allow_sub_capacity,
                            const std::function<bool(const StorageDesign&)>& fn) {
  if (k < 1 || m < 1 || m > k || k > kMaxConverseMessages) {
    throw Error(ErrorCode::kInvalidParameters, "design enumeration needs 1 <= M <= K <= " +
                                                   std::to_string(kMaxConverseMessages));
  }
  std::vector<detail::Mask> pool;
  for (std::size_t size = allow_sub_capacity ? 1 : m; size <= m; ++size) {
    const auto part = detail::subsets_lex(k, size);
    pool.insert(pool.end(), part.begin(), part.end());
  }
  std::sort(pool.begin(), pool.end(), [](detail::Mask a, detail::Mask b) {
    return detail::mask_to_set(a) < detail::mask_to_set(b);
  });
  const detail::Mask full = (detail::Mask{1} << k) - 1;
  detail::for_each_cover(pool, n_prime, full, [&](const std::vector<detail::Mask>& rows) {
    std::vector<IndexSet> sets;
    for (auto r : rows) sets.push_back(detail::mask_to_set(r));
    return fn(StorageDesign(k, m, std::move(sets)));
  });
}

/// Largest rate any replication design with at most N servers can support,
/// according to the covering LP of its availability sets.
///
/// Only designs with distinct server contents are searched: a duplicated server
/// can be dropped without lowering the achievable rate. Servers are filled to
/// exactly M messages: a message added to a server can only enlarge availability
/// sets, which loosens constraints. The winner is the design with the
/// highest bound, ties going to the lexicographically smallest design examined.
inline ConverseCertificate converse_rate(std::size_t k, std::size_t m, std::size_t n,
                                         const ConverseOptions& opt = {}) {
  if (k < 1 || m < 1 || m > k) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= M <= K, got K=" + std::to_string(k) + " M=" + std::to_string(m));
  }
  if (k > kMaxConverseMessages) {
    throw Error(ErrorCode::kInvalidParameters,
                "converse search supports K <= " + std::to_string(kMaxConverseMessages));
  }
  const std::size_t n_min = (k + m - 1) / m;
  if (n < n_min) {
    throw Error(ErrorCode::kInvalidParameters,
                "N=" + std::to_string(n) + " below ceil(K/M)=" + std::to_string(n_min));
  }
  const std::uint64_t pool_size = detail::binomial_saturating(k, m);
  const std::size_t n_hi = static_cast<std::size_t>(std::min<std::uint64_t>(n, pool_size));
  if (n_hi > kMaxConverseMessages) {
    throw Error(ErrorCode::kInvalidParameters,
                "converse search supports at most " + std::to_string(kMaxConverseMessages) +
                    " distinct servers");
  }
  const std::uint64_t plain_count = detail::plain_design_count(k, m, n_min, n_hi);
  if (!opt.symmetry_reduction && plain_count > opt.budget) {
    throw Error(ErrorCode::kBudgetExceeded,
                "converse search over about " + std::to_string(plain_count) +
                    " designs exceeds the budget of " + std::to_string(opt.budget));
  }

  ConverseCertificate cert;
  cert.K = k;
  cert.M = m;
  cert.N = n;
  cert.symmetry_reduction = opt.symmetry_reduction;

  std::map<std::vector<detail::Mask>, Rational> memo;
  std::optional<Rational> best_lp;
  std::vector<IndexSet> best_sets;

  auto consider = [&](const std::vector<detail::Mask>& rows) -> bool {
    if (++cert.designs_examined > opt.budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "converse search exceeded the budget of " + std::to_string(opt.budget) +
                      " designs (about " + std::to_string(plain_count) +
                      " designs without symmetry reduction)");
    }
    auto key = detail::constraint_masks(rows, k);
    auto it = memo.find(key);
    if (it == memo.end()) {
      std::vector<IndexSet> cons;
      for (auto c : key) cons.push_back(detail::mask_to_set(c));
      it = memo.emplace(std::move(key), min_download(cons, rows.size())).first;
    }
    const Rational& value = it->second;
    if (!best_lp || value < *best_lp) {
      best_lp = value;
      best_sets = detail::sorted_sets(rows);
    } else if (value == *best_lp) {
      auto sets = detail::sorted_sets(rows);
      if (sets < best_sets) best_sets = std::move(sets);
    }
    return true;
  };

  const detail::Mask full = (detail::Mask{1} << k) - 1;
  const std::vector<detail::Mask> pool =
      opt.symmetry_reduction ? std::vector<detail::Mask>{} : detail::subsets_lex(k, m);
  for (std::size_t np = n_min; np <= n_hi; ++np) {
    if (opt.symmetry_reduction) {
      detail::for_each_double_lex(k, m, np, consider);
    } else {
      detail::for_each_cover(pool, np, full, consider);
    }
  }
  if (!best_lp) throw Error(ErrorCode::kInvalidParameters, "no covering design exists");

  cert.best_design = StorageDesign(k, m, best_sets);
  cert.constraints = lemma1_constraints(cert.best_design);
  const DownloadSolution sol = solve_min_download(cert.constraints, best_sets.size());
  cert.lp_value = sol.value;
  cert.rate_bound = Rational(1) / sol.value;
  cert.downloads = sol.downloads;
  cert.weights = sol.weights;
  cert.notes = {
      "designs with a repeated server are dominated by their distinct reduction",
      "servers hold exactly M messages; a smaller set only tightens constraints",
      "bound is the availability-set covering LP maximized over designs with at most N servers",
  };
  if (opt.symmetry_reduction) {
    cert.notes.emplace_back(
        "designs enumerated up to server and message relabeling (double-lex canonical form)");
  }
  return cert;
}

}  // namespace pidkit

#endif  // PIDKIT_CONVERSE_HPP_
