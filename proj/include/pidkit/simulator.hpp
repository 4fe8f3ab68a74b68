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

#ifndef PIDKIT_SIMULATOR_HPP_
#define PIDKIT_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pidkit/error.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/scheme.hpp"

namespace pidkit {

using SymbolVector = std::vector<Residue>;

/// Uniform residues from a seeded mt19937_64. Rejection sampling keeps the
/// draws exactly uniform and the sequence identical on every platform.
class SymbolSource {
 public:
  SymbolSource(std::uint64_t seed, std::uint32_t p)
      : engine_(seed),
        p_(p),
        limit_(std::numeric_limits<std::uint64_t>::max() -
               std::numeric_limits<std::uint64_t>::max() % p) {}

  Residue next() {
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit_);
    return static_cast<Residue>(x % p_);
  }

  SymbolVector draw(std::size_t count) {
    SymbolVector v(count);
    for (auto& x : v) x = next();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t p_;
  std::uint64_t limit_;
};

/// Common randomness Z: D_sum - L uniform symbols, independent of messages.
inline SymbolVector deal_randomness(const Scheme& s, std::uint64_t seed) {
  return SymbolSource(seed, s.field.modulus()).draw(s.randomness());
}

/// K uniformly random messages of L symbols each.
inline std::vector<SymbolVector> random_messages(const Scheme& s, std::uint64_t seed) {
  SymbolSource src(seed, s.field.modulus());
  std::vector<SymbolVector> out;
  for (std::size_t k = 0; k < s.K; ++k) out.push_back(src.draw(s.L));
  return out;
}

/// The contents of one server: only the messages its storage set names.
/// Every read is logged so callers can audit which messages were touched.
class ServerStorage {
 public:
  ServerStorage(const Scheme& s, std::size_t n, const std::vector<SymbolVector>& all)
      : server_(n) {
    for (std::size_t k : s.storage.stored_at(n)) contents_.emplace(k, all.at(k - 1));
  }

  std::size_t server() const noexcept { return server_; }

  std::optional<std::span<const Residue>> read(std::size_t k) const {
    auto it = contents_.find(k);
    if (it == contents_.end()) return std::nullopt;
    reads_.push_back(k);
    return std::span<const Residue>(it->second);
  }

  const std::vector<std::size_t>& reads() const noexcept { return reads_; }

 private:
  std::size_t server_;
  std::map<std::size_t, SymbolVector> contents_;
  mutable std::vector<std::size_t> reads_;
};

/// Answer of server n for message k: its rows of F[k] * w_k + H * z.
/// w_k must be supplied exactly when server n stores message k.
inline SymbolVector server_answer(const Scheme& s, std::size_t n, std::size_t k,
                                  std::optional<std::span<const Residue>> w_k,
                                  std::span<const Residue> z) {
  if (n < 1 || n > s.N || k < 1 || k > s.K) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "server " + std::to_string(n) + " / message " + std::to_string(k));
  }
  if (z.size() != s.randomness()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "randomness has " + std::to_string(z.size()) + " symbols, expected " +
                    std::to_string(s.randomness()));
  }
  const bool stored = s.storage.holds(n, k);
  if (w_k.has_value() && !stored) {
    throw Error(ErrorCode::kStorageViolation,
                "server " + std::to_string(n) + " was handed message " + std::to_string(k) +
                    " it does not store");
  }
  if (stored && !w_k.has_value()) {
    throw Error(ErrorCode::kInvalidParameters,
                "server " + std::to_string(n) + " stores message " + std::to_string(k) +
                    " but was not given it");
  }
  if (stored && w_k->size() != s.L) {
    throw Error(ErrorCode::kDimensionMismatch, "message length differs from L");
  }
  const auto& f = s.field;
  const auto& fk = s.precoder(k);
  SymbolVector out;
  for (std::size_t r : s.server_rows(n)) {
    Residue acc = 0;
    if (stored) {
      for (std::size_t j = 0; j < s.L; ++j) acc = f.add(acc, f.mul(fk(r - 1, j), (*w_k)[j]));
    } else if (!fk.row_is_zero(r - 1)) {
      throw Error(ErrorCode::kStorageViolation,
                  "server " + std::to_string(n) + " would need message " + std::to_string(k) +
                      " which it does not store");
    }
    for (std::size_t j = 0; j < z.size(); ++j) acc = f.add(acc, f.mul(s.H(r - 1, j), z[j]));
    out.push_back(acc);
  }
  return out;
}

/// G applied to the stacked answers; the same map for every k.
inline SymbolVector user_decode(const Scheme& s, const std::vector<SymbolVector>& answers) {
  if (answers.size() != s.N) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(answers.size()) + " answers for " + std::to_string(s.N) +
                    " servers");
  }
  SymbolVector stacked;
  for (std::size_t n = 0; n < s.N; ++n) {
    if (answers[n].size() != s.D[n]) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "answer " + std::to_string(n + 1) + " has " +
                      std::to_string(answers[n].size()) + " symbols, expected " +
                      std::to_string(s.D[n]));
    }
    stacked.insert(stacked.end(), answers[n].begin(), answers[n].end());
  }
  return mat_vec(s.G, stacked);
}

struct Transcript {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<SymbolVector> messages;
  SymbolVector z;
  std::vector<SymbolVector> answers;
  SymbolVector decoded;
  std::size_t download = 0;
  // Message indices read by any server while answering. Only k may appear.
  std::vector<std::size_t> messages_read;

  bool decoded_ok() const { return k >= 1 && k <= messages.size() && decoded == messages[k - 1]; }
  Rational measured_rate() const {
    return Rational(static_cast<std::int64_t>(decoded.size()),
                    static_cast<std::int64_t>(download));
  }
};

/// Deals Z from the seed, lets each server answer from its own storage, and
/// decodes at the user.
inline Transcript run_delivery(const Scheme& s, std::size_t k,
                               const std::vector<SymbolVector>& messages, std::uint64_t seed) {
  if (k < 1 || k > s.K) {
    throw Error(ErrorCode::kIndexOutOfRange, "message index " + std::to_string(k));
  }
  if (messages.size() != s.K) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(messages.size()) + " messages for K=" + std::to_string(s.K));
  }
  for (const auto& w : messages) {
    if (w.size() != s.L) throw Error(ErrorCode::kDimensionMismatch, "message length differs from L");
    for (Residue x : w) {
      if (x >= s.field.modulus()) throw Error(ErrorCode::kInvalidParameters, "symbol outside F_p");
    }
  }
  Transcript t;
  t.k = k;
  t.seed = seed;
  t.messages = messages;
  t.z = deal_randomness(s, seed);
  for (std::size_t n = 1; n <= s.N; ++n) {
    ServerStorage store(s, n, messages);
    t.answers.push_back(server_answer(s, n, k, store.read(k), t.z));
    t.messages_read.insert(t.messages_read.end(), store.reads().begin(), store.reads().end());
  }
  t.decoded = user_decode(s, t.answers);
  t.download = s.download();
  return t;
}

}  // namespace pidkit

#endif  // PIDKIT_SIMULATOR_HPP_
