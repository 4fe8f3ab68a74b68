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

#ifndef PIDKIT_STORAGE_HPP_
#define PIDKIT_STORAGE_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "pidkit/error.hpp"

namespace pidkit {

using IndexSet = std::vector<std::size_t>;  // sorted, 1-based

/// Which messages each server stores. Replication only: a server holds whole
/// messages, at most M of them.
class StorageDesign {
 public:
  StorageDesign(std::size_t k, std::size_t m, std::vector<IndexSet> sets)
      : k_(k), m_(m), sets_(std::move(sets)) {
    if (k_ == 0 || m_ == 0 || m_ > k_) {
      throw Error(ErrorCode::kInvalidParameters,
                  "need 1 <= M <= K, got K=" + std::to_string(k_) +
                      " M=" + std::to_string(m_));
    }
    for (std::size_t n = 0; n < sets_.size(); ++n) {
      auto& s = sets_[n];
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw Error(ErrorCode::kInvalidDesign,
                    "server " + std::to_string(n + 1) + " lists a message twice");
      }
      if (s.size() > m_) {
        throw Error(ErrorCode::kInvalidDesign,
                    "server " + std::to_string(n + 1) + " stores " +
                        std::to_string(s.size()) + " > M messages");
      }
      if (!s.empty() && (s.front() < 1 || s.back() > k_)) {
        throw Error(ErrorCode::kInvalidDesign,
                    "server " + std::to_string(n + 1) + " stores an index outside [1:K]");
      }
    }
  }

  std::size_t messages() const noexcept { return k_; }
  std::size_t capacity() const noexcept { return m_; }
  std::size_t servers() const noexcept { return sets_.size(); }
  const std::vector<IndexSet>& sets() const noexcept { return sets_; }
  const IndexSet& stored_at(std::size_t n) const { return sets_.at(n - 1); }

  bool holds(std::size_t n, std::size_t k) const {
    const auto& s = stored_at(n);
    return std::binary_search(s.begin(), s.end(), k);
  }

  /// The sorted availability vector of message k (servers holding it).
  IndexSet availability(std::size_t k) const {
    IndexSet out;
    for (std::size_t n = 1; n <= sets_.size(); ++n) {
      if (holds(n, k)) out.push_back(n);
    }
    return out;
  }

  std::size_t first_uncovered() const {
    for (std::size_t k = 1; k <= k_; ++k) {
      if (availability(k).empty()) return k;
    }
    return 0;
  }
  bool covers_all() const { return first_uncovered() == 0; }

  friend bool operator==(const StorageDesign&, const StorageDesign&) = default;
  friend auto operator<=>(const StorageDesign& a, const StorageDesign& b) {
    return a.sets_ <=> b.sets_;
  }

 private:
  std::size_t k_;
  std::size_t m_;
  std::vector<IndexSet> sets_;
};

struct AvailabilitySet {
  std::size_t message;
  IndexSet servers;
};

inline std::vector<AvailabilitySet> availability_sets(const StorageDesign& d) {
  std::vector<AvailabilitySet> out;
  for (std::size_t k = 1; k <= d.messages(); ++k) out.push_back({k, d.availability(k)});
  return out;
}

}  // namespace pidkit

#endif  // PIDKIT_STORAGE_HPP_
