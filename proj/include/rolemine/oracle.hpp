// Copyright 2026 The rolemine Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact minimum role count for tiny instances. Used as the optimality
// yardstick for the heuristics, never by them.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rolemine/core.hpp"

namespace rolemine {

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kOracleMaxPerms = 6;
inline constexpr std::size_t kOracleMaxDistinctRows = 6;

struct OracleResult {
  std::size_t role_count = 0;
  Decomposition witness;
};

namespace detail {

// Rows and roles are 6-bit masks, so a set of selected roles is a 64-bit
// mask indexed by role mask value.
class ExactCoverSearch {
 public:
  ExactCoverSearch(std::vector<std::uint8_t> rows, std::size_t k) : rows_(std::move(rows)) {
    std::uint64_t seen = 0;
    for (std::uint8_t row : rows_) {
      for (std::uint32_t sub = row; sub != 0; sub = (sub - 1) & row) {
        if (static_cast<std::size_t>(std::popcount(sub)) <= k) seen |= std::uint64_t{1} << sub;
      }
    }
    for (std::uint32_t m = 1; m < 64; ++m)
      if ((seen >> m) & 1U) candidates_.push_back(static_cast<std::uint8_t>(m));
  }

  /// Smallest selection covering every row exactly, as role masks.
  std::vector<std::uint8_t> solve() {
    for (std::size_t depth = 0;; ++depth) {
      failed_.clear();
      if (search(0, depth)) {
        std::vector<std::uint8_t> out;
        for (std::uint32_t m = 1; m < 64; ++m)
          if ((solution_ >> m) & 1U) out.push_back(static_cast<std::uint8_t>(m));
        return out;
      }
    }
  }

 private:
  bool search(std::uint64_t selected, std::size_t budget) {
    // First (row, permission) not yet provided by a selected role inside it.
    for (std::uint8_t row : rows_) {
      std::uint8_t provided = 0;
      for (std::uint32_t m = 1; m < 64; ++m) {
        if (((selected >> m) & 1U) && (m & ~static_cast<std::uint32_t>(row)) == 0) provided |= static_cast<std::uint8_t>(m);
      }
      const std::uint8_t missing = row & static_cast<std::uint8_t>(~provided);
      if (missing == 0) continue;
      if (budget == 0) return false;
      if (auto it = failed_.find(selected); it != failed_.end() && it->second >= budget) return false;
      const std::uint8_t bit = missing & static_cast<std::uint8_t>(-missing);
      for (std::uint8_t c : candidates_) {
        if ((c & bit) == 0 || (c & ~row) != 0 || ((selected >> c) & 1U)) continue;
        if (search(selected | (std::uint64_t{1} << c), budget - 1)) return true;
      }
      auto& f = failed_[selected];
      f = std::max(f, budget);
      return false;
    }
    solution_ = selected;
    return true;
  }

  std::vector<std::uint8_t> rows_;
  std::vector<std::uint8_t> candidates_;
  std::unordered_map<std::uint64_t, std::size_t> failed_;
  std::uint64_t solution_ = 0;
};

}  // namespace detail

/// Minimum number of roles of at most k permissions whose unions reproduce
/// every row exactly, with one witness decomposition.
///
/// Throws SizeError unless n_perms <= 6 and there are at most 6 distinct
/// nonempty rows.
inline OracleResult optimal_role_count(const AccessMatrix& upa, std::size_t k) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (upa.n_perms() > kOracleMaxPerms) {
    throw SizeError("oracle supports at most " + std::to_string(kOracleMaxPerms) + " permissions, got " +
                    std::to_string(upa.n_perms()));
  }
  std::vector<std::uint8_t> rows;
  for (const auto& g : distinct_rows(upa)) {
    if (g.perms.empty()) continue;
    std::uint8_t mask = 0;
    g.perms.for_each([&](PermIndex p) { mask |= static_cast<std::uint8_t>(1U << p); });
    rows.push_back(mask);
  }
  if (rows.size() > kOracleMaxDistinctRows) {
    throw SizeError("oracle supports at most " + std::to_string(kOracleMaxDistinctRows) + " distinct rows, got " +
                    std::to_string(rows.size()));
  }

  const auto chosen = detail::ExactCoverSearch(rows, k).solve();

  OracleResult result;
  result.role_count = chosen.size();
  result.witness.ua.resize(upa.n_users());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    PermSet perms(upa.n_perms());
    for (PermIndex p = 0; p < kOracleMaxPerms; ++p)
      if ((chosen[i] >> p) & 1U) perms.insert(p);
    result.witness.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(i)}, std::move(perms)});
  }
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    for (const auto& r : result.witness.roles)
      if (r.perms.is_subset_of(upa.row(u))) result.witness.ua[u].push_back(r.id);
  }
  result.witness = canonicalize(result.witness);
  return result;
}

}  // namespace rolemine
