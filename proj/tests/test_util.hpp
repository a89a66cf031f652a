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

// Test-only builders and brute-force checkers. Nothing here calls into the
// miners, the lattice pass or the oracle.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rolemine/core.hpp"
#include "rolemine/random.hpp"

namespace rolemine::testing {

using Rows = std::vector<std::vector<PermIndex>>;

inline AccessMatrix matrix(std::size_t n_perms, const Rows& rows) { return AccessMatrix(n_perms, rows); }

inline Decomposition decomposition(const std::vector<std::vector<PermIndex>>& roles,
                                   const std::vector<std::vector<std::uint32_t>>& ua) {
  Decomposition d;
  for (std::size_t i = 0; i < roles.size(); ++i)
    d.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(i)}, PermSet::from_indices(roles[i])});
  for (const auto& a : ua) {
    d.ua.emplace_back();
    for (std::uint32_t r : a) d.ua.back().push_back(RoleId{r});
  }
  return d;
}

/// Sorted permission lists of the catalog, as a set (order-free comparison).
inline std::set<std::vector<PermIndex>> catalog(const Decomposition& d) {
  std::set<std::vector<PermIndex>> out;
  for (const auto& r : d.roles) out.insert(r.perms.to_vector());
  return out;
}

/// Permission lists assigned to user u.
inline std::set<std::vector<PermIndex>> roles_of(const Decomposition& d, std::size_t u) {
  std::set<std::vector<PermIndex>> out;
  for (RoleId id : d.ua.at(u)) {
    for (const auto& r : d.roles)
      if (r.id == id) out.insert(r.perms.to_vector());
  }
  return out;
}

/// Independent completeness check on plain std::set values.
inline bool naive_complete(const AccessMatrix& upa, const Decomposition& d) {
  if (d.ua.size() != upa.n_users()) return false;
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    std::set<PermIndex> got;
    for (const auto& perms : roles_of(d, u)) got.insert(perms.begin(), perms.end());
    const auto want_v = upa.row(u).to_vector();
    if (got != std::set<PermIndex>(want_v.begin(), want_v.end())) return false;
  }
  return true;
}

/// True iff some subset of `others` made only of subsets of `target` has a
/// union equal to `target`. Exhaustive over all 2^n subsets.
inline bool brute_force_union_cover(const PermSet& target, const std::vector<PermSet>& others) {
  std::vector<PermSet> inside;
  for (const auto& o : others)
    if (o.is_subset_of(target) && !(o == target) && !o.empty()) inside.push_back(o);
  const std::size_t n = inside.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    PermSet u;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) u |= inside[i];
    if (u == target) return true;
  }
  return false;
}

/// Minimum role count by trying every subset of every constrained role over
/// a universe of at most 4 permissions (15 candidate roles).
inline std::size_t naive_optimum(const AccessMatrix& upa, std::size_t k) {
  const auto n = static_cast<std::uint32_t>(upa.n_perms());
  std::vector<std::uint32_t> rows;
  for (const auto& r : upa.rows()) {
    std::uint32_t m = 0;
    r.for_each([&](PermIndex p) { m |= 1U << p; });
    rows.push_back(m);
  }
  std::vector<std::uint32_t> cands;
  for (std::uint32_t m = 1; m < (1U << n); ++m)
    if (static_cast<std::size_t>(std::popcount(m)) <= k) cands.push_back(m);
  std::size_t best = SIZE_MAX;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << cands.size()); ++sel) {
    const auto count = static_cast<std::size_t>(std::popcount(sel));
    if (count >= best) continue;
    bool ok = true;
    for (std::uint32_t row : rows) {
      std::uint32_t u = 0;
      for (std::size_t i = 0; i < cands.size(); ++i)
        if (((sel >> i) & 1U) && (cands[i] & ~row) == 0) u |= cands[i];
      if (u != row) {
        ok = false;
        break;
      }
    }
    if (ok) best = count;
  }
  return best;
}

/// Random rows with each cell set with probability ~density.
inline AccessMatrix random_matrix(SplitMix64& rng, std::size_t n_users, std::size_t n_perms, std::uint64_t density_pct) {
  std::vector<PermSet> rows(n_users, PermSet(n_perms));
  for (auto& r : rows)
    for (std::size_t p = 0; p < n_perms; ++p)
      if (rng.uniform(0, 99) < density_pct) r.insert(static_cast<PermIndex>(p));
  return AccessMatrix(n_perms, std::move(rows));
}

}  // namespace rolemine::testing
