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

// Constrained Role Miner (CRM) baseline.

#pragma once

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "rolemine/core.hpp"

namespace rolemine {
namespace detail {

// The k permissions of `perms` with the highest frequency, ascending index on
// ties.
inline PermSet truncate_by_frequency(const PermSet& perms, std::size_t k, const std::vector<std::size_t>& frequency) {
  std::vector<PermIndex> v = perms.to_vector();
  std::stable_sort(v.begin(), v.end(), [&](PermIndex a, PermIndex b) { return frequency[a] > frequency[b]; });
  v.resize(std::min(v.size(), k));
  return PermSet::from_indices(v);
}

}  // namespace detail

/// Repeatedly clusters users by their still-uncovered permissions, turns each
/// cluster into a candidate of at most k permissions and accepts the
/// candidate with the most users. The accepted role goes to every user whose
/// uncovered set contains it.
///
/// Role ids in the result follow selection order.
inline Decomposition mine_crm(const AccessMatrix& upa, const MiningConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.max_perms_per_role;

  std::vector<PermSet> uncovered = upa.rows();
  std::vector<std::size_t> frequency = upa.perm_frequency();
  std::size_t remaining = upa.cell_count();

  Decomposition d;
  d.ua.resize(upa.n_users());
  std::unordered_map<PermSet, std::size_t, PermSetHash> by_perms;

  struct Cluster {
    std::size_t users = 0;
    const PermSet* perms = nullptr;
  };

  while (remaining > 0) {
    std::unordered_map<PermSet, std::size_t, PermSetHash> cluster_index;
    std::vector<Cluster> clusters;
    for (const auto& row : uncovered) {
      if (row.empty()) continue;
      auto [it, inserted] = cluster_index.emplace(row, clusters.size());
      if (inserted) clusters.push_back(Cluster{0, &it->first});
      ++clusters[it->second].users;
    }

    std::size_t best_users = 0;
    PermSet best;
    bool have = false;
    for (const auto& c : clusters) {
      PermSet candidate = c.perms->size() <= k ? *c.perms : detail::truncate_by_frequency(*c.perms, k, frequency);
      bool better = !have || c.users > best_users;
      if (have && c.users == best_users) {
        const std::size_t sc = candidate.size();
        const std::size_t sb = best.size();
        better = sc > sb || (sc == sb && lex_less(candidate, best));
      }
      if (better) {
        best = std::move(candidate);
        best_users = c.users;
        have = true;
      }
    }

    auto [it, inserted] = by_perms.emplace(best, d.roles.size());
    if (inserted) d.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(d.roles.size())}, best});
    const RoleId id = d.roles[it->second].id;

    for (std::size_t u = 0; u < uncovered.size(); ++u) {
      if (uncovered[u].empty() || !best.is_subset_of(uncovered[u])) continue;
      d.ua[u].push_back(id);
      uncovered[u].subtract(best);
      best.for_each([&](PermIndex p) { --frequency[p]; });
      remaining -= best.size();
    }
  }
  for (auto& a : d.ua) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return d;
}

}  // namespace rolemine
