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

// Lattice reduction: removes user-role edges and whole roles whose
// (user, permission) cells are already provided by other roles in the catalog.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "rolemine/core.hpp"

namespace rolemine {
namespace detail {

// Greedy max-coverage choice of roles from `pool` covering `target`.
// Ties: larger role, then lexicographically smaller, then lower position.
// Returns nullopt when the pool cannot cover the target.
inline std::optional<std::vector<std::size_t>> greedy_cover(const PermSet& target, const std::vector<PermSet>& perms,
                                                            const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> chosen;
  PermSet remaining = target;
  while (!remaining.empty()) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    bool found = false;
    for (std::size_t c : pool) {
      const std::size_t gain = perms[c].intersection_size(remaining);
      if (gain == 0) continue;
      bool better = !found || gain > best_gain;
      if (found && gain == best_gain) {
        const std::size_t sc = perms[c].size();
        const std::size_t sb = perms[best].size();
        better = sc > sb || (sc == sb && lex_less(perms[c], perms[best])) ||
                 (sc == sb && perms[c] == perms[best] && c < best);
      }
      if (better) {
        best = c;
        best_gain = gain;
        found = true;
      }
    }
    if (!found) return std::nullopt;
    chosen.push_back(best);
    remaining.subtract(perms[best]);
  }
  return chosen;
}

// Decomposition with roles addressed by position; ids are reassigned on exit.
struct WorkingDecomposition {
  std::vector<PermSet> perms;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> ua;

  static WorkingDecomposition from(const Decomposition& d) {
    WorkingDecomposition w;
    const auto pos = role_positions(d);
    w.perms.reserve(d.roles.size());
    for (const auto& r : d.roles) w.perms.push_back(r.perms);
    w.alive.assign(d.roles.size(), true);
    w.ua.resize(d.ua.size());
    for (std::size_t u = 0; u < d.ua.size(); ++u) {
      for (RoleId id : d.ua[u]) w.ua[u].push_back(pos.at(to_underlying(id)));
      std::sort(w.ua[u].begin(), w.ua[u].end());
      w.ua[u].erase(std::unique(w.ua[u].begin(), w.ua[u].end()), w.ua[u].end());
    }
    return w;
  }

  void drop_orphans() {
    std::vector<bool> used(perms.size(), false);
    for (const auto& a : ua)
      for (std::size_t r : a) used[r] = true;
    for (std::size_t r = 0; r < perms.size(); ++r)
      if (!used[r]) alive[r] = false;
  }

  Decomposition to_decomposition() const {
    Decomposition d;
    std::vector<std::uint32_t> new_id(perms.size(), 0);
    for (std::size_t r = 0; r < perms.size(); ++r) {
      if (!alive[r]) continue;
      new_id[r] = static_cast<std::uint32_t>(d.roles.size());
      d.roles.push_back(Role{RoleId{new_id[r]}, perms[r]});
    }
    d.ua.resize(ua.size());
    for (std::size_t u = 0; u < ua.size(); ++u) {
      for (std::size_t r : ua[u]) d.ua[u].push_back(RoleId{new_id[r]});
    }
    return canonicalize(d);
  }
};

// Drops assignments whose permissions the user's other roles already provide.
// Smaller roles are tried first. Returns true if anything changed.
inline bool prune_redundant_assignments(WorkingDecomposition& w) {
  bool changed = false;
  for (auto& assigned : w.ua) {
    if (assigned.size() < 2) continue;
    std::vector<std::size_t> order = assigned;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (w.perms[a] == w.perms[b]) return a < b;
      return size_lex_less(w.perms[a], w.perms[b]);
    });
    std::vector<std::size_t> kept = order;
    for (std::size_t r : order) {
      PermSet others;
      for (std::size_t s : kept)
        if (s != r) others |= w.perms[s];
      if (w.perms[r].is_subset_of(others)) {
        kept.erase(std::find(kept.begin(), kept.end(), r));
        changed = true;
      }
    }
    std::sort(kept.begin(), kept.end());
    assigned = std::move(kept);
  }
  return changed;
}

}  // namespace detail

/// Removes redundant roles from a complete, k-constrained decomposition.
///
/// Pass structure, repeated to a fixpoint:
///  1. drop a user's assignment when their other roles already cover it;
///  2. visit roles largest first; for every holder, try to re-cover the
///     role's permissions with other catalog roles contained in the holder's
///     row (greedy max coverage). The role is removed when every holder can
///     be re-covered and the net |UA| + |PA| change is not positive.
///
/// The result never has more roles or more |UA| + |PA| than the input and
/// stays complete. Throws StructuralError if `d` is incomplete or breaks k.
inline Decomposition lattice_reduce(const AccessMatrix& upa, const Decomposition& d, std::size_t k) {
  if (!is_complete(upa, d)) throw StructuralError("lattice reduction requires a complete decomposition");
  if (!satisfies_constraint(d, k)) throw StructuralError("lattice reduction requires roles of at most k permissions");

  auto w = detail::WorkingDecomposition::from(d);
  w.drop_orphans();
  const std::size_t n_roles = w.perms.size();

  // Roles are never added below, so each user's assignable set is fixed.
  std::vector<std::vector<std::size_t>> assignable(upa.n_users());
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    for (std::size_t r = 0; r < n_roles; ++r)
      if (w.alive[r] && w.perms[r].is_subset_of(upa.row(u))) assignable[u].push_back(r);
  }

  std::vector<std::size_t> by_size_desc(n_roles);
  std::iota(by_size_desc.begin(), by_size_desc.end(), 0);
  std::sort(by_size_desc.begin(), by_size_desc.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t sa = w.perms[a].size();
    const std::size_t sb = w.perms[b].size();
    if (sa != sb) return sa > sb;
    if (w.perms[a] == w.perms[b]) return a < b;
    return lex_less(w.perms[a], w.perms[b]);
  });

  bool changed = true;
  while (changed) {
    changed = detail::prune_redundant_assignments(w);
    if (changed) w.drop_orphans();

    std::vector<std::vector<std::size_t>> holders(n_roles);
    for (std::size_t u = 0; u < w.ua.size(); ++u)
      for (std::size_t r : w.ua[u]) holders[r].push_back(u);

    for (std::size_t r : by_size_desc) {
      if (!w.alive[r]) continue;
      std::vector<std::vector<std::size_t>> additions(holders[r].size());
      std::ptrdiff_t added = 0;
      bool removable = true;
      for (std::size_t h = 0; h < holders[r].size() && removable; ++h) {
        const std::size_t u = holders[r][h];
        PermSet need = w.perms[r];
        for (std::size_t s : w.ua[u])
          if (s != r) need.subtract(w.perms[s]);
        if (need.empty()) continue;
        std::vector<std::size_t> pool;
        for (std::size_t s : assignable[u])
          if (s != r && w.alive[s]) pool.push_back(s);
        auto cover = detail::greedy_cover(need, w.perms, pool);
        if (!cover) {
          removable = false;
          break;
        }
        additions[h] = std::move(*cover);
        added += static_cast<std::ptrdiff_t>(additions[h].size());
      }
      if (!removable) continue;
      const std::ptrdiff_t delta = added - static_cast<std::ptrdiff_t>(holders[r].size()) -
                                   static_cast<std::ptrdiff_t>(w.perms[r].size());
      if (delta > 0) continue;

      for (std::size_t h = 0; h < holders[r].size(); ++h) {
        const std::size_t u = holders[r][h];
        auto& a = w.ua[u];
        a.erase(std::find(a.begin(), a.end(), r));
        for (std::size_t s : additions[h]) {
          a.insert(std::lower_bound(a.begin(), a.end(), s), s);
          holders[s].push_back(u);
        }
      }
      holders[r].clear();
      w.alive[r] = false;
      changed = true;
    }
  }
  return w.to_decomposition();
}

}  // namespace rolemine
