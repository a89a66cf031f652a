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

// Cardinality-constrained role miner.
//
// Pipeline:
//   1. one candidate role per distinct nonempty user row;
//   2. drop candidates that are exact unions of smaller candidates;
//   3. split candidates larger than k, reusing already accepted roles first;
//   4. lattice reduction.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "rolemine/core.hpp"
#include "rolemine/lattice.hpp"

namespace rolemine {

struct Candidate {
  PermSet perms;
  std::vector<UserIndex> users;
};

/// Candidates ordered by ascending size, ties by smallest member user.
struct CandidatePool {
  std::vector<Candidate> candidates;
};

inline CandidatePool initial_candidates(const AccessMatrix& upa) {
  CandidatePool pool;
  for (auto& g : distinct_rows(upa)) {
    if (g.perms.empty()) continue;
    pool.candidates.push_back(Candidate{std::move(g.perms), std::move(g.users)});
  }
  // distinct_rows already orders groups by smallest member.
  std::stable_sort(pool.candidates.begin(), pool.candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.perms.size() < b.perms.size(); });
  return pool;
}

/// Removes every role that is exactly the union of other catalog roles
/// contained in it, reassigning its users to that cover.
///
/// Roles are visited smallest first and the cover is picked greedily by
/// largest new coverage, so a role is removed iff the union of its proper
/// subsets still in the catalog equals it. Idempotent.
inline Decomposition eliminate_union_roles(const Decomposition& d, const AccessMatrix& upa) {
  validate_structure(d, upa.n_users());
  auto w = detail::WorkingDecomposition::from(d);
  const std::size_t n = w.perms.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w.perms[a] == w.perms[b]) return a < b;
    return size_lex_less(w.perms[a], w.perms[b]);
  });

  std::vector<std::vector<std::size_t>> replacement(n);
  std::vector<bool> removed(n, false);
  for (std::size_t t : order) {
    std::vector<std::size_t> proper_subsets;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == t || removed[s]) continue;
      if (w.perms[s].is_subset_of(w.perms[t]) && !(w.perms[s] == w.perms[t]) && !w.perms[s].empty()) {
        proper_subsets.push_back(s);
      }
    }
    if (proper_subsets.empty()) continue;
    auto cover = detail::greedy_cover(w.perms[t], w.perms, proper_subsets);
    if (!cover) continue;
    removed[t] = true;
    replacement[t] = std::move(*cover);
  }

  // Cover members are never removed after the role they cover, so one level
  // of replacement is enough.
  for (auto& assigned : w.ua) {
    std::vector<std::size_t> next;
    for (std::size_t r : assigned) {
      if (removed[r]) {
        next.insert(next.end(), replacement[r].begin(), replacement[r].end());
      } else {
        next.push_back(r);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    assigned = std::move(next);
  }
  for (std::size_t r = 0; r < n; ++r)
    if (removed[r]) w.alive[r] = false;
  return w.to_decomposition();
}

/// Splits `candidate` into parts of at most k permissions whose union is the
/// candidate.
///
/// Existing roles (size <= k) contained in the uncovered remainder are reused
/// first, largest first with lexicographic ties. The rest is ordered by
/// descending `frequency` (ascending index on ties) and cut into consecutive
/// chunks of k. An empty `frequency` treats all permissions as equally common.
inline std::vector<PermSet> enforce_cardinality(const PermSet& candidate, std::span<const PermSet> existing,
                                                std::size_t k, std::span<const std::size_t> frequency = {}) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (candidate.size() <= k) return {candidate};

  std::vector<const PermSet*> reusable;
  for (const auto& r : existing) {
    if (!r.empty() && r.size() <= k && r.is_subset_of(candidate)) reusable.push_back(&r);
  }
  std::sort(reusable.begin(), reusable.end(), [](const PermSet* a, const PermSet* b) {
    if (a->size() != b->size()) return a->size() > b->size();
    return lex_less(*a, *b);
  });

  std::vector<PermSet> parts;
  PermSet remainder = candidate;
  for (const PermSet* r : reusable) {
    if (r->is_subset_of(remainder)) {
      parts.push_back(*r);
      remainder.subtract(*r);
    }
  }

  std::vector<PermIndex> rest = remainder.to_vector();
  auto freq_of = [&](PermIndex p) -> std::size_t { return p < frequency.size() ? frequency[p] : 0; };
  std::stable_sort(rest.begin(), rest.end(), [&](PermIndex a, PermIndex b) { return freq_of(a) > freq_of(b); });
  for (std::size_t i = 0; i < rest.size(); i += k) {
    PermSet chunk;
    for (std::size_t j = i; j < std::min(rest.size(), i + k); ++j) chunk.insert(rest[j]);
    parts.push_back(std::move(chunk));
  }
  return parts;
}

/// Full constrained mining pipeline. Deterministic in (upa, cfg); the result
/// is complete, every role has at most `cfg.max_perms_per_role` permissions
/// and the catalog has neither duplicates nor orphans.
inline Decomposition mine_constrained(const AccessMatrix& upa, const MiningConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.max_perms_per_role;

  const CandidatePool pool = initial_candidates(upa);
  Decomposition initial;
  initial.ua.resize(upa.n_users());
  for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
    const RoleId id{static_cast<std::uint32_t>(i)};
    initial.roles.push_back(Role{id, pool.candidates[i].perms});
    for (UserIndex u : pool.candidates[i].users) initial.ua[u].push_back(id);
  }

  const Decomposition reduced = eliminate_union_roles(initial, upa);

  // Smallest member user per surviving role, for the processing order.
  std::vector<std::size_t> first_user(reduced.roles.size(), upa.n_users());
  for (std::size_t u = reduced.ua.size(); u-- > 0;)
    for (RoleId id : reduced.ua[u]) first_user[to_underlying(id)] = u;

  std::vector<std::size_t> order(reduced.roles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t sa = reduced.roles[a].perms.size();
    const std::size_t sb = reduced.roles[b].perms.size();
    if (sa != sb) return sa < sb;
    if (first_user[a] != first_user[b]) return first_user[a] < first_user[b];
    return lex_less(reduced.roles[a].perms, reduced.roles[b].perms);
  });

  std::vector<PermSet> catalog;
  std::unordered_map<PermSet, std::size_t, PermSetHash> catalog_index;
  auto find_or_add = [&](const PermSet& s) {
    auto [it, inserted] = catalog_index.emplace(s, catalog.size());
    if (inserted) catalog.push_back(s);
    return it->second;
  };

  const auto frequency = upa.perm_frequency();
  std::vector<std::vector<std::size_t>> parts_of(reduced.roles.size());
  for (std::size_t r : order) {
    const PermSet& perms = reduced.roles[r].perms;
    if (perms.size() <= k) {
      parts_of[r].push_back(find_or_add(perms));
      continue;
    }
    const auto parts = enforce_cardinality(perms, catalog, k, frequency);
    for (const auto& part : parts) parts_of[r].push_back(find_or_add(part));
  }

  Decomposition mined;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    mined.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(i)}, catalog[i]});
  mined.ua.resize(upa.n_users());
  for (std::size_t u = 0; u < reduced.ua.size(); ++u) {
    for (RoleId id : reduced.ua[u]) {
      for (std::size_t c : parts_of[to_underlying(id)]) mined.ua[u].push_back(RoleId{static_cast<std::uint32_t>(c)});
    }
  }
  mined = canonicalize(mined);

  if (cfg.lattice_reduction) mined = lattice_reduce(upa, mined, k);
  return mined;
}

}  // namespace rolemine
