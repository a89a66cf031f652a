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

// Domain types for constrained role mining: the user-permission matrix, roles,
// decompositions and the exact-cover completeness contract every miner meets.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rolemine/perm_set.hpp"

namespace rolemine {

using Rational = boost::multiprecision::cpp_rational;

/// Malformed decomposition or a violated precondition on one.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid argument values (k < 1, bad generator parameters, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RoleId : std::uint32_t {};

constexpr std::uint32_t to_underlying(RoleId id) { return static_cast<std::uint32_t>(id); }

/// The user-permission assignment relation. Immutable once built.
class AccessMatrix {
 public:
  AccessMatrix() = default;

  AccessMatrix(std::size_t n_users, std::size_t n_perms) : n_perms_(n_perms), rows_(n_users, PermSet(n_perms)) {}

  /// Rows are index lists; duplicates collapse. Throws ConfigError on an
  /// index outside [0, n_perms).
  AccessMatrix(std::size_t n_perms, const std::vector<std::vector<PermIndex>>& rows) : n_perms_(n_perms) {
    rows_.reserve(rows.size());
    for (std::size_t u = 0; u < rows.size(); ++u) {
      for (PermIndex p : rows[u]) {
        if (p >= n_perms) {
          throw ConfigError("permission index " + std::to_string(p) + " of user " + std::to_string(u) +
                            " is out of range for " + std::to_string(n_perms) + " permissions");
        }
      }
      rows_.push_back(PermSet::from_indices(rows[u], n_perms));
    }
  }

  AccessMatrix(std::size_t n_perms, std::vector<PermSet> rows) : n_perms_(n_perms), rows_(std::move(rows)) {
    for (std::size_t u = 0; u < rows_.size(); ++u) {
      if (rows_[u].extent() > n_perms_) {
        throw ConfigError("row of user " + std::to_string(u) + " exceeds " + std::to_string(n_perms) +
                          " permissions");
      }
    }
  }

  std::size_t n_users() const { return rows_.size(); }
  std::size_t n_perms() const { return n_perms_; }
  const PermSet& row(std::size_t u) const { return rows_.at(u); }
  const std::vector<PermSet>& rows() const { return rows_; }

  /// Number of (user, permission) pairs.
  std::size_t cell_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  std::size_t max_row_size() const {
    std::size_t m = 0;
    for (const auto& r : rows_) m = std::max(m, r.size());
    return m;
  }

  /// Per-permission count of users holding it.
  std::vector<std::size_t> perm_frequency() const {
    std::vector<std::size_t> freq(n_perms_, 0);
    for (const auto& r : rows_) r.for_each([&](PermIndex p) { ++freq[p]; });
    return freq;
  }

  friend bool operator==(const AccessMatrix&, const AccessMatrix&) = default;

 private:
  std::size_t n_perms_ = 0;
  std::vector<PermSet> rows_;
};

struct Role {
  RoleId id{};
  PermSet perms;
};

/// A role catalog plus a user-to-roles assignment. `ua[u]` lists the role
/// ids assigned to user u; PA is implied by the catalog.
struct Decomposition {
  std::vector<Role> roles;
  std::vector<std::vector<RoleId>> ua;

  std::size_t ua_size() const {
    std::size_t n = 0;
    for (const auto& a : ua) n += a.size();
    return n;
  }

  std::size_t pa_size() const {
    std::size_t n = 0;
    for (const auto& r : roles) n += r.perms.size();
    return n;
  }
};

enum class TieBreak { LowestIndexFirst };

struct WscWeights {
  Rational role{1};
  Rational user_assignment{1};
  Rational permission_assignment{1};
};

struct MiningConfig {
  std::size_t max_perms_per_role = 1;
  WscWeights wsc_weights{};
  std::uint64_t seed = 0;
  TieBreak tie_break = TieBreak::LowestIndexFirst;
  /// Run lattice reduction as the final pipeline step.
  bool lattice_reduction = true;

  void validate() const {
    if (max_perms_per_role < 1) throw ConfigError("k must be >= 1");
    if (wsc_weights.role < 0 || wsc_weights.user_assignment < 0 || wsc_weights.permission_assignment < 0) {
      throw ConfigError("wsc weights must be nonnegative");
    }
  }
};

/// Maps role id to its position in `d.roles`. Throws StructuralError on
/// duplicate ids.
inline std::unordered_map<std::uint32_t, std::size_t> role_positions(const Decomposition& d) {
  std::unordered_map<std::uint32_t, std::size_t> pos;
  pos.reserve(d.roles.size());
  for (std::size_t i = 0; i < d.roles.size(); ++i) {
    if (!pos.emplace(to_underlying(d.roles[i].id), i).second) {
      throw StructuralError("duplicate role id " + std::to_string(to_underlying(d.roles[i].id)));
    }
  }
  return pos;
}

/// Throws StructuralError when a user references an unknown role id or the
/// assignment does not have one entry per user.
inline void validate_structure(const Decomposition& d, std::size_t n_users) {
  if (d.ua.size() != n_users) {
    throw StructuralError("assignment covers " + std::to_string(d.ua.size()) + " users, matrix has " +
                          std::to_string(n_users));
  }
  const auto pos = role_positions(d);
  for (std::size_t u = 0; u < d.ua.size(); ++u) {
    for (RoleId id : d.ua[u]) {
      if (!pos.contains(to_underlying(id))) {
        throw StructuralError("user " + std::to_string(u) + " references unknown role " +
                              std::to_string(to_underlying(id)));
      }
    }
  }
}

/// True iff every user's assigned roles union to exactly their row.
inline bool is_complete(const AccessMatrix& upa, const Decomposition& d) {
  validate_structure(d, upa.n_users());
  const auto pos = role_positions(d);
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    PermSet covered(upa.n_perms());
    for (RoleId id : d.ua[u]) covered |= d.roles[pos.at(to_underlying(id))].perms;
    if (!(covered == upa.row(u))) return false;
  }
  return true;
}

inline bool satisfies_constraint(const Decomposition& d, std::size_t k) {
  return std::all_of(d.roles.begin(), d.roles.end(), [k](const Role& r) { return r.perms.size() <= k; });
}

inline bool has_orphan_roles(const Decomposition& d) {
  std::unordered_map<std::uint32_t, bool> used;
  for (const auto& a : d.ua)
    for (RoleId id : a) used[to_underlying(id)] = true;
  return std::any_of(d.roles.begin(), d.roles.end(), [&](const Role& r) { return !used.contains(to_underlying(r.id)); });
}

inline bool has_duplicate_roles(const Decomposition& d) {
  std::unordered_map<PermSet, int, PermSetHash> seen;
  for (const auto& r : d.roles) {
    if (++seen[r.perms] > 1) return true;
  }
  return false;
}

inline bool has_empty_roles(const Decomposition& d) {
  return std::any_of(d.roles.begin(), d.roles.end(), [](const Role& r) { return r.perms.empty(); });
}

struct RowGroup {
  PermSet perms;
  std::vector<UserIndex> users;
};

/// Groups users with identical rows, ordered by smallest member index. The
/// empty row, when present, forms a group like any other.
inline std::vector<RowGroup> distinct_rows(const AccessMatrix& upa) {
  std::vector<RowGroup> groups;
  std::unordered_map<PermSet, std::size_t, PermSetHash> index;
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    auto [it, inserted] = index.emplace(upa.row(u), groups.size());
    if (inserted) groups.push_back(RowGroup{upa.row(u), {}});
    groups[it->second].users.push_back(static_cast<UserIndex>(u));
  }
  return groups;
}

/// Renumbers roles 0..|R|-1 in (size, lexicographic) order and sorts every
/// user's assignment. Two decompositions with the same content canonicalize
/// to the same value.
inline Decomposition canonicalize(const Decomposition& d) {
  std::vector<std::size_t> order(d.roles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return size_lex_less(d.roles[a].perms, d.roles[b].perms); });
  std::unordered_map<std::uint32_t, RoleId> remap;
  Decomposition out;
  out.roles.reserve(d.roles.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Role& r = d.roles[order[i]];
    const RoleId nid{static_cast<std::uint32_t>(i)};
    remap.emplace(to_underlying(r.id), nid);
    out.roles.push_back(Role{nid, r.perms});
  }
  out.ua.resize(d.ua.size());
  for (std::size_t u = 0; u < d.ua.size(); ++u) {
    for (RoleId id : d.ua[u]) out.ua[u].push_back(remap.at(to_underlying(id)));
    std::sort(out.ua[u].begin(), out.ua[u].end());
    out.ua[u].erase(std::unique(out.ua[u].begin(), out.ua[u].end()), out.ua[u].end());
  }
  return out;
}

/// One role per permission in use; always complete and satisfies any k >= 1.
inline Decomposition singleton_decomposition(const AccessMatrix& upa) {
  Decomposition d;
  d.ua.resize(upa.n_users());
  std::vector<std::int64_t> role_of(upa.n_perms(), -1);
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    upa.row(u).for_each([&](PermIndex p) {
      if (role_of[p] < 0) {
        role_of[p] = static_cast<std::int64_t>(d.roles.size());
        PermSet s(upa.n_perms());
        s.insert(p);
        d.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(d.roles.size())}, std::move(s)});
      }
      d.ua[u].push_back(RoleId{static_cast<std::uint32_t>(role_of[p])});
    });
  }
  return canonicalize(d);
}

}  // namespace rolemine
