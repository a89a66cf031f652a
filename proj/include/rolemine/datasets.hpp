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

// Access-matrix file formats, the canonical decomposition text form and the
// seeded synthetic generator.
//
// Sparse format: one "<user> <permission>" pair per line. '#' starts a
// comment, blank lines are skipped, duplicate pairs collapse. When every
// token of a column is a decimal integer the integers are used as indices
// directly; otherwise that column's tokens are mapped to dense indices in
// first-appearance order.
//
// Dense format: one line per user of '0'/'1' characters, all the same width.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rolemine/core.hpp"
#include "rolemine/random.hpp"

namespace rolemine {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(format(line, column, what)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& what) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

inline std::string_view strip_comment(std::string_view line) {
  const std::size_t hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline bool is_decimal(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline constexpr std::uint64_t kMaxNumericIndex = 1U << 26;

}  // namespace detail

struct SparseMatrixFile {
  AccessMatrix upa;
  /// Index -> original token, per column.
  std::vector<std::string> user_names;
  std::vector<std::string> perm_names;
  bool numeric_users = true;
  bool numeric_perms = true;

  bool has_names() const { return !numeric_users || !numeric_perms; }
};

inline SparseMatrixFile parse_sparse(std::string_view text) {
  struct Pair {
    std::string_view user, perm;
    std::size_t line;
  };
  std::vector<Pair> pairs;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = detail::tokenize(detail::strip_comment(lines[i]));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(i + 1, 0, "expected 2 tokens \"<user> <permission>\", found " + std::to_string(tokens.size()));
    }
    pairs.push_back(Pair{tokens[0], tokens[1], i + 1});
  }

  SparseMatrixFile out;
  out.numeric_users = std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return detail::is_decimal(p.user); });
  out.numeric_perms = std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return detail::is_decimal(p.perm); });

  std::unordered_map<std::string_view, std::uint32_t> user_ids, perm_ids;
  auto resolve = [](std::string_view tok, bool numeric, std::size_t line,
                    std::unordered_map<std::string_view, std::uint32_t>& ids,
                    std::vector<std::string>& names) -> std::uint32_t {
    if (numeric) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || v >= detail::kMaxNumericIndex) {
        throw ParseError(line, 0, "index \"" + std::string(tok) + "\" is too large");
      }
      return static_cast<std::uint32_t>(v);
    }
    auto [it, inserted] = ids.emplace(tok, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.emplace_back(tok);
    return it->second;
  };

  std::vector<std::vector<PermIndex>> rows;
  std::size_t n_perms = 0;
  for (const auto& p : pairs) {
    const std::uint32_t u = resolve(p.user, out.numeric_users, p.line, user_ids, out.user_names);
    const std::uint32_t q = resolve(p.perm, out.numeric_perms, p.line, perm_ids, out.perm_names);
    if (u >= rows.size()) rows.resize(u + 1);
    rows[u].push_back(q);
    n_perms = std::max<std::size_t>(n_perms, q + 1);
  }
  if (out.numeric_users) {
    out.user_names.clear();
    for (std::size_t u = 0; u < rows.size(); ++u) out.user_names.push_back(std::to_string(u));
  }
  if (out.numeric_perms) {
    out.perm_names.clear();
    for (std::size_t q = 0; q < n_perms; ++q) out.perm_names.push_back(std::to_string(q));
  }
  out.upa = AccessMatrix(n_perms, rows);
  return out;
}

inline AccessMatrix parse_dense(std::string_view text) {
  std::vector<PermSet> rows;
  std::optional<std::size_t> width;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = detail::strip_comment(lines[i]);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (width && line.size() != *width) {
      throw ParseError(i + 1, std::min(line.size(), *width) + 1,
                       "ragged row: expected " + std::to_string(*width) + " columns, found " +
                           std::to_string(line.size()));
    }
    width = line.size();
    PermSet row(line.size());
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '1') {
        row.insert(static_cast<PermIndex>(j));
      } else if (line[j] != '0') {
        throw ParseError(i + 1, j + 1, std::string("unexpected character '") + line[j] + "', expected '0' or '1'");
      }
    }
    rows.push_back(std::move(row));
  }
  return AccessMatrix(width.value_or(0), std::move(rows));
}

/// Numeric sparse form: users ascending, permissions ascending.
inline std::string write_sparse(const AccessMatrix& upa) {
  std::string out;
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    upa.row(u).for_each([&](PermIndex p) {
      out += std::to_string(u);
      out += ' ';
      out += std::to_string(p);
      out += '\n';
    });
  }
  return out;
}

inline std::string write_dense(const AccessMatrix& upa) {
  std::string out;
  for (std::size_t u = 0; u < upa.n_users(); ++u) {
    for (std::size_t p = 0; p < upa.n_perms(); ++p) out += upa.row(u).contains(static_cast<PermIndex>(p)) ? '1' : '0';
    out += '\n';
  }
  return out;
}

/// Sidecar name map: {"users": [...], "permissions": [...]}, index order.
inline nlohmann::ordered_json names_json(const SparseMatrixFile& f) {
  nlohmann::ordered_json j;
  j["users"] = f.user_names;
  j["permissions"] = f.perm_names;
  return j;
}

/// Canonical text form: roles in (size, lexicographic) order renumbered from
/// 0 as "role <id>: p<i> ...", followed by "user <u>: r<id> ..." for every
/// user with a nonempty assignment.
inline std::string serialize_decomposition(const Decomposition& d) {
  const Decomposition c = canonicalize(d);
  std::string out;
  for (const auto& r : c.roles) {
    out += "role " + std::to_string(to_underlying(r.id)) + ":";
    r.perms.for_each([&](PermIndex p) { out += " p" + std::to_string(p); });
    out += '\n';
  }
  for (std::size_t u = 0; u < c.ua.size(); ++u) {
    if (c.ua[u].empty()) continue;
    out += "user " + std::to_string(u) + ":";
    for (RoleId id : c.ua[u]) out += " r" + std::to_string(to_underlying(id));
    out += '\n';
  }
  return out;
}

/// Reads the canonical text form (role ids need not be dense or ordered).
/// The assignment is padded with empty entries up to `n_users`.
inline Decomposition parse_decomposition(std::string_view text, std::size_t n_users = 0) {
  Decomposition d;
  auto parse_index = [](std::string_view tok, std::size_t line, std::size_t skip) {
    std::uint64_t v = 0;
    const std::string_view digits = tok.substr(skip);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || v >= detail::kMaxNumericIndex) {
      throw ParseError(line, 0, "malformed index \"" + std::string(tok) + "\"");
    }
    return static_cast<std::uint32_t>(v);
  };

  const auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = detail::tokenize(detail::strip_comment(lines[i]));
    if (tokens.empty()) continue;
    const std::size_t line = i + 1;
    if (tokens.size() < 2 || tokens[1].empty() || tokens[1].back() != ':') {
      throw ParseError(line, 0, "expected \"role <id>:\" or \"user <index>:\"");
    }
    const std::uint32_t head = parse_index(tokens[1].substr(0, tokens[1].size() - 1), line, 0);
    if (tokens[0] == "role") {
      PermSet perms;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        if (tokens[t].front() != 'p') throw ParseError(line, 0, "expected p<index>, found \"" + std::string(tokens[t]) + "\"");
        perms.insert(parse_index(tokens[t], line, 1));
      }
      d.roles.push_back(Role{RoleId{head}, std::move(perms)});
    } else if (tokens[0] == "user") {
      if (head >= d.ua.size()) d.ua.resize(head + 1);
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        if (tokens[t].front() != 'r') throw ParseError(line, 0, "expected r<id>, found \"" + std::string(tokens[t]) + "\"");
        d.ua[head].push_back(RoleId{parse_index(tokens[t], line, 1)});
      }
    } else {
      throw ParseError(line, 1, "unknown record \"" + std::string(tokens[0]) + "\"");
    }
  }
  if (d.ua.size() < n_users) d.ua.resize(n_users);
  return d;
}

struct GeneratorParams {
  std::size_t n_users = 100;
  std::size_t n_perms = 50;
  std::size_t n_roles = 10;
  std::size_t max_roles_per_user = 3;
  std::size_t max_perms_per_role = 5;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_roles < 1) throw ConfigError("n_roles must be >= 1");
    if (max_roles_per_user < 1) throw ConfigError("max_roles_per_user must be >= 1");
    if (max_perms_per_role < 1) throw ConfigError("max_perms_per_role must be >= 1");
    if (n_perms < max_perms_per_role) throw ConfigError("n_perms must be >= max_perms_per_role");
    if (n_users >= detail::kMaxNumericIndex || n_perms >= detail::kMaxNumericIndex ||
        n_roles >= detail::kMaxNumericIndex) {
      throw ConfigError("generator dimensions are too large");
    }
  }
};

struct GeneratedInstance {
  AccessMatrix upa;
  /// Deduplicated generating roles with each user's generating assignment.
  /// Roles no user drew are dropped.
  Decomposition truth;
};

/// Draws roles first, then users:
///   for each role: size = uniform(1, max_perms_per_role),
///                  perms = sample(n_perms, size);
///   for each user: count = uniform(1, min(max_roles_per_user, n_roles)),
///                  roles = sample(n_roles, count).
/// All draws come from one SplitMix64 stream seeded with `seed`, in the
/// order written above.
inline GeneratedInstance generate(const GeneratorParams& params) {
  params.validate();
  SplitMix64 rng(params.seed);

  std::vector<PermSet> drawn;
  drawn.reserve(params.n_roles);
  for (std::size_t r = 0; r < params.n_roles; ++r) {
    const auto size = static_cast<std::uint32_t>(rng.uniform(1, params.max_perms_per_role));
    PermSet perms(params.n_perms);
    for (std::uint32_t p : rng.sample(static_cast<std::uint32_t>(params.n_perms), size)) perms.insert(p);
    drawn.push_back(std::move(perms));
  }

  // Identical draws collapse onto the first occurrence.
  std::vector<std::size_t> canonical(params.n_roles);
  std::unordered_map<PermSet, std::size_t, PermSetHash> first;
  for (std::size_t r = 0; r < drawn.size(); ++r) canonical[r] = first.emplace(drawn[r], r).first->second;

  const std::size_t per_user_cap = std::min(params.max_roles_per_user, params.n_roles);
  std::vector<PermSet> rows(params.n_users, PermSet(params.n_perms));
  std::vector<std::vector<std::size_t>> assigned(params.n_users);
  std::vector<bool> used(params.n_roles, false);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    const auto count = static_cast<std::uint32_t>(rng.uniform(1, per_user_cap));
    for (std::uint32_t r : rng.sample(static_cast<std::uint32_t>(params.n_roles), count)) {
      const std::size_t c = canonical[r];
      rows[u] |= drawn[c];
      assigned[u].push_back(c);
      used[c] = true;
    }
  }

  GeneratedInstance out;
  out.upa = AccessMatrix(params.n_perms, std::move(rows));
  out.truth.ua.resize(params.n_users);
  for (std::size_t r = 0; r < drawn.size(); ++r)
    if (used[r]) out.truth.roles.push_back(Role{RoleId{static_cast<std::uint32_t>(r)}, drawn[r]});
  for (std::size_t u = 0; u < params.n_users; ++u)
    for (std::size_t r : assigned[u]) out.truth.ua[u].push_back(RoleId{static_cast<std::uint32_t>(r)});
  out.truth = canonicalize(out.truth);
  return out;
}

}  // namespace rolemine
