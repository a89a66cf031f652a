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

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rolemine/core.hpp"

namespace rolemine {

inline constexpr const char* kWscDefinition = "w_r*|R| + w_u*|UA| + w_p*|PA| (no hierarchy terms)";
inline constexpr const char* kAccuracyDefinition = "fraction of truth roles with an exact permission-set match";
inline constexpr const char* kDistanceDefinition = "mean over truth roles of (1 - best Jaccard similarity to a mined role)";

struct MetricsReport {
  std::size_t r_count = 0;
  std::size_t ua_size = 0;
  std::size_t pa_size = 0;
  Rational wsc{0};
  std::optional<Rational> accuracy;
  std::optional<Rational> distance;
  /// Unset when timing is suppressed for byte-stable output.
  std::optional<std::chrono::duration<double, std::milli>> elapsed;

  // Run labels carried into serialized reports.
  std::string algorithm;
  std::size_t k = 0;
  std::string dataset;
  std::uint64_t seed = 0;
};

struct AccuracyDistance {
  Rational accuracy;
  Rational distance;
};

/// Exact-match accuracy and mean best-Jaccard distance of `mined` against
/// `truth`. Both catalogs must be nonempty.
inline AccuracyDistance accuracy_distance(std::span<const PermSet> mined, std::span<const PermSet> truth) {
  if (mined.empty()) throw ConfigError("mined role catalog is empty");
  if (truth.empty()) throw ConfigError("truth role catalog is empty");
  std::size_t exact = 0;
  Rational dist_sum{0};
  for (const auto& t : truth) {
    Rational best{0};
    bool matched = false;
    for (const auto& m : mined) {
      const std::size_t inter = t.intersection_size(m);
      const std::size_t uni = t.size() + m.size() - inter;
      if (uni == 0) continue;
      const Rational j(static_cast<long long>(inter), static_cast<long long>(uni));
      if (j > best) best = j;
      if (inter == uni) matched = true;
    }
    if (matched) ++exact;
    dist_sum += Rational(1) - best;
  }
  const auto n = static_cast<long long>(truth.size());
  return {Rational(static_cast<long long>(exact), n), dist_sum / n};
}

inline std::vector<PermSet> role_perms(const Decomposition& d) {
  std::vector<PermSet> out;
  out.reserve(d.roles.size());
  for (const auto& r : d.roles) out.push_back(r.perms);
  return out;
}

/// Size, WSC and (when `truth` is given) accuracy/distance of a complete
/// decomposition. Throws StructuralError on an incomplete one.
inline MetricsReport measure(const AccessMatrix& upa, const Decomposition& d, const MiningConfig& cfg,
                             const std::optional<std::vector<PermSet>>& truth = std::nullopt) {
  if (!is_complete(upa, d)) throw StructuralError("metrics require a complete decomposition");
  MetricsReport m;
  m.r_count = d.roles.size();
  m.ua_size = d.ua_size();
  m.pa_size = d.pa_size();
  const auto& w = cfg.wsc_weights;
  m.wsc = w.role * static_cast<long long>(m.r_count) + w.user_assignment * static_cast<long long>(m.ua_size) +
          w.permission_assignment * static_cast<long long>(m.pa_size);
  m.k = cfg.max_perms_per_role;
  m.seed = cfg.seed;
  if (truth) {
    if (truth->empty()) throw ConfigError("truth role catalog is empty");
    if (d.roles.empty()) {
      // Nothing mined: no truth role is matched and every best similarity is 0.
      m.accuracy = Rational(0);
      m.distance = Rational(1);
    } else {
      const auto mined = role_perms(d);
      const auto ad = accuracy_distance(mined, *truth);
      m.accuracy = ad.accuracy;
      m.distance = ad.distance;
    }
  }
  return m;
}

/// Rational as a plain decimal: integers verbatim, otherwise %.17g of the
/// nearest double.
inline std::string format_rational(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", r.convert_to<double>());
  return buf;
}

inline std::string format_elapsed(const std::optional<std::chrono::duration<double, std::milli>>& e) {
  if (!e) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", e->count());
  return buf;
}

namespace detail {

inline nlohmann::ordered_json rational_json(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    const auto& num = boost::multiprecision::numerator(r);
    if (num >= 0 && num <= std::numeric_limits<std::uint64_t>::max()) return num.convert_to<std::uint64_t>();
  }
  return r.convert_to<double>();
}

inline std::string rational_exact(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1) s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const MetricsReport& m) {
  nlohmann::ordered_json j;
  j["r_count"] = m.r_count;
  j["ua_size"] = m.ua_size;
  j["pa_size"] = m.pa_size;
  j["wsc"] = detail::rational_json(m.wsc);
  j["accuracy"] = m.accuracy ? detail::rational_json(*m.accuracy) : nlohmann::ordered_json(nullptr);
  j["distance"] = m.distance ? detail::rational_json(*m.distance) : nlohmann::ordered_json(nullptr);
  j["elapsed_ms"] = m.elapsed ? nlohmann::ordered_json(m.elapsed->count()) : nlohmann::ordered_json(nullptr);
  j["algorithm"] = m.algorithm;
  j["k"] = m.k;
  j["dataset"] = m.dataset;
  j["seed"] = m.seed;
  j["exact"]["wsc"] = detail::rational_exact(m.wsc);
  if (m.accuracy) j["exact"]["accuracy"] = detail::rational_exact(*m.accuracy);
  if (m.distance) j["exact"]["distance"] = detail::rational_exact(*m.distance);
  j["definitions"]["wsc"] = kWscDefinition;
  j["definitions"]["accuracy"] = kAccuracyDefinition;
  j["definitions"]["distance"] = kDistanceDefinition;
  return j;
}

inline constexpr const char* kCsvHeader = "dataset,algorithm,k,r_count,ua_size,pa_size,wsc,accuracy,distance,elapsed_ms,seed";

/// One CSV row in kCsvHeader order; absent values are empty fields.
inline std::string to_csv_row(const MetricsReport& m) {
  std::string s;
  s += m.dataset + ",";
  s += m.algorithm + ",";
  s += std::to_string(m.k) + ",";
  s += std::to_string(m.r_count) + ",";
  s += std::to_string(m.ua_size) + ",";
  s += std::to_string(m.pa_size) + ",";
  s += format_rational(m.wsc) + ",";
  s += (m.accuracy ? format_rational(*m.accuracy) : std::string()) + ",";
  s += (m.distance ? format_rational(*m.distance) : std::string()) + ",";
  s += format_elapsed(m.elapsed) + ",";
  s += std::to_string(m.seed);
  return s;
}

}  // namespace rolemine
