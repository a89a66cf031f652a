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
#include <optional>
#include <string>
#include <string_view>

#include "rolemine/core.hpp"
#include "rolemine/lattice.hpp"
#include "rolemine/miner_constrained.hpp"
#include "rolemine/miner_crm.hpp"

namespace rolemine {

enum class Algorithm { Constrained, Crm };

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "constrained") return Algorithm::Constrained;
  if (name == "crm") return Algorithm::Crm;
  return std::nullopt;
}

inline std::string algorithm_name(Algorithm a) { return a == Algorithm::Constrained ? "constrained" : "crm"; }

struct MiningRun {
  Decomposition decomposition;
  std::chrono::duration<double, std::milli> elapsed{};
};

/// Runs one miner followed, when `cfg.lattice_reduction` is set, by lattice
/// reduction. The wall-clock time covers mining and reduction only.
inline MiningRun run_miner(Algorithm algo, const AccessMatrix& upa, const MiningConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  MiningRun run;
  if (algo == Algorithm::Constrained) {
    run.decomposition = mine_constrained(upa, cfg);
  } else {
    run.decomposition = mine_crm(upa, cfg);
    if (cfg.lattice_reduction) run.decomposition = lattice_reduce(upa, run.decomposition, cfg.max_perms_per_role);
  }
  run.elapsed = std::chrono::steady_clock::now() - start;
  return run;
}

}  // namespace rolemine
