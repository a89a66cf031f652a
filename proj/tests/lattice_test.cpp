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

#include "rolemine/lattice.hpp"

#include <vector>

#include "gtest/gtest.h"
#include "rolemine/datasets.hpp"
#include "rolemine/miner_constrained.hpp"
#include "rolemine/miner_crm.hpp"
#include "rolemine/random.hpp"
#include "test_util.hpp"

namespace rolemine {
namespace {

using testing::catalog;
using testing::decomposition;
using testing::matrix;
using testing::roles_of;
using P = std::vector<PermIndex>;

TEST(LatticeReduceTest, RemovesRoleCoverableByOthers) {
  // u0 holds C={0,1}; u1 and u2 keep A and B alive.
  const auto upa = matrix(2, {{0, 1}, {0}, {1}});
  const auto d = decomposition({{0}, {1}, {0, 1}}, {{2}, {0}, {1}});
  const auto out = lattice_reduce(upa, d, 2);
  EXPECT_TRUE(is_complete(upa, out));
  EXPECT_EQ(catalog(out), (std::set<P>{{0}, {1}}));
  EXPECT_EQ(roles_of(out, 0), (std::set<P>{{0}, {1}}));
}

TEST(LatticeReduceTest, KeepsRoleWhenRemovalCostsMore) {
  // Five holders of C: re-covering costs 10 edges, removing saves 5 + 2.
  const auto upa = matrix(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0}, {1}});
  const auto d = decomposition({{0}, {1}, {0, 1}}, {{2}, {2}, {2}, {2}, {2}, {0}, {1}});
  const auto out = lattice_reduce(upa, d, 2);
  EXPECT_EQ(catalog(out).size(), 3u);
}

TEST(LatticeReduceTest, DropsRedundantAssignment) {
  const auto upa = matrix(3, {{0, 1, 2}, {0, 1}, {1, 2}, {1}});
  // User 0 holds {0,1}, {1,2} and the redundant {1}.
  const auto d = decomposition({{1}, {0, 1}, {1, 2}}, {{0, 1, 2}, {1}, {2}, {0}});
  const auto out = lattice_reduce(upa, d, 2);
  EXPECT_TRUE(is_complete(upa, out));
  EXPECT_EQ(roles_of(out, 0), (std::set<P>{{0, 1}, {1, 2}}));
  EXPECT_LT(out.ua_size(), d.ua_size());
}

TEST(LatticeReduceTest, MinimalDecompositionUnchanged) {
  const auto upa = matrix(3, {{0, 1}, {2}});
  const auto d = decomposition({{0, 1}, {2}}, {{0}, {1}});
  EXPECT_EQ(serialize_decomposition(lattice_reduce(upa, d, 2)), serialize_decomposition(d));
}

TEST(LatticeReduceTest, SingleRoleUnchanged) {
  const auto upa = matrix(3, {{0, 1, 2}, {0, 1, 2}});
  const auto d = decomposition({{0, 1, 2}}, {{0}, {0}});
  EXPECT_EQ(serialize_decomposition(lattice_reduce(upa, d, 3)), serialize_decomposition(d));
}

TEST(LatticeReduceTest, IncompleteInputIsStructuralError) {
  const auto upa = matrix(2, {{0, 1}});
  EXPECT_THROW(lattice_reduce(upa, decomposition({{0}}, {{0}}), 2), StructuralError);
}

TEST(LatticeReduceTest, ConstraintViolationIsStructuralError) {
  const auto upa = matrix(2, {{0, 1}});
  EXPECT_THROW(lattice_reduce(upa, decomposition({{0, 1}}, {{0}}), 1), StructuralError);
}

TEST(LatticeReduceTest, MonotoneAndIdempotentOnRandomMinerOutputs) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    const auto upa = testing::random_matrix(rng, 1 + rng.uniform(0, 40), 1 + rng.uniform(0, 20), 10 + rng.uniform(0, 40));
    const std::size_t k = 1 + rng.uniform(0, std::max<std::size_t>(1, upa.max_row_size()) - 1);
    MiningConfig cfg;
    cfg.max_perms_per_role = k;
    cfg.lattice_reduction = false;
    for (const auto& raw : {mine_constrained(upa, cfg), mine_crm(upa, cfg)}) {
      const auto once = lattice_reduce(upa, raw, k);
      ASSERT_TRUE(is_complete(upa, once));
      ASSERT_TRUE(satisfies_constraint(once, k));
      EXPECT_LE(once.roles.size(), raw.roles.size());
      EXPECT_LE(once.ua_size() + once.pa_size(), raw.ua_size() + raw.pa_size());
      EXPECT_FALSE(has_orphan_roles(once));
      EXPECT_EQ(serialize_decomposition(lattice_reduce(upa, once, k)), serialize_decomposition(once));
    }
  }
}

}  // namespace
}  // namespace rolemine
