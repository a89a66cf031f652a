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

#include "rolemine/oracle.hpp"

#include <vector>

#include "gtest/gtest.h"
#include "rolemine/miner_constrained.hpp"
#include "rolemine/miner_crm.hpp"
#include "rolemine/random.hpp"
#include "test_util.hpp"

namespace rolemine {
namespace {

using testing::matrix;

TEST(OracleTest, IdentityNeedsThree) {
  EXPECT_EQ(optimal_role_count(matrix(3, {{0}, {1}, {2}}), 3).role_count, 3u);
}

TEST(OracleTest, IdenticalRowsNeedOne) {
  EXPECT_EQ(optimal_role_count(matrix(2, {{0, 1}, {0, 1}}), 2).role_count, 1u);
}

TEST(OracleTest, OverlappingRowsNeedTwo) {
  const auto upa = matrix(3, {{0, 1}, {1, 2}, {0, 1, 2}});
  ASSERT_EQ(testing::naive_optimum(upa, 2), 2u);
  const auto res = optimal_role_count(upa, 2);
  EXPECT_EQ(res.role_count, 2u);
  EXPECT_EQ(testing::catalog(res.witness), (std::set<std::vector<PermIndex>>{{0, 1}, {1, 2}}));
}

TEST(OracleTest, EmptyMatrixNeedsZero) {
  EXPECT_EQ(optimal_role_count(matrix(3, {{}, {}}), 1).role_count, 0u);
}

TEST(OracleTest, GuardRejectsLargeInstances) {
  EXPECT_THROW(optimal_role_count(AccessMatrix(1, 7), 2), SizeError);
  EXPECT_THROW(optimal_role_count(matrix(3, {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}), 2), SizeError);
  EXPECT_THROW(optimal_role_count(matrix(3, {{0}}), 0), ConfigError);
}

TEST(OracleTest, AgreesWithNaiveEnumeration) {
  SplitMix64 rng(31);
  int checked = 0;
  while (checked < 150) {
    const auto upa = testing::random_matrix(rng, 1 + rng.uniform(0, 5), 1 + rng.uniform(0, 3), 50);
    if (distinct_rows(upa).size() > 6) continue;
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto res = optimal_role_count(upa, k);
      ASSERT_EQ(res.role_count, testing::naive_optimum(upa, k));
      ASSERT_EQ(res.witness.roles.size(), res.role_count);
      EXPECT_TRUE(is_complete(upa, res.witness));
      EXPECT_TRUE(satisfies_constraint(res.witness, k));
    }
    ++checked;
  }
}

TEST(OracleTest, MonotoneInKAndHeuristicsNeverBeatIt) {
  SplitMix64 rng(32);
  int checked = 0;
  while (checked < 150) {
    const auto upa = testing::random_matrix(rng, 1 + rng.uniform(0, 6), 1 + rng.uniform(0, 5), 45);
    if (distinct_rows(upa).size() > 6) continue;
    std::size_t prev = SIZE_MAX;
    for (std::size_t k = 1; k <= 6; ++k) {
      const std::size_t opt = optimal_role_count(upa, k).role_count;
      EXPECT_LE(opt, prev);
      prev = opt;
      MiningConfig cfg;
      cfg.max_perms_per_role = k;
      EXPECT_GE(mine_constrained(upa, cfg).roles.size(), opt);
      EXPECT_GE(mine_crm(upa, cfg).roles.size(), opt);
    }
    ++checked;
  }
}

}  // namespace
}  // namespace rolemine
