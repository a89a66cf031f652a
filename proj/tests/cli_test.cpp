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

#include <algorithm>
#include <string>

#include "cli_support.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace rolemine {
namespace {

using testing::run_cli;
using testing::scratch_dir;
using testing::slurp;
using testing::spit;

const std::string kBinary = ROLEMINE_CLI_PATH;

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    spit(dir_ / "toy.txt", "alice read\nalice write\nbob read\nbob write\ncarol admin\n");
  }
  std::filesystem::path dir_;
};

TEST_F(CliTest, MineWritesDecompositionAndMetrics) {
  const auto r = run_cli(kBinary,
                         "mine --algo constrained --k 2 --input " + q(dir_ / "toy.txt") + " --output " +
                             q(dir_ / "out.txt") + " --metrics " + q(dir_ / "m.json"),
                         dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(slurp(dir_ / "out.txt"), "role 0: p2\nrole 1: p0 p1\nuser 0: r1\nuser 1: r1\nuser 2: r0\n");
  const auto m = nlohmann::json::parse(slurp(dir_ / "m.json"));
  EXPECT_EQ(m["r_count"], 2);
  EXPECT_EQ(m["ua_size"], 3);
  EXPECT_EQ(m["pa_size"], 3);
  EXPECT_EQ(m["wsc"], 8);
  EXPECT_TRUE(m["accuracy"].is_null());
  EXPECT_EQ(m["algorithm"], "constrained");
  EXPECT_EQ(m["dataset"], "toy");
  EXPECT_TRUE(m["elapsed_ms"].is_number());
  const auto names = nlohmann::json::parse(slurp(dir_ / "out.txt.names.json"));
  EXPECT_EQ(names["users"][2], "carol");
}

TEST_F(CliTest, ZeroKIsUsageError) {
  const auto r = run_cli(kBinary, "mine --k 0 --input " + q(dir_ / "toy.txt") + " --output " + q(dir_ / "o"), dir_);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("k must be >= 1"), std::string::npos);
}

TEST_F(CliTest, MissingInputIsDataError) {
  const auto r = run_cli(kBinary, "mine --k 2 --input " + q(dir_ / "missing.txt") + " --output " + q(dir_ / "o"), dir_);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST_F(CliTest, ParseErrorReportsLine) {
  spit(dir_ / "bad.txt", "u1 p1\nu2 p2 p3\n");
  const auto r = run_cli(kBinary, "mine --k 2 --input " + q(dir_ / "bad.txt") + " --output " + q(dir_ / "o"), dir_);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagAndAlgorithm) {
  EXPECT_EQ(run_cli(kBinary, "mine --bogus", dir_).exit_code, 2);
  EXPECT_EQ(run_cli(kBinary, "mine --algo nope --k 2 --input " + q(dir_ / "toy.txt") + " --output " + q(dir_ / "o"), dir_)
                .exit_code,
            2);
}

TEST_F(CliTest, GenIsDeterministic) {
  const std::string flags = " --n-users 30 --n-perms 20 --n-roles 6 --max-roles-per-user 2 --max-perms-per-role 4";
  ASSERT_EQ(run_cli(kBinary, "gen --seed 7" + flags + " --out-upa " + q(dir_ / "a.txt") + " --out-truth " + q(dir_ / "at.txt"), dir_).exit_code, 0);
  ASSERT_EQ(run_cli(kBinary, "gen --seed 7" + flags + " --out-upa " + q(dir_ / "b.txt") + " --out-truth " + q(dir_ / "bt.txt"), dir_).exit_code, 0);
  EXPECT_EQ(slurp(dir_ / "a.txt"), slurp(dir_ / "b.txt"));
  EXPECT_EQ(slurp(dir_ / "at.txt"), slurp(dir_ / "bt.txt"));
  EXPECT_FALSE(slurp(dir_ / "a.txt").empty());
}

TEST_F(CliTest, GenRejectsZeroRoles) {
  EXPECT_EQ(run_cli(kBinary, "gen --n-roles 0 --out-upa " + q(dir_ / "a.txt"), dir_).exit_code, 2);
}

TEST_F(CliTest, GenMineWithTruthReportsAccuracy) {
  ASSERT_EQ(run_cli(kBinary, "gen --seed 3 --n-users 40 --n-perms 15 --n-roles 5 --out-upa " + q(dir_ / "g.txt") +
                                 " --out-truth " + q(dir_ / "t.txt"),
                    dir_)
                .exit_code,
            0);
  const auto r = run_cli(kBinary,
                         "mine --algo crm --k 3 --input " + q(dir_ / "g.txt") + " --truth " + q(dir_ / "t.txt") +
                             " --output " + q(dir_ / "o.txt") + " --metrics " + q(dir_ / "m.json"),
                         dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto m = nlohmann::json::parse(slurp(dir_ / "m.json"));
  EXPECT_TRUE(m["accuracy"].is_number());
  EXPECT_TRUE(m["distance"].is_number());
}

TEST_F(CliTest, CompareCrossProduct) {
  const auto r = run_cli(kBinary,
                         "compare --input " + q(dir_ / "toy.txt") + " --algos constrained,crm --k-list 2,4 --out " +
                             q(dir_ / "c.csv"),
                         dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string csv = slurp(dir_ / "c.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "dataset,algorithm,k,r_count,ua_size,pa_size,wsc,accuracy,distance,elapsed_ms,seed");
}

TEST_F(CliTest, CompareUnknownAlgorithm) {
  EXPECT_EQ(run_cli(kBinary, "compare --input " + q(dir_ / "toy.txt") + " --algos magic --k-list 2", dir_).exit_code, 2);
}

TEST_F(CliTest, CompareTwiceIsByteIdentical) {
  const std::string args = "compare --gen-spec users=40,perms=20,roles=6,count=3 --k-list 2,max/2 --no-timing --seed 5";
  const auto a = run_cli(kBinary, args, dir_);
  const auto b = run_cli(kBinary, args + " --jobs 4", dir_);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("gen-7,crm"), std::string::npos);
}

TEST_F(CliTest, OracleSubcommand) {
  spit(dir_ / "tiny.txt", "110\n011\n111\n");
  const auto r = run_cli(kBinary, "oracle --format dense --k 2 --input " + q(dir_ / "tiny.txt"), dir_);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["optimal_role_count"], 2);
}

TEST_F(CliTest, OracleGuard) {
  spit(dir_ / "wide.txt", "1111111\n");
  EXPECT_EQ(run_cli(kBinary, "oracle --format dense --k 2 --input " + q(dir_ / "wide.txt"), dir_).exit_code, 1);
}

}  // namespace
}  // namespace rolemine
