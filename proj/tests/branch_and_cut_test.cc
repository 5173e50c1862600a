// Copyright 2026 The PDPCD Solver Authors
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

#include "pdpcd/branch_and_cut.h"

#include <cmath>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"
#include "pdpcd/exhaustive.h"
#include "pdpcd/formulation.h"
#include "pdpcd/validator.h"
#include "test_util.h"

namespace pdpcd {
namespace {

using ::pdpcd::testing::Generated;
using ::pdpcd::testing::MatrixInstance;
using ::pdpcd::testing::ToyInstance;

SolveOptions Quiet() {
  SolveOptions o;
  o.log_interval = 0;
  return o;
}

TEST(BranchAndCutTest, SingleRequest) {
  const Instance inst =
      MatrixInstance(1, 1, {{0, 3, 4}, {3.5, 0, 5}, {4.5, 5, 0}}, 100);
  const SolveResult r = Solve(inst, Quiet());
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 3.0 + 3.5 + 4.0 + 4.5, 1e-9);
  EXPECT_GE(r.nodes, 1);
}

TEST(BranchAndCutTest, IntegralPointHasNoBranchingVariable) {
  const Formulation f = Formulate(Generated(3, 2, 1), true);
  std::vector<double> values(f.model.num_variables(), 0.0);
  for (int j = 0; j < f.model.num_variables(); ++j) {
    if (f.model.variable(j).kind == VarKind::kBinary) values[j] = j % 2;
  }
  EXPECT_FALSE(CheckIntegrality(f.model, values).has_value());
  values[f.model.index.x[0][0]] = 1.0 - 1e-7;
  EXPECT_FALSE(CheckIntegrality(f.model, values).has_value());
}

TEST(BranchAndCutTest, RoutingVariablesComeFirst) {
  const Formulation f = Formulate(Generated(3, 2, 1), true);
  const ModelIndex& idx = f.model.index;
  std::vector<double> values(f.model.num_variables(), 0.0);
  values[idx.x[1][2]] = 0.5;
  values[idx.eta[0][1]] = 0.3;
  EXPECT_EQ(CheckIntegrality(f.model, values), idx.x[1][2]);
  values[idx.x[1][2]] = 0.0;
  EXPECT_EQ(CheckIntegrality(f.model, values), idx.eta[0][1]);
  values[idx.eta_any[1]] = 0.5;
  EXPECT_EQ(CheckIntegrality(f.model, values), idx.eta[0][1]);
  values[idx.eta[0][1]] = 0.0;
  EXPECT_EQ(CheckIntegrality(f.model, values), idx.eta_any[1]);
}

TEST(BranchAndCutTest, MostFractionalThenLowestIndex) {
  const Formulation f = Formulate(Generated(3, 2, 1), true);
  const ModelIndex& idx = f.model.index;
  std::vector<double> values(f.model.num_variables(), 0.0);
  const int lo = idx.x[0][1], hi = idx.x[1][3];
  ASSERT_LT(lo, hi);
  values[lo] = 0.4;
  values[hi] = 0.5;
  EXPECT_EQ(CheckIntegrality(f.model, values), hi);
  values[hi] = 0.6;  // same distance from 1/2 as 0.4
  EXPECT_EQ(CheckIntegrality(f.model, values), lo);
  values[lo] = 0.5;
  values[hi] = 0.5;
  EXPECT_EQ(CheckIntegrality(f.model, values), lo);
}

TEST(BranchAndCutTest, MatchesOracleOnSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = Generated(2 + static_cast<int>(seed % 3), 2, seed);
    const SolveResult oracle = BruteForceSolve(inst);
    const SolveResult r = Solve(inst, Quiet());
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << "seed " << seed;
    ASSERT_TRUE(oracle.incumbent.has_value());
    EXPECT_NEAR(r.objective, oracle.objective,
                1e-6 * std::max(1.0, std::abs(oracle.objective)))
        << "seed " << seed;
    EXPECT_LE(r.bound, r.objective + 1e-9);
    EXPECT_LE(r.gap, 1e-6);
    EXPECT_TRUE(Validate(inst, *r.incumbent).passed());
  }
}

TEST(BranchAndCutTest, OneVehicleMatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = Generated(3, 1, seed);
    const SolveResult oracle = BruteForceSolve(inst);
    const SolveResult r = Solve(inst, Quiet());
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_NEAR(r.objective, oracle.objective, 1e-6 * oracle.objective);
  }
}

TEST(BranchAndCutTest, InfeasibleInstances) {
  const Instance fewer = MatrixInstance(1, 2, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const SolveResult a = Solve(fewer, Quiet());
  EXPECT_EQ(a.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(a.reason.empty());
  EXPECT_FALSE(a.incumbent.has_value());

  Instance tight = Generated(2, 1, 3);
  tight.max_ride_time = 0.0;
  EXPECT_EQ(Solve(tight, Quiet()).status, SolveStatus::kInfeasible);
  EXPECT_EQ(BruteForceSolve(tight).status, SolveStatus::kInfeasible);
}

TEST(BranchAndCutTest, ToySolve) {
  const SolveResult r = Solve(ToyInstance(), Quiet());
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1101.234, 1e-3);
  EXPECT_LE(r.root_bound, 1101.234 + 1e-6);
}

TEST(BranchAndCutTest, RepeatedSolvesAreIdentical) {
  const Instance inst = Generated(5, 2, 3);
  SolveOptions o;
  o.log_interval = 1;
  o.log_elapsed = false;
  const SolveResult a = Solve(inst, o);
  const SolveResult b = Solve(inst, o);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.log, b.log);
  EXPECT_EQ(a.lp_iterations, b.lp_iterations);
  ASSERT_TRUE(a.incumbent && b.incumbent);
  EXPECT_EQ(StoreSolution(*a.incumbent), StoreSolution(*b.incumbent));
  EXPECT_EQ(a.log.find("t="), std::string::npos);
}

TEST(BranchAndCutTest, LogLinesCarryElapsedTime) {
  SolveOptions o;
  o.log_interval = 1;
  std::ostringstream stream;
  o.log = &stream;
  const SolveResult r = Solve(Generated(3, 2, 2), o);
  EXPECT_EQ(stream.str(), r.log);
  const std::regex stamp("  t=[0-9]+\\.[0-9]{2}s$");
  std::istringstream lines(r.log);
  std::string line;
  int stamped = 0;
  while (std::getline(lines, line)) {
    if (std::regex_search(line, stamp)) ++stamped;
  }
  EXPECT_GE(stamped, 2);
}

TEST(BranchAndCutTest, ThreadsAgreeWithSingleWorker) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = Generated(4, 2, seed);
    SolveOptions o = Quiet();
    const SolveResult one = Solve(inst, o);
    o.threads = 3;
    const SolveResult three = Solve(inst, o);
    ASSERT_EQ(one.status, SolveStatus::kOptimal);
    ASSERT_EQ(three.status, SolveStatus::kOptimal);
    EXPECT_NEAR(one.objective, three.objective, 1e-6 * one.objective);
    EXPECT_TRUE(Validate(inst, *three.incumbent).passed());
  }
}

TEST(BranchAndCutTest, NodeLimitStopsTheSearch) {
  SolveOptions o = Quiet();
  o.node_limit = 1;
  const SolveResult r = Solve(Generated(5, 2, 2), o);
  EXPECT_LE(r.nodes, 1);
  EXPECT_TRUE(r.status == SolveStatus::kOptimal ||
              r.status == SolveStatus::kTimeLimitFeasible ||
              r.status == SolveStatus::kTimeLimitNoSolution);
  if (r.status != SolveStatus::kOptimal) EXPECT_GT(r.gap, 0.0);
}

TEST(BranchAndCutTest, SummaryJsonFields) {
  const SolveResult r = Solve(Generated(2, 2, 1), Quiet());
  const std::string json = r.SummaryJson();
  for (const char* key : {"\"status\"", "\"CNS\"", "\"NE\"", "\"CPU\"",
                          "\"ost\"", "\"gap\"", "\"bound\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
  EXPECT_NE(json.find("\"optimal\""), std::string::npos);
}

}  // namespace
}  // namespace pdpcd
