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

#include "pdpcd/formulation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtest/gtest.h"
#include "pdpcd/arcs.h"
#include "pdpcd/exhaustive.h"
#include "pdpcd/generator.h"
#include "pdpcd/lp.h"
#include "pdpcd/validator.h"
#include "test_util.h"

namespace pdpcd {
namespace {

using ::pdpcd::testing::Generated;
using ::pdpcd::testing::MatrixInstance;
using ::pdpcd::testing::ToyInstance;

Matrix Uniform(int n, double value) {
  Matrix m(2 * n + 1, std::vector<double>(2 * n + 1, value));
  for (int i = 0; i <= 2 * n; ++i) m[i][i] = 0.0;
  return m;
}

MilpModel BaseModel(const Instance& inst) {
  const ArcSet arcs = BuildArcSet(inst);
  return BuildMilp(inst, arcs, ComputeBigM(inst, arcs));
}

int CountVariables(const MilpModel& m, auto pred) {
  int count = 0;
  for (const Variable& v : m.variables()) count += pred(v) ? 1 : 0;
  return count;
}

bool NamePrefix(const Variable& v, const std::string& prefix) {
  return v.name.rfind(prefix, 0) == 0;
}

TEST(FormulationTest, FourRequestsTwoVehiclesCounts) {
  const Instance inst = MatrixInstance(4, 2, Uniform(4, 1.0));
  const MilpModel m = BaseModel(inst);
  const ArcSet arcs = BuildArcSet(inst);
  EXPECT_EQ(arcs.size(), 40);
  EXPECT_EQ(CountVariables(m, [](const Variable& v) {
              return v.branch_class == BranchClass::kRouting;
            }),
            80);
  EXPECT_EQ(CountVariables(m, [](const Variable& v) {
              return v.branch_class == BranchClass::kTransfer;
            }),
            16);
  EXPECT_EQ(CountVariables(m, [](const Variable& v) {
              return v.branch_class == BranchClass::kIndicator;
            }),
            4);
}

// Counts derived family by family from the constraint definitions, for the
// unreduced arc set.
struct ClosedForm {
  int arcs, variables;
  int eq2, eq3, eq4, eq5, eq6, eq7, eq8, eq10, eq11, eq12, eq13, eq14, eq15,
      eq16, eq17, eq18, eq19, eq20, eq23, eq24;
  int servetime, subtour, ridelb;
};

ClosedForm Expected(int n, int k) {
  ClosedForm f{};
  f.arcs = 4 * n + 2 * n * (n - 1);
  const int in_arcs = 2 * n * n;  // arcs ending at a pickup or delivery
  f.variables = f.arcs * k           // x
                + 2 * n * k          // eta, theta
                + 2 * k              // indicators
                + (2 * n + 4) * k    // u per vehicle and vertex
                + 2 * n              // u served
                + n                  // r
                + 2 * k              // tau, w
                + n                  // z
                + in_arcs * k;       // sigma
  f.eq2 = 2 * n;
  f.eq3 = f.eq4 = k;
  f.eq5 = f.eq6 = 2 * k;
  f.eq7 = 2 * n * k;
  f.eq8 = f.arcs * k;
  f.eq10 = f.eq11 = n * k;
  f.eq12 = f.eq13 = (n + 1) * k;
  f.eq14 = f.eq15 = f.eq16 = k;
  f.eq17 = f.eq18 = n * k;
  f.eq19 = f.eq20 = k;
  f.eq23 = 3 * in_arcs * k;
  f.eq24 = n;
  f.servetime = 2 * 2 * n * k;
  f.subtour = n * (n - 1);
  f.ridelb = n + n * k;
  return f;
}

TEST(FormulationTest, CountsFollowClosedForms) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= std::min(n, 3); ++k) {
      SCOPED_TRACE(::testing::Message() << "n=" << n << " k=" << k);
      const Instance inst = MatrixInstance(n, k, Uniform(n, 1.0));
      const ArcSet arcs = BuildArcSet(inst);
      MilpModel m = BuildMilp(inst, arcs, ComputeBigM(inst, arcs));
      const ClosedForm f = Expected(n, k);
      EXPECT_EQ(arcs.size(), f.arcs);
      EXPECT_EQ(m.num_variables(), f.variables);
      EXPECT_EQ(m.CountRows(RowTag::kEq2), f.eq2);
      EXPECT_EQ(m.CountRows(RowTag::kEq3), f.eq3);
      EXPECT_EQ(m.CountRows(RowTag::kEq4), f.eq4);
      EXPECT_EQ(m.CountRows(RowTag::kEq5), f.eq5);
      EXPECT_EQ(m.CountRows(RowTag::kEq6), f.eq6);
      EXPECT_EQ(m.CountRows(RowTag::kEq7), f.eq7);
      EXPECT_EQ(m.CountRows(RowTag::kEq8), f.eq8);
      EXPECT_EQ(m.CountRows(RowTag::kEq10), f.eq10);
      EXPECT_EQ(m.CountRows(RowTag::kEq11), f.eq11);
      EXPECT_EQ(m.CountRows(RowTag::kEq12), f.eq12);
      EXPECT_EQ(m.CountRows(RowTag::kEq13), f.eq13);
      EXPECT_EQ(m.CountRows(RowTag::kEq14), f.eq14);
      EXPECT_EQ(m.CountRows(RowTag::kEq15), f.eq15);
      EXPECT_EQ(m.CountRows(RowTag::kEq16), f.eq16);
      EXPECT_EQ(m.CountRows(RowTag::kEq17), f.eq17);
      EXPECT_EQ(m.CountRows(RowTag::kEq18), f.eq18);
      EXPECT_EQ(m.CountRows(RowTag::kEq19), f.eq19);
      EXPECT_EQ(m.CountRows(RowTag::kEq20), f.eq20);
      EXPECT_EQ(m.CountRows(RowTag::kEq23), f.eq23);
      EXPECT_EQ(m.CountRows(RowTag::kEq24), f.eq24);
      const int base_rows = m.num_constraints();
      EXPECT_EQ(base_rows, f.eq2 + f.eq3 + f.eq4 + f.eq5 + f.eq6 + f.eq7 +
                               f.eq8 + f.eq10 + f.eq11 + f.eq12 + f.eq13 +
                               f.eq14 + f.eq15 + f.eq16 + f.eq17 + f.eq18 +
                               f.eq19 + f.eq20 + f.eq23 + f.eq24);
      AddValidInequalities(m, inst, arcs);
      EXPECT_EQ(m.CountRows(RowTag::kViServeTime), f.servetime);
      EXPECT_EQ(m.CountRows(RowTag::kViSubtour), f.subtour);
      EXPECT_EQ(m.CountRows(RowTag::kViRideTimeLb), f.ridelb);
      EXPECT_EQ(m.CountRows(RowTag::kViConflict), 0);
    }
  }
}

TEST(FormulationTest, CatalogInvariants) {
  const Instance inst = ToyInstance();
  const Formulation f = Formulate(inst, true);
  const double lo = inst.depot_window.earliest, hi = inst.depot_window.latest;
  for (const Variable& v : f.model.variables()) {
    SCOPED_TRACE(v.name);
    ASSERT_TRUE(std::isfinite(v.lower) && std::isfinite(v.upper));
    if (v.kind == VarKind::kBinary) {
      EXPECT_EQ(v.lower, 0.0);
      EXPECT_EQ(v.upper, 1.0);
    } else if (NamePrefix(v, "r_")) {
      EXPECT_EQ(v.lower, 0.0);
      EXPECT_EQ(v.upper, inst.max_ride_time);
    } else if (NamePrefix(v, "sigma_")) {
      EXPECT_EQ(v.lower, -f.bigm.sigma);
      EXPECT_EQ(v.upper, f.bigm.sigma);
    } else {
      EXPECT_GE(v.lower, lo);
      EXPECT_LE(v.upper, hi);
    }
  }
  for (const Constraint& c : f.model.constraints()) {
    EXPECT_TRUE(std::isfinite(c.rhs));
    for (double a : c.coefs) EXPECT_TRUE(std::isfinite(a));
    EXPECT_FALSE(RowTagName(c.tag).empty());
  }
}

TEST(FormulationTest, RoutingObjectiveIsArcCost) {
  const Instance inst = ToyInstance();
  const Formulation f = Formulate(inst, true);
  for (int k = 0; k < inst.num_vehicles(); ++k) {
    for (int a = 0; a < f.arcs.size(); ++a) {
      const Arc& arc = f.arcs.arc(a);
      EXPECT_EQ(f.model.variable(f.model.index.x[k][a]).objective,
                inst.Cost(arc.from, arc.to));
    }
  }
  int with_cost = 0;
  for (const Variable& v : f.model.variables()) with_cost += v.objective != 0.0;
  EXPECT_EQ(with_cost, f.arcs.size() * inst.num_vehicles());
}

TEST(FormulationTest, BigMValues) {
  // Arc (1, 2) with l_1 = 562, t = 50, e_2 = 455.
  Instance inst = MatrixInstance(2, 1, Uniform(2, 50.0), 2000.0);
  inst.pickups[0].window = {400.0, 562.0};
  inst.pickups[1].window = {455.0, 600.0};
  const ArcSet arcs = BuildArcSet(inst);
  const BigMTable bigm = ComputeBigM(inst, arcs);
  EXPECT_DOUBLE_EQ(bigm.precedence[*arcs.Find(1, 2)], 157.0);
  for (double m : bigm.precedence) EXPECT_GT(m, 0.0);

  const Instance toy = ToyInstance();
  const Formulation f = Formulate(toy, true);
  EXPECT_EQ(f.bigm.reload_sync, 1320.0);
  EXPECT_EQ(f.bigm.unload_sync, 1320.0);
  EXPECT_EQ(f.bigm.sigma, 1320.0);
}

TEST(FormulationTest, DegenerateWindowKeepsBigMPositive) {
  Instance inst = MatrixInstance(2, 1, Uniform(2, 0.0), 100.0);
  for (auto& p : inst.pickups) p.window = {10.0, 10.0};
  const ArcSet arcs = BuildArcSet(inst);
  const BigMTable bigm = ComputeBigM(inst, arcs);
  EXPECT_EQ(bigm.precedence[*arcs.Find(1, 2)], kBigMFloor);
}

TEST(FormulationTest, SubtourRowForFirstPickupPair) {
  // Wide windows keep both directions between pickups 1 and 2.
  GeneratorParams p;
  p.n = 3;
  p.window_slack = 1000.0;
  const Instance inst = GenerateInstance(p).instance;
  const Formulation f = Formulate(inst, true);
  const auto fwd = f.arcs.Find(1, 2), bwd = f.arcs.Find(2, 1);
  ASSERT_TRUE(fwd && bwd);
  std::vector<int> expected;
  for (int k = 0; k < inst.num_vehicles(); ++k) {
    expected.push_back(f.model.index.x[k][*fwd]);
    expected.push_back(f.model.index.x[k][*bwd]);
  }
  std::sort(expected.begin(), expected.end());
  bool found = false;
  for (const Constraint& c : f.model.constraints()) {
    if (c.tag != RowTag::kViSubtour) continue;
    std::vector<int> vars = c.vars;
    std::sort(vars.begin(), vars.end());
    if (vars != expected) continue;
    found = true;
    EXPECT_EQ(c.sense, Sense::kLessEqual);
    EXPECT_EQ(c.rhs, 1.0);
    for (double a : c.coefs) EXPECT_EQ(a, 1.0);
  }
  EXPECT_TRUE(found);
}

TEST(FormulationTest, ServeTimeRowDegeneratesWhenNoInArcGains) {
  // Vertex 1 opens last among the pickups and the depot window opens at 0,
  // so no in-arc can push its service time beyond e_1.
  Instance inst = MatrixInstance(2, 1, Uniform(2, 5.0), 1000.0);
  inst.pickups[0].window = {500.0, 900.0};
  inst.pickups[1].window = {0.0, 900.0};
  const Formulation f = Formulate(inst, true);
  const int u1 = f.model.index.u[0][1];
  int rows = 0;
  for (const Constraint& c : f.model.constraints()) {
    if (c.tag != RowTag::kViServeTime || c.sense != Sense::kGreaterEqual) {
      continue;
    }
    if (std::find(c.vars.begin(), c.vars.end(), u1) == c.vars.end()) continue;
    ++rows;
    EXPECT_EQ(c.rhs, 500.0);
    for (std::size_t t = 0; t < c.vars.size(); ++t) {
      if (c.vars[t] != u1) EXPECT_EQ(c.coefs[t], 0.0);
    }
  }
  EXPECT_EQ(rows, 1);
}

TEST(FormulationTest, FewerRequestsThanVehiclesIsStructurallyInfeasible) {
  const Instance inst = MatrixInstance(1, 2, Uniform(1, 1.0));
  const ArcSet arcs = BuildArcSet(inst);
  EXPECT_TRUE(StructuralInfeasibility(inst, arcs).has_value());
  EXPECT_THROW(Formulate(inst, true), ModelError);
}

// The big-M indicator coupling (1/M) sum_i eta_i <= eta_any <= sum_i eta_i
// and the per-request form eta_i <= eta_any, eta_any <= sum_i eta_i accept
// the same binary points.
TEST(FormulationTest, IndicatorFormsAgreeOnBinaries) {
  for (int n = 1; n <= 6; ++n) {
    const double big_m = n + 1.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int any = 0; any <= 1; ++any) {
        int sum = 0;
        bool each = true;
        for (int i = 0; i < n; ++i) {
          const int eta = (mask >> i) & 1;
          sum += eta;
          each = each && eta <= any;
        }
        const bool big_m_form = sum / big_m <= any && any <= sum;
        const bool ours = each && any <= sum;
        EXPECT_EQ(big_m_form, ours) << "n=" << n << " mask=" << mask;
      }
    }
  }
}

std::vector<BoundOverride> FixRouting(const MilpModel& m,
                                      std::span<const double> point) {
  std::vector<BoundOverride> fixes;
  for (int j = 0; j < m.num_variables(); ++j) {
    if (m.variable(j).branch_class == BranchClass::kRouting) {
      fixes.push_back({j, point[j], point[j]});
    }
  }
  return fixes;
}

TEST(FormulationTest, SameVehicleServiceForcesNoTransfer) {
  Instance inst = MatrixInstance(3, 2, Uniform(3, 10.0), 1e4);
  // Vehicle 0 handles request 1 end to end and hands request 2 to
  // vehicle 1; vehicle 1 handles request 3 end to end.
  const RouteStructure s{{{{1, 2}, {4}}, {{3}, {5, 6}}}};
  const auto sol = ScheduleFeasible(inst, s);
  ASSERT_TRUE(sol.has_value());
  const Formulation f = Formulate(inst, false);
  const auto point = EmbedSolution(f.model, inst, f.arcs, *sol);
  auto fixes = FixRouting(f.model, point);
  const LinearProgram lp = f.model.Relaxation();
  const ModelIndex& idx = f.model.index;

  // Request 1 stays on vehicle 0: eta_1^0 = theta_1^0 = 0 is forced.
  for (int var : {idx.eta[0][1], idx.theta[0][1]}) {
    auto forced = fixes;
    forced.push_back({var, 1.0, 1.0});
    EXPECT_EQ(SolveLp(lp, forced).status, LpStatus::kInfeasible);
  }
  // The four-case table at the LP optimum.
  const LpSolution relaxed = SolveLp(lp, fixes);
  ASSERT_EQ(relaxed.status, LpStatus::kOptimal);
  const double expected_eta[2][4] = {{0, 0, 1, 0}, {0, 0, 0, 0}};
  const double expected_theta[2][4] = {{0, 0, 0, 0}, {0, 0, 1, 0}};
  for (int k = 0; k < 2; ++k) {
    for (int i = 1; i <= 3; ++i) {
      EXPECT_NEAR(relaxed.values[idx.eta[k][i]], expected_eta[k][i], 1e-9);
      EXPECT_NEAR(relaxed.values[idx.theta[k][i]], expected_theta[k][i], 1e-9);
    }
  }
}

TEST(FormulationTest, EmbeddedFeasibleSolutionsSatisfyTheModel) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    GeneratorParams p;
    p.n = 2 + static_cast<int>(seed % 3);
    p.num_vehicles = 2;
    p.seed = seed;
    const GeneratedInstance g = GenerateInstance(p);
    const SolveResult oracle = BruteForceSolve(g.instance);
    ASSERT_TRUE(oracle.incumbent.has_value());
    for (bool cuts : {false, true}) {
      const Formulation f = Formulate(g.instance, cuts);
      for (const Solution* s : {&g.plan, &*oracle.incumbent}) {
        SCOPED_TRACE(::testing::Message() << "seed " << seed << " cuts " << cuts);
        const auto point = EmbedSolution(f.model, g.instance, f.arcs, *s);
        EXPECT_LE(f.model.MaxViolation(point), 1e-6);
        for (int r : f.model.ViolatedRows(point, 1e-6)) {
          ADD_FAILURE() << "violated " << RowTagName(f.model.constraint(r).tag);
        }
        EXPECT_NEAR(f.model.ObjectiveValue(point), s->cost, 1e-6);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 60);
}

TEST(FormulationTest, ExtractInvertsEmbed) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = Generated(3, 2, seed);
    const SolveResult oracle = BruteForceSolve(inst);
    ASSERT_TRUE(oracle.incumbent.has_value());
    const Solution& s = *oracle.incumbent;
    const Formulation f = Formulate(inst, true);
    const auto point = EmbedSolution(f.model, inst, f.arcs, s);
    const Solution back = ExtractSolution(f.model, inst, f.arcs, point);
    ASSERT_EQ(back.vehicles.size(), s.vehicles.size());
    for (std::size_t k = 0; k < s.vehicles.size(); ++k) {
      EXPECT_EQ(back.vehicles[k].pickup_route, s.vehicles[k].pickup_route);
      EXPECT_EQ(back.vehicles[k].delivery_route, s.vehicles[k].delivery_route);
      EXPECT_NEAR(back.vehicles[k].unload_end, s.vehicles[k].unload_end, 1e-9);
      EXPECT_NEAR(back.vehicles[k].crossdock_departure,
                  s.vehicles[k].crossdock_departure, 1e-9);
    }
    for (std::size_t i = 0; i < s.requests.size(); ++i) {
      EXPECT_NEAR(*back.requests[i].pickup_time, *s.requests[i].pickup_time,
                  1e-9);
      EXPECT_NEAR(back.requests[i].ride_time, s.requests[i].ride_time, 1e-9);
      EXPECT_EQ(back.requests[i].unloaded_by, s.requests[i].unloaded_by);
      EXPECT_EQ(back.requests[i].reloaded_by, s.requests[i].reloaded_by);
    }
    EXPECT_NEAR(back.cost, s.cost, 1e-9);
    EXPECT_TRUE(Validate(inst, back).passed());
  }
}

TEST(FormulationTest, SingleRequestExtraction) {
  Instance inst = MatrixInstance(1, 1, {{0, 3, 4}, {3, 0, 5}, {4, 5, 0}}, 100);
  const Formulation f = Formulate(inst, true);
  const LpSolution lp = SolveLp(f.model.Relaxation());
  ASSERT_EQ(lp.status, LpStatus::kOptimal);
  const Solution s = ExtractSolution(f.model, inst, f.arcs, lp.values);
  EXPECT_EQ(s.vehicles[0].pickup_route, std::vector<int>{1});
  EXPECT_EQ(s.vehicles[0].delivery_route, std::vector<int>{2});
  EXPECT_NEAR(s.cost, 3 + 3 + 4 + 4, 1e-9);
}

TEST(FormulationTest, FractionalRoutingIsRejected) {
  const Instance inst = Generated(3, 2, 2);
  const SolveResult oracle = BruteForceSolve(inst);
  ASSERT_TRUE(oracle.incumbent.has_value());
  const Formulation f = Formulate(inst, true);
  auto point = EmbedSolution(f.model, inst, f.arcs, *oracle.incumbent);
  for (int a = 0; a < f.arcs.size(); ++a) {
    const int j = f.model.index.x[0][a];
    if (point[j] == 1.0) {
      point[j] = 0.5;
      break;
    }
  }
  try {
    ExtractSolution(f.model, inst, f.arcs, point);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_STREQ(e.what(), "non-integral routing variables");
  }
}

TEST(FormulationTest, LpExportNamesEveryFamily) {
  const Formulation f = Formulate(Generated(4, 2, 1), true);
  ASSERT_GT(f.model.CountRows(RowTag::kViSubtour), 0);
  const std::string text = f.model.ToLpFormat();
  for (const char* tag : {"eq2", "eq8", "eq17", "eq23", "eq24", "vi-servetime",
                          "vi-subtour", "vi-ridetimeLB"}) {
    EXPECT_NE(text.find(tag), std::string::npos) << tag;
  }
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("Binaries"), std::string::npos);
}

}  // namespace
}  // namespace pdpcd
