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

#include <fmt/core.h>

namespace pdpcd {

namespace {

Constraint Row(RowTag tag, Sense sense, double rhs) {
  Constraint c;
  c.tag = tag;
  c.sense = sense;
  c.rhs = rhs;
  return c;
}

void Term(Constraint& c, int var, double coef) {
  if (var < 0 || coef == 0.0) return;
  c.vars.push_back(var);
  c.coefs.push_back(coef);
}

bool IsRequestVertex(const Instance& instance, int v) {
  return instance.IsPickup(v) || instance.IsDelivery(v);
}

}  // namespace

BigMTable ComputeBigM(const Instance& instance, const ArcSet& arcs) {
  BigMTable bigm;
  bigm.precedence.reserve(arcs.size());
  for (const Arc& arc : arcs.arcs()) {
    const double m = instance.Window(arc.from).latest + arc.time -
                     instance.Window(arc.to).earliest;
    bigm.precedence.push_back(std::max(kBigMFloor, m));
  }
  const double horizon = std::max(kBigMFloor, instance.depot_window.latest);
  bigm.reload_sync = horizon;
  bigm.unload_sync = horizon;
  bigm.sigma = horizon;
  return bigm;
}

std::optional<std::string> StructuralInfeasibility(const Instance& instance,
                                                   const ArcSet& arcs) {
  if (instance.n() < instance.num_vehicles()) {
    return fmt::format(
        "more vehicles than requests ({} > {}): every vehicle must serve at "
        "least one pickup and one delivery",
        instance.num_vehicles(), instance.n());
  }
  if (arcs.empty()) return std::string("arc set is empty");
  return std::nullopt;
}

MilpModel BuildMilp(const Instance& instance, const ArcSet& arcs,
                    const BigMTable& bigm) {
  if (auto reason = StructuralInfeasibility(instance, arcs)) {
    throw ModelError(*reason);
  }
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  const int nv = instance.num_vertices();
  const double e0 = instance.depot_window.earliest;
  const double l0 = instance.depot_window.latest;

  MilpModel m;
  ModelIndex& idx = m.index;
  idx.x.assign(num_k, std::vector<int>(arcs.size(), -1));
  idx.sigma.assign(num_k, std::vector<int>(arcs.size(), -1));
  idx.eta.assign(num_k, std::vector<int>(n + 1, -1));
  idx.theta.assign(num_k, std::vector<int>(n + 1, -1));
  idx.eta_any.assign(num_k, -1);
  idx.theta_any.assign(num_k, -1);
  idx.u.assign(num_k, std::vector<int>(nv, -1));
  idx.u_served.assign(nv, -1);
  idx.ride.assign(n + 1, -1);
  idx.tau.assign(num_k, -1);
  idx.w.assign(num_k, -1);
  idx.z.assign(n + 1, -1);

  auto name = [&](int v) { return instance.VertexName(v); };

  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs.arc(a);
      idx.x[k][a] = m.AddVariable(
          {fmt::format("x_{}_{}_{}", k, name(arc.from), name(arc.to)),
           VarKind::kBinary, BranchClass::kRouting, 0.0, 1.0, arc.cost});
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int i = 1; i <= n; ++i) {
      idx.eta[k][i] =
          m.AddVariable({fmt::format("eta_{}_{}", k, i), VarKind::kBinary,
                         BranchClass::kTransfer, 0.0, 1.0, 0.0});
      idx.theta[k][i] =
          m.AddVariable({fmt::format("theta_{}_{}", k, i), VarKind::kBinary,
                         BranchClass::kTransfer, 0.0, 1.0, 0.0});
    }
  }
  for (int k = 0; k < num_k; ++k) {
    idx.eta_any[k] =
        m.AddVariable({fmt::format("etaany_{}", k), VarKind::kBinary,
                       BranchClass::kIndicator, 0.0, 1.0, 0.0});
    idx.theta_any[k] =
        m.AddVariable({fmt::format("thetaany_{}", k), VarKind::kBinary,
                       BranchClass::kIndicator, 0.0, 1.0, 0.0});
  }
  for (int k = 0; k < num_k; ++k) {
    for (int v = 0; v < nv; ++v) {
      const TimeWindow tw = instance.Window(v);
      idx.u[k][v] = m.AddVariable({fmt::format("u_{}_{}", k, name(v)),
                                   VarKind::kContinuous, BranchClass::kNone,
                                   tw.earliest, tw.latest, 0.0});
    }
  }
  for (int v = 1; v <= 2 * n; ++v) {
    const TimeWindow tw = instance.Window(v);
    idx.u_served[v] =
        m.AddVariable({fmt::format("us_{}", v), VarKind::kContinuous,
                       BranchClass::kNone, tw.earliest, tw.latest, 0.0});
  }
  for (int i = 1; i <= n; ++i) {
    idx.ride[i] = m.AddVariable({fmt::format("r_{}", i), VarKind::kContinuous,
                                 BranchClass::kNone, 0.0,
                                 instance.max_ride_time, 0.0});
  }
  for (int k = 0; k < num_k; ++k) {
    idx.tau[k] = m.AddVariable({fmt::format("tau_{}", k), VarKind::kContinuous,
                                BranchClass::kNone, e0, l0, 0.0});
    idx.w[k] = m.AddVariable({fmt::format("w_{}", k), VarKind::kContinuous,
                              BranchClass::kNone, e0, l0, 0.0});
  }
  for (int i = 1; i <= n; ++i) {
    idx.z[i] = m.AddVariable({fmt::format("z_{}", i), VarKind::kContinuous,
                              BranchClass::kNone, e0, l0, 0.0});
  }
  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs.arc(a);
      if (!IsRequestVertex(instance, arc.to)) continue;
      idx.sigma[k][a] = m.AddVariable(
          {fmt::format("sigma_{}_{}_{}", k, name(arc.from), name(arc.to)),
           VarKind::kContinuous, BranchClass::kNone, -bigm.sigma, bigm.sigma,
           0.0});
    }
  }

  // Every request vertex is left exactly once.
  for (int v = 1; v <= 2 * n; ++v) {
    Constraint c = Row(RowTag::kEq2, Sense::kEqual, 1.0);
    for (int k = 0; k < num_k; ++k) {
      for (int a : arcs.OutArcs(v)) Term(c, idx.x[k][a], 1.0);
    }
    m.AddConstraint(std::move(c));
  }
  // Pickup and delivery loads.
  for (const auto& [tag, first] :
       {std::pair{RowTag::kEq3, 1}, std::pair{RowTag::kEq4, n + 1}}) {
    for (int k = 0; k < num_k; ++k) {
      Constraint c = Row(tag, Sense::kLessEqual, instance.vehicles[k].capacity);
      for (int v = first; v < first + n; ++v) {
        for (int a : arcs.OutArcs(v)) Term(c, idx.x[k][a], instance.Demand(v));
      }
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int start : {instance.o1(), instance.o3()}) {
      Constraint c = Row(RowTag::kEq5, Sense::kEqual, 1.0);
      for (int a : arcs.OutArcs(start)) Term(c, idx.x[k][a], 1.0);
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int end : {instance.o2(), instance.o4()}) {
      Constraint c = Row(RowTag::kEq6, Sense::kEqual, 1.0);
      for (int a : arcs.InArcs(end)) Term(c, idx.x[k][a], 1.0);
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int h = 1; h <= 2 * n; ++h) {
      Constraint c = Row(RowTag::kEq7, Sense::kEqual, 0.0);
      for (int a : arcs.InArcs(h)) Term(c, idx.x[k][a], 1.0);
      for (int a : arcs.OutArcs(h)) Term(c, idx.x[k][a], -1.0);
      m.AddConstraint(std::move(c));
    }
  }
  // u_j - u_i - M x_ij >= t_ij - M.
  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const Arc& arc = arcs.arc(a);
      const double big = bigm.precedence[a];
      Constraint c = Row(RowTag::kEq8, Sense::kGreaterEqual, arc.time - big);
      Term(c, idx.u[k][arc.to], 1.0);
      Term(c, idx.u[k][arc.from], -1.0);
      Term(c, idx.x[k][a], -big);
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int i = 1; i <= n; ++i) {
      Constraint c = Row(RowTag::kEq10, Sense::kEqual, 0.0);
      Term(c, idx.eta[k][i], 1.0);
      Term(c, idx.theta[k][i], -1.0);
      for (int a : arcs.OutArcs(i)) Term(c, idx.x[k][a], -1.0);
      for (int a : arcs.OutArcs(n + i)) Term(c, idx.x[k][a], 1.0);
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int i = 1; i <= n; ++i) {
      Constraint c = Row(RowTag::kEq11, Sense::kLessEqual, 1.0);
      Term(c, idx.eta[k][i], 1.0);
      Term(c, idx.theta[k][i], 1.0);
      m.AddConstraint(std::move(c));
    }
  }
  // Indicators: flag_i <= any, any <= sum_i flag_i.
  for (const auto& [tag, flags, any] :
       {std::tuple{RowTag::kEq12, &idx.eta, &idx.eta_any},
        std::tuple{RowTag::kEq13, &idx.theta, &idx.theta_any}}) {
    for (int k = 0; k < num_k; ++k) {
      for (int i = 1; i <= n; ++i) {
        Constraint c = Row(tag, Sense::kLessEqual, 0.0);
        Term(c, (*flags)[k][i], 1.0);
        Term(c, (*any)[k], -1.0);
        m.AddConstraint(std::move(c));
      }
      Constraint c = Row(tag, Sense::kLessEqual, 0.0);
      Term(c, (*any)[k], 1.0);
      for (int i = 1; i <= n; ++i) Term(c, (*flags)[k][i], -1.0);
      m.AddConstraint(std::move(c));
    }
  }
  const double a_fix = instance.fixed_time;
  const double beta = instance.per_unit_time;
  for (int k = 0; k < num_k; ++k) {
    Constraint c = Row(RowTag::kEq14, Sense::kEqual, 0.0);
    Term(c, idx.tau[k], 1.0);
    Term(c, idx.u[k][instance.o2()], -1.0);
    Term(c, idx.eta_any[k], -a_fix);
    for (int i = 1; i <= n; ++i) {
      Term(c, idx.eta[k][i], -beta * instance.Demand(i));
    }
    m.AddConstraint(std::move(c));
  }
  for (int k = 0; k < num_k; ++k) {
    Constraint c = Row(RowTag::kEq15, Sense::kGreaterEqual, 0.0);
    Term(c, idx.w[k], 1.0);
    Term(c, idx.tau[k], -1.0);
    m.AddConstraint(std::move(c));
  }
  for (int k = 0; k < num_k; ++k) {
    Constraint c = Row(RowTag::kEq16, Sense::kEqual, 0.0);
    Term(c, idx.u[k][instance.o3()], 1.0);
    Term(c, idx.w[k], -1.0);
    Term(c, idx.theta_any[k], -a_fix);
    for (int i = 1; i <= n; ++i) {
      Term(c, idx.theta[k][i], -beta * instance.Demand(i));
    }
    m.AddConstraint(std::move(c));
  }
  for (int k = 0; k < num_k; ++k) {
    for (int i = 1; i <= n; ++i) {
      Constraint c =
          Row(RowTag::kEq17, Sense::kGreaterEqual, -bigm.reload_sync);
      Term(c, idx.w[k], 1.0);
      Term(c, idx.z[i], -1.0);
      Term(c, idx.theta[k][i], -bigm.reload_sync);
      m.AddConstraint(std::move(c));
    }
  }
  for (int k = 0; k < num_k; ++k) {
    for (int i = 1; i <= n; ++i) {
      Constraint c =
          Row(RowTag::kEq18, Sense::kGreaterEqual, -bigm.unload_sync);
      Term(c, idx.z[i], 1.0);
      Term(c, idx.tau[k], -1.0);
      Term(c, idx.eta[k][i], -bigm.unload_sync);
      m.AddConstraint(std::move(c));
    }
  }
  for (const auto& [tag, from, to] :
       {std::tuple{RowTag::kEq19, instance.o1(), instance.o2()},
        std::tuple{RowTag::kEq20, instance.o3(), instance.o4()}}) {
    for (int k = 0; k < num_k; ++k) {
      Constraint c = Row(tag, Sense::kLessEqual,
                         instance.vehicles[k].max_route_duration);
      Term(c, idx.u[k][to], 1.0);
      Term(c, idx.u[k][from], -1.0);
      m.AddConstraint(std::move(c));
    }
  }
  // us_i + sigma_ji^k = u_i^k, |sigma| <= M (1 - x_ji^k).
  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const int s = idx.sigma[k][a];
      if (s < 0) continue;
      const int v = arcs.arc(a).to;
      Constraint link = Row(RowTag::kEq23, Sense::kEqual, 0.0);
      Term(link, idx.u_served[v], 1.0);
      Term(link, s, 1.0);
      Term(link, idx.u[k][v], -1.0);
      m.AddConstraint(std::move(link));
      Constraint hi = Row(RowTag::kEq23, Sense::kLessEqual, bigm.sigma);
      Term(hi, s, 1.0);
      Term(hi, idx.x[k][a], bigm.sigma);
      m.AddConstraint(std::move(hi));
      Constraint lo = Row(RowTag::kEq23, Sense::kGreaterEqual, -bigm.sigma);
      Term(lo, s, 1.0);
      Term(lo, idx.x[k][a], -bigm.sigma);
      m.AddConstraint(std::move(lo));
    }
  }
  for (int i = 1; i <= n; ++i) {
    Constraint c = Row(RowTag::kEq24, Sense::kEqual, 0.0);
    Term(c, idx.ride[i], 1.0);
    Term(c, idx.u_served[n + i], -1.0);
    Term(c, idx.u_served[i], 1.0);
    m.AddConstraint(std::move(c));
  }
  return m;
}

void AddValidInequalities(MilpModel& model, const Instance& instance,
                          const ArcSet& arcs) {
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  const ModelIndex& idx = model.index;
  auto add_arc_all_k = [&](Constraint& c, int a, double coef) {
    for (int k = 0; k < num_k; ++k) Term(c, idx.x[k][a], coef);
  };

  // Serve-time tightening, x summed over vehicles.
  for (int v = 1; v <= 2 * n; ++v) {
    const TimeWindow tw = instance.Window(v);
    for (int k = 0; k < num_k; ++k) {
      Constraint lo = Row(RowTag::kViServeTime, Sense::kGreaterEqual,
                          tw.earliest);
      Term(lo, idx.u[k][v], 1.0);
      for (int a : arcs.InArcs(v)) {
        const Arc& arc = arcs.arc(a);
        const double gain = std::max(
            0.0, instance.Window(arc.from).earliest - tw.earliest + arc.time);
        add_arc_all_k(lo, a, -gain);
      }
      model.AddConstraint(std::move(lo));
      Constraint hi = Row(RowTag::kViServeTime, Sense::kLessEqual, tw.latest);
      Term(hi, idx.u[k][v], 1.0);
      for (int a : arcs.OutArcs(v)) {
        const Arc& arc = arcs.arc(a);
        const double loss = std::max(
            0.0, tw.latest - instance.Window(arc.to).latest + arc.time);
        add_arc_all_k(hi, a, loss);
      }
      model.AddConstraint(std::move(hi));
    }
  }

  // 2-cycles among pickups and among deliveries.
  for (int base : {0, n}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const auto fwd = arcs.Find(base + i, base + j);
        const auto bwd = arcs.Find(base + j, base + i);
        if (!fwd || !bwd) continue;
        Constraint c = Row(RowTag::kViSubtour, Sense::kLessEqual, 1.0);
        add_arc_all_k(c, *fwd, 1.0);
        add_arc_all_k(c, *bwd, 1.0);
        model.AddConstraint(std::move(c));
      }
    }
  }

  // Ride-time lower bounds. The gated rows use their own big-M, the largest
  // right-hand side the row can reach, so that theta_i^k = 0 always leaves
  // them slack.
  const auto dist = ShortestTravelTimes(instance);
  double total_demand = 0.0;
  for (int i = 1; i <= n; ++i) total_demand += instance.Demand(i);
  const double a_fix = instance.fixed_time;
  const double beta = instance.per_unit_time;
  for (int i = 1; i <= n; ++i) {
    const double base = dist[i][instance.o2()] + dist[instance.o3()][n + i];
    if (!std::isfinite(base)) continue;
    Constraint plain = Row(RowTag::kViRideTimeLb, Sense::kGreaterEqual, base);
    Term(plain, idx.ride[i], 1.0);
    model.AddConstraint(std::move(plain));
    const double gate = base + a_fix + beta * total_demand;
    for (int k = 0; k < num_k; ++k) {
      Constraint c =
          Row(RowTag::kViRideTimeLb, Sense::kGreaterEqual, base - gate);
      Term(c, idx.ride[i], 1.0);
      Term(c, idx.theta_any[k], -a_fix);
      for (int j = 1; j <= n; ++j) {
        Term(c, idx.theta[k][j], -beta * instance.Demand(j));
      }
      // theta_i^k may already carry a demand term; merge the gate into it.
      const auto pos = std::find(c.vars.begin(), c.vars.end(),
                                 idx.theta[k][i]);
      if (pos != c.vars.end()) {
        c.coefs[pos - c.vars.begin()] -= gate;
      } else {
        Term(c, idx.theta[k][i], -gate);
      }
      model.AddConstraint(std::move(c));
    }
  }

  for (const ConflictPair& pair : arcs.conflicts()) {
    Constraint c = Row(RowTag::kViConflict, Sense::kLessEqual, 1.0);
    add_arc_all_k(c, pair.pickup_arc, 1.0);
    add_arc_all_k(c, pair.delivery_arc, 1.0);
    model.AddConstraint(std::move(c));
  }
}

Formulation Formulate(const Instance& instance, bool with_cuts) {
  Formulation f;
  f.arcs = EliminateInfeasibleArcs(instance, BuildArcSet(instance));
  f.bigm = ComputeBigM(instance, f.arcs);
  f.model = BuildMilp(instance, f.arcs, f.bigm);
  if (with_cuts) AddValidInequalities(f.model, instance, f.arcs);
  return f;
}

Solution ExtractSolution(const MilpModel& model, const Instance& instance,
                         const ArcSet& arcs, std::span<const double> values,
                         double tol) {
  const ModelIndex& idx = model.index;
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const double v = values[idx.x[k][a]];
      if (std::abs(v - std::round(v)) > tol) {
        throw ModelError("non-integral routing variables");
      }
    }
  }
  auto on = [&](int var) { return values[var] > 0.5; };

  Solution sol;
  sol.vehicles.resize(num_k);
  std::vector<int> picked_by(n + 1, -1), delivered_by(n + 1, -1);
  for (int k = 0; k < num_k; ++k) {
    VehicleRoute& route = sol.vehicles[k];
    int used = 0;
    for (int a = 0; a < arcs.size(); ++a) used += on(idx.x[k][a]) ? 1 : 0;
    auto follow = [&](int start, int end, std::vector<int>& out) {
      int v = start;
      while (v != end) {
        int next = -1;
        for (int a : arcs.OutArcs(v)) {
          if (!on(idx.x[k][a])) continue;
          if (next >= 0) {
            throw ModelError(fmt::format(
                "vehicle {} leaves {} twice", k, instance.VertexName(v)));
          }
          next = a;
        }
        if (next < 0 || static_cast<int>(out.size()) > 2 * n) {
          throw ModelError(fmt::format("vehicle {} has a broken path at {}",
                                       k, instance.VertexName(v)));
        }
        sol.cost += arcs.arc(next).cost;
        v = arcs.arc(next).to;
        if (v != end) out.push_back(v);
      }
    };
    follow(instance.o1(), instance.o2(), route.pickup_route);
    follow(instance.o3(), instance.o4(), route.delivery_route);
    if (used != static_cast<int>(route.pickup_route.size() +
                                 route.delivery_route.size() + 2)) {
      throw ModelError(
          fmt::format("vehicle {} uses arcs off its two paths", k));
    }
    for (int v : route.pickup_route) picked_by[v] = k;
    for (int v : route.delivery_route) delivered_by[v - n] = k;
    route.start_time = values[idx.u[k][instance.o1()]];
    route.crossdock_arrival = values[idx.u[k][instance.o2()]];
    route.crossdock_departure = values[idx.u[k][instance.o3()]];
    route.end_time = values[idx.u[k][instance.o4()]];
    route.unload_end = values[idx.tau[k]];
    route.reload_start = values[idx.w[k]];
    route.unloads = on(idx.eta_any[k]);
    route.reloads = on(idx.theta_any[k]);
  }

  sol.requests.resize(n);
  for (int i = 1; i <= n; ++i) {
    RequestRecord& rec = sol.requests[i - 1];
    if (picked_by[i] < 0 || delivered_by[i] < 0) {
      throw ModelError(fmt::format("request {} is not served", i));
    }
    rec.pickup_time = values[idx.u[picked_by[i]][i]];
    rec.delivery_time = values[idx.u[delivered_by[i]][n + i]];
    rec.ride_time = values[idx.ride[i]];
    for (int k = 0; k < num_k; ++k) {
      if (on(idx.eta[k][i])) rec.unloaded_by = k;
      if (on(idx.theta[k][i])) rec.reloaded_by = k;
    }
    if (rec.unloaded_by || rec.reloaded_by) rec.unload_time = values[idx.z[i]];
  }
  return sol;
}

std::vector<double> EmbedSolution(const MilpModel& model,
                                  const Instance& instance,
                                  const ArcSet& arcs,
                                  const Solution& solution) {
  const ModelIndex& idx = model.index;
  const int n = instance.n();
  const int num_k = instance.num_vehicles();
  if (static_cast<int>(solution.vehicles.size()) != num_k ||
      static_cast<int>(solution.requests.size()) != n) {
    throw ModelError("solution dimensions do not match the instance");
  }
  std::vector<double> values(model.num_variables());
  for (int j = 0; j < model.num_variables(); ++j) {
    values[j] = model.variable(j).lower;
  }

  std::vector<int> picked_by(n + 1, -1), delivered_by(n + 1, -1);
  for (int k = 0; k < num_k; ++k) {
    const VehicleRoute& route = solution.vehicles[k];
    auto walk = [&](int start, const std::vector<int>& inner, int end) {
      int prev = start;
      for (std::size_t s = 0; s <= inner.size(); ++s) {
        const int next = s < inner.size() ? inner[s] : end;
        const auto a = arcs.Find(prev, next);
        if (!a) {
          throw ModelError(fmt::format("arc ({}, {}) is not in the arc set",
                                       instance.VertexName(prev),
                                       instance.VertexName(next)));
        }
        values[idx.x[k][*a]] = 1.0;
        prev = next;
      }
    };
    walk(instance.o1(), route.pickup_route, instance.o2());
    walk(instance.o3(), route.delivery_route, instance.o4());
    for (int v : route.pickup_route) picked_by[v] = k;
    for (int v : route.delivery_route) delivered_by[v - n] = k;
    values[idx.u[k][instance.o1()]] = route.start_time;
    values[idx.u[k][instance.o2()]] = route.crossdock_arrival;
    values[idx.u[k][instance.o3()]] = route.crossdock_departure;
    values[idx.u[k][instance.o4()]] = route.end_time;
    values[idx.tau[k]] = route.unload_end;
    values[idx.w[k]] = route.reload_start;
    values[idx.eta_any[k]] = route.unloads ? 1.0 : 0.0;
    values[idx.theta_any[k]] = route.reloads ? 1.0 : 0.0;
  }
  for (int i = 1; i <= n; ++i) {
    const RequestRecord& rec = solution.requests[i - 1];
    if (picked_by[i] < 0 || delivered_by[i] < 0 || !rec.pickup_time ||
        !rec.delivery_time) {
      throw ModelError(fmt::format("request {} is not served", i));
    }
    for (int k = 0; k < num_k; ++k) {
      values[idx.u[k][i]] = *rec.pickup_time;
      values[idx.u[k][n + i]] = *rec.delivery_time;
    }
    values[idx.u_served[i]] = *rec.pickup_time;
    values[idx.u_served[n + i]] = *rec.delivery_time;
    values[idx.ride[i]] = *rec.delivery_time - *rec.pickup_time;
    for (const auto& by : {rec.unloaded_by, rec.reloaded_by}) {
      if (by && (*by < 0 || *by >= num_k)) {
        throw ModelError(fmt::format("request {} names vehicle {}", i, *by));
      }
    }
    if (rec.unloaded_by) values[idx.eta[*rec.unloaded_by][i]] = 1.0;
    if (rec.reloaded_by) values[idx.theta[*rec.reloaded_by][i]] = 1.0;
    values[idx.z[i]] = rec.unload_time
                           ? *rec.unload_time
                           : solution.vehicles[picked_by[i]].unload_end;
  }
  for (int k = 0; k < num_k; ++k) {
    for (int a = 0; a < arcs.size(); ++a) {
      const int s = idx.sigma[k][a];
      if (s < 0) continue;
      const int v = arcs.arc(a).to;
      values[s] = values[idx.u[k][v]] - values[idx.u_served[v]];
    }
  }
  return values;
}

}  // namespace pdpcd
