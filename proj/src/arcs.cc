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

#include "pdpcd/arcs.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace pdpcd {

ArcSet::ArcSet(int num_vertices, std::vector<Arc> arcs,
               std::vector<ConflictPair> conflicts)
    : num_vertices_(num_vertices),
      arcs_(std::move(arcs)),
      out_(num_vertices),
      in_(num_vertices),
      conflicts_(std::move(conflicts)) {
  for (int a = 0; a < size(); ++a) {
    out_[arcs_[a].from].push_back(a);
    in_[arcs_[a].to].push_back(a);
  }
}

std::optional<int> ArcSet::Find(int from, int to) const {
  if (from < 0 || from >= num_vertices_) return std::nullopt;
  for (int a : out_[from]) {
    if (arcs_[a].to == to) return a;
  }
  return std::nullopt;
}

bool IsStructuralArc(const Instance& instance, int from, int to) {
  if (from == to) return false;
  if (from == instance.o1()) return instance.IsPickup(to);
  if (instance.IsPickup(from)) {
    return instance.IsPickup(to) || to == instance.o2();
  }
  if (from == instance.o3()) return instance.IsDelivery(to);
  if (instance.IsDelivery(from)) {
    return instance.IsDelivery(to) || to == instance.o4();
  }
  return false;
}

ArcSet BuildArcSet(const Instance& instance) {
  const int nv = instance.num_vertices();
  std::vector<Arc> arcs;
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (!IsStructuralArc(instance, i, j)) continue;
      const double t = instance.TravelTime(i, j);
      const double c = instance.Cost(i, j);
      if (std::isnan(t) || std::isnan(c)) {
        throw InstanceError(fmt::format(
            "missing {} for required arc ({}, {})",
            std::isnan(t) ? "travel time" : "cost", instance.VertexName(i),
            instance.VertexName(j)));
      }
      arcs.push_back({i, j, t, c});
    }
  }
  return ArcSet(nv, std::move(arcs));
}

std::vector<std::vector<double>> ShortestTravelTimes(const Instance& instance) {
  const int nv = instance.num_vertices();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(nv, std::vector<double>(nv, kInf));
  for (int v = 0; v < nv; ++v) dist[v][v] = 0.0;
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (IsStructuralArc(instance, i, j)) {
        dist[i][j] = instance.TravelTime(i, j);
      }
    }
  }
  for (int k = 0; k < nv; ++k) {
    for (int i = 0; i < nv; ++i) {
      if (dist[i][k] == kInf) continue;
      for (int j = 0; j < nv; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  return dist;
}

ArcSet EliminateInfeasibleArcs(const Instance& instance, const ArcSet& arcs) {
  std::vector<Arc> kept;
  for (const Arc& arc : arcs.arcs()) {
    if (instance.Window(arc.from).earliest + arc.time <=
        instance.Window(arc.to).latest) {
      kept.push_back(arc);
    }
  }
  ArcSet reduced(instance.num_vertices(), std::move(kept));

  // Ride-time rule over the remaining arcs. Shortest paths stand in for
  // t_{j,o2} and t_{o3,j'} so the rule stays sound without the triangle
  // inequality; they coincide with the direct times otherwise.
  const int n = instance.n();
  const auto dist = ShortestTravelTimes(instance);
  const double limit = instance.max_ride_time;
  std::vector<ConflictPair> conflicts;
  for (int i = 1; i <= n; ++i) {
    for (int pa : reduced.OutArcs(i)) {
      const Arc& first = reduced.arc(pa);
      if (!instance.IsPickup(first.to)) continue;
      const double head = first.time + dist[first.to][instance.o2()];
      for (int da : reduced.InArcs(n + i)) {
        const Arc& last = reduced.arc(da);
        if (!instance.IsDelivery(last.from)) continue;
        const double tail = dist[instance.o3()][last.from] + last.time;
        if (head + tail > limit) conflicts.push_back({pa, da});
      }
    }
  }
  return ArcSet(instance.num_vertices(), reduced.arcs(), std::move(conflicts));
}

}  // namespace pdpcd
