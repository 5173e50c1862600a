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

#ifndef PDPCD_ARCS_H_
#define PDPCD_ARCS_H_

#include <optional>
#include <vector>

#include "pdpcd/instance.h"

namespace pdpcd {

struct Arc {
  int from = 0;
  int to = 0;
  double time = 0.0;
  double cost = 0.0;
};

// Two arcs that cannot both be used: {(i, j), (j', n+i)} where going
// i -> j -> ... -> crossdock -> ... -> j' -> n+i already exceeds the ride
// time limit of request i. Indices refer to ArcSet::arcs.
struct ConflictPair {
  int pickup_arc = 0;
  int delivery_arc = 0;
};

// The feasible arc set A with adjacency lists. Arcs are ordered by
// (from, to) vertex id.
class ArcSet {
 public:
  ArcSet() = default;
  ArcSet(int num_vertices, std::vector<Arc> arcs,
         std::vector<ConflictPair> conflicts = {});

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int a) const { return arcs_[a]; }
  int size() const { return static_cast<int>(arcs_.size()); }
  bool empty() const { return arcs_.empty(); }

  const std::vector<int>& OutArcs(int v) const { return out_[v]; }
  const std::vector<int>& InArcs(int v) const { return in_[v]; }
  // Index of arc (from, to), or nullopt when it is not in the set.
  std::optional<int> Find(int from, int to) const;
  bool Contains(int from, int to) const { return Find(from, to).has_value(); }

  const std::vector<ConflictPair>& conflicts() const { return conflicts_; }

 private:
  int num_vertices_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<ConflictPair> conflicts_;
};

// True iff (from, to) belongs to the structural arc set: o1->P, P->P,
// P->o2, o3->D, D->D, D->o4.
bool IsStructuralArc(const Instance& instance, int from, int to);

// Full arc set A with 4n + 2n(n-1) arcs. Throws InstanceError when a travel
// time or cost needed by an arc is missing.
ArcSet BuildArcSet(const Instance& instance);

// Removes arcs with e_i + t_ij > l_j and records conflict pairs for the
// ride-time rule. The result is a subset of the input; applying it twice is
// the same as applying it once.
ArcSet EliminateInfeasibleArcs(const Instance& instance, const ArcSet& arcs);

// All-pairs shortest travel times over the structural arcs of the full arc
// set (no elimination). Under the triangle inequality these equal t_ij.
// Indexed by vertex id; unreachable pairs hold +infinity.
std::vector<std::vector<double>> ShortestTravelTimes(const Instance& instance);

}  // namespace pdpcd

#endif  // PDPCD_ARCS_H_
