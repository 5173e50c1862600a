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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <queue>
#include <thread>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "json.hpp"
#include "pdpcd/formulation.h"
#include "pdpcd/lp.h"
#include "pdpcd/validator.h"

namespace pdpcd {

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimitFeasible: return "time-limit-feasible";
    case SolveStatus::kTimeLimitNoSolution: return "time-limit-no-solution";
  }
  return "?";
}

std::string SolveResult::SummaryJson() const {
  using nlohmann::json;
  auto number = [](double v) { return std::isfinite(v) ? json(v) : json(); };
  json doc;
  doc["status"] = SolveStatusName(status);
  doc["objective"] = incumbent ? number(objective) : json();
  doc["bound"] = number(bound);
  doc["gap"] = number(gap);
  doc["CNS"] = constraints;
  doc["NE"] = nodes;
  doc["CPU"] = cpu_seconds;
  doc["ost"] = incumbent ? number(objective) : json();
  doc["variables"] = variables;
  doc["lp_iterations"] = lp_iterations;
  doc["root_bound"] = number(root_bound);
  if (!reason.empty()) doc["reason"] = reason;
  return doc.dump(2) + "\n";
}

std::optional<int> CheckIntegrality(const MilpModel& model,
                                    std::span<const double> values,
                                    double tol) {
  int best = -1;
  BranchClass best_class = BranchClass::kNone;
  double best_frac = 0.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(j);
    if (v.kind != VarKind::kBinary) continue;
    const double frac = std::abs(values[j] - std::round(values[j]));
    if (frac <= tol) continue;
    // Distance from the nearest integer; 0.5 is the most fractional.
    if (best < 0 || v.branch_class < best_class ||
        (v.branch_class == best_class && frac > best_frac)) {
      best = j;
      best_class = v.branch_class;
      best_frac = frac;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  long id = 0;
  double bound = -kInfinity;
  int depth = 0;
  std::vector<std::pair<int, double>> fixings;
  std::shared_ptr<const Basis> basis;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

double RelativeGap(double objective, double bound) {
  if (!std::isfinite(objective)) return kInfinity;
  return std::abs(objective - bound) / std::max(1.0, std::abs(objective));
}

class Search {
 public:
  Search(const Instance& instance, const Formulation& formulation,
         const SolveOptions& options, SolveResult& result)
      : instance_(instance),
        f_(formulation),
        options_(options),
        result_(result),
        lp_(formulation.model.Relaxation()),
        start_(Clock::now()) {
    for (int j = 0; j < f_.model.num_variables(); ++j) {
      if (f_.model.variable(j).kind == VarKind::kBinary) binaries_.push_back(j);
    }
  }

  void Run() {
    Log(fmt::format("{:>1} {:>9} {:>9} {:>16} {:>16} {:>10}", "", "nodes",
                    "open", "incumbent", "bound", "gap"),
        false);
    Node root;
    root.id = next_id_++;
    queue_.push(std::move(root));

    const int threads = std::max(1, options_.threads);
    if (threads == 1) {
      Worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back([this] { Worker(); });
      for (std::thread& t : pool) t.join();
    }
    Finish();
  }

 private:
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  // Requires mu_.
  double Cutoff() const {
    if (!std::isfinite(incumbent_value_)) return kInfinity;
    return incumbent_value_ -
           options_.gap_tol * std::max(1.0, std::abs(incumbent_value_));
  }

  // Requires mu_ (or a single thread).
  void Log(const std::string& text, bool with_time = true) {
    std::string line = text;
    if (with_time && options_.log_elapsed) {
      line += fmt::format("  t={:.2f}s", Elapsed());
    }
    line += "\n";
    result_.log += line;
    if (options_.log != nullptr) {
      *options_.log << line;
      options_.log->flush();
    }
  }

  // Requires mu_.
  double OpenBound() const {
    double b = queue_.empty() ? kInfinity : queue_.top().bound;
    for (double d : diving_bounds_) b = std::min(b, d);
    return b;
  }

  // Requires mu_.
  void LogProgress(char marker) {
    const double bound = std::min(OpenBound(), incumbent_value_);
    Log(fmt::format("{:>1} {:>9} {:>9} {:>16} {:>16} {:>10}", marker, nodes_,
                    queue_.size(),
                    std::isfinite(incumbent_value_)
                        ? fmt::format("{:.6f}", incumbent_value_)
                        : std::string("-"),
                    std::isfinite(bound) ? fmt::format("{:.6f}", bound)
                                         : std::string("-"),
                    std::isfinite(incumbent_value_)
                        ? fmt::format("{:.4e}",
                                      RelativeGap(incumbent_value_, bound))
                        : std::string("-")));
  }

  // Requires mu_.
  bool LimitReached() {
    if (stop_) return true;
    if (options_.node_limit >= 0 && nodes_ >= options_.node_limit) {
      stop_ = true;
    } else if (Elapsed() >= options_.time_limit_s) {
      stop_ = true;
    }
    return stop_;
  }

  void Worker() {
    DualSimplex simplex(lp_);
    const std::size_t slot = [&] {
      std::lock_guard<std::mutex> lock(mu_);
      diving_bounds_.push_back(kInfinity);
      return diving_bounds_.size() - 1;
    }();
    for (;;) {
      Node node;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] {
          return stop_ || !queue_.empty() || active_ == 0;
        });
        if (stop_ || queue_.empty()) {
          cv_.notify_all();
          return;
        }
        node = queue_.top();
        queue_.pop();
        if (node.bound >= Cutoff()) continue;
        ++active_;
        diving_bounds_[slot] = node.bound;
      }
      simplex.ResetColumnBounds();
      for (const auto& [col, val] : node.fixings) {
        simplex.SetColumnBounds(col, val, val);
      }
      if (node.basis) {
        simplex.LoadBasis(*node.basis);
      } else {
        simplex.ResetBasis();
      }
      Dive(simplex, std::move(node), slot);
      {
        std::lock_guard<std::mutex> lock(mu_);
        diving_bounds_[slot] = kInfinity;
        --active_;
      }
      cv_.notify_all();
    }
  }

  // Processes `node` (whose bounds and basis are loaded) and keeps plunging
  // into the preferred child.
  void Dive(DualSimplex& simplex, Node node, std::size_t slot) {
    for (;;) {
      double cutoff;
      {
        std::lock_guard<std::mutex> lock(mu_);
        if (LimitReached()) {
          queue_.push(std::move(node));
          return;
        }
        cutoff = Cutoff();
      }
      LpStatus status = simplex.Solve(cutoff);
      if (status == LpStatus::kIterationLimit ||
          status == LpStatus::kUnbounded) {
        // Retry from scratch before giving up on the node.
        simplex.ResetBasis();
        status = simplex.Solve(cutoff);
      }
      const double lp_value = simplex.objective();
      const long iters = simplex.iterations();

      std::unique_lock<std::mutex> lock(mu_);
      ++nodes_;
      result_.lp_iterations += iters;
      if (node.id == 0) {
        result_.root_bound =
            status == LpStatus::kOptimal ? lp_value : kInfinity;
      }
      if (status == LpStatus::kIterationLimit ||
          status == LpStatus::kUnbounded) {
        ++lp_failures_;
        Log(fmt::format("! node {} abandoned: LP {}", node.id,
                        LpStatusName(status)));
        return;
      }
      if (status != LpStatus::kOptimal) {
        MaybeLogProgress();
        return;  // infeasible or cut off
      }
      const double bound = std::max(node.bound, lp_value);
      if (bound >= Cutoff()) {
        MaybeLogProgress();
        return;
      }
      diving_bounds_[slot] = bound;
      lock.unlock();

      const std::vector<double> values = simplex.values();
      const std::optional<int> branch = CheckIntegrality(f_.model, values);
      if (!branch) {
        Polish(simplex, values);
        lock.lock();
        MaybeLogProgress();
        return;
      }

      const int var = *branch;
      const double up_first = values[var] >= 0.5 ? 1.0 : 0.0;
      Basis snapshot = simplex.GetBasis();
      snapshot.weights.clear();  // keeps open nodes small
      auto basis = std::make_shared<const Basis>(std::move(snapshot));
      Node other;
      other.bound = bound;
      other.depth = node.depth + 1;
      other.fixings = node.fixings;
      other.fixings.emplace_back(var, 1.0 - up_first);
      other.basis = std::move(basis);
      node.fixings.emplace_back(var, up_first);
      node.bound = bound;
      node.depth += 1;
      simplex.SetColumnBounds(var, up_first, up_first);

      lock.lock();
      other.id = next_id_++;
      node.id = next_id_++;
      queue_.push(std::move(other));
      MaybeLogProgress();
      lock.unlock();
      cv_.notify_one();
    }
  }

  // Requires mu_.
  void MaybeLogProgress() {
    if (options_.log_interval > 0 && nodes_ % options_.log_interval == 0) {
      LogProgress(' ');
    }
  }

  // Fixes every binary at its rounded value, re-solves for clean continuous
  // values and offers the point as an incumbent.
  void Polish(DualSimplex& simplex, const std::vector<double>& values) {
    for (int j : binaries_) {
      const double r = std::round(values[j]);
      simplex.SetColumnBounds(j, r, r);
    }
    const LpStatus status = simplex.Solve();
    if (status != LpStatus::kOptimal) {
      std::lock_guard<std::mutex> lock(mu_);
      ++lp_failures_;
      Log(fmt::format("! integral node lost after fixing binaries: LP {}",
                      LpStatusName(status)));
      return;
    }
    const std::vector<double> clean = simplex.values();
    Solution sol;
    try {
      sol = ExtractSolution(f_.model, instance_, f_.arcs, clean);
    } catch (const ModelError& e) {
      std::lock_guard<std::mutex> lock(mu_);
      ++lp_failures_;
      Log(fmt::format("! integral point rejected: {}", e.what()));
      return;
    }
    const ValidationReport report = Validate(instance_, sol);
    std::lock_guard<std::mutex> lock(mu_);
    if (!report.passed()) {
      ++lp_failures_;
      Log(fmt::format("! integral point failed validation ({} violations)",
                      report.num_violations()));
      return;
    }
    const double value = sol.cost;
    const double improve_tol = 1e-9 * std::max(1.0, std::abs(value));
    if (!std::isfinite(incumbent_value_) ||
        value < incumbent_value_ - improve_tol) {
      incumbent_value_ = value;
      incumbent_ = std::move(sol);
      LogProgress('*');
    }
  }

  void Finish() {
    result_.nodes = nodes_;
    result_.cpu_seconds = Elapsed();
    const bool complete = !stop_ && lp_failures_ == 0;
    const bool exhausted = queue_.empty() && !stop_;
    if (incumbent_) {
      result_.incumbent = incumbent_;
      result_.objective = incumbent_value_;
      result_.bound = exhausted ? incumbent_value_
                                : std::min(OpenBound(), incumbent_value_);
      if (exhausted && lp_failures_ > 0) {
        // Abandoned nodes leave the proof incomplete; fall back on the root
        // bound, which is still valid.
        result_.bound = std::min(result_.root_bound, incumbent_value_);
      }
      result_.gap = RelativeGap(incumbent_value_, result_.bound);
      result_.status = complete || result_.gap <= options_.gap_tol
                           ? SolveStatus::kOptimal
                           : SolveStatus::kTimeLimitFeasible;
    } else {
      result_.objective = kInfinity;
      result_.bound = exhausted && complete ? kInfinity : OpenBound();
      result_.gap = kInfinity;
      result_.status = exhausted && complete
                           ? SolveStatus::kInfeasible
                           : SolveStatus::kTimeLimitNoSolution;
      if (result_.status == SolveStatus::kInfeasible) {
        result_.reason = "search tree exhausted without a feasible point";
      }
    }
    Log(fmt::format(
        "{} objective {} bound {} gap {} nodes {}",
        SolveStatusName(result_.status),
        result_.incumbent ? fmt::format("{:.6f}", result_.objective) : "-",
        std::isfinite(result_.bound) ? fmt::format("{:.6f}", result_.bound)
                                     : std::string("-"),
        std::isfinite(result_.gap) ? fmt::format("{:.4e}", result_.gap)
                                   : std::string("-"),
        result_.nodes));
  }

  const Instance& instance_;
  const Formulation& f_;
  const SolveOptions& options_;
  SolveResult& result_;
  const LinearProgram lp_;
  const Clock::time_point start_;
  std::vector<int> binaries_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::priority_queue<Node, std::vector<Node>, WorseNode> queue_;
  std::vector<double> diving_bounds_;
  long next_id_ = 0;
  long nodes_ = 0;
  int active_ = 0;
  int lp_failures_ = 0;
  bool stop_ = false;
  double incumbent_value_ = kInfinity;
  std::optional<Solution> incumbent_;
};

}  // namespace

SolveResult Solve(const Instance& instance, const SolveOptions& options) {
  SolveResult result;
  const auto start = Clock::now();
  Formulation formulation;
  try {
    formulation = Formulate(instance, options.enable_cuts);
  } catch (const ModelError& e) {
    result.status = SolveStatus::kInfeasible;
    result.objective = kInfinity;
    result.bound = kInfinity;
    result.gap = kInfinity;
    result.reason = e.what();
    result.cpu_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    std::string line = fmt::format("infeasible: {}\n", result.reason);
    result.log = line;
    if (options.log != nullptr) *options.log << line;
    return result;
  }
  result.constraints = formulation.model.num_constraints();
  result.variables = formulation.model.num_variables();
  Search search(instance, formulation, options, result);
  search.Run();
  return result;
}

}  // namespace pdpcd
