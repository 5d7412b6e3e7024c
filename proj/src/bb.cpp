#include "flp/bb.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <queue>

#include "flp/simplex.hpp"

namespace flp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  double bound = -kInf;  // parent LP value, a valid lower bound
  int depth = 0;
  std::vector<double> lb, ub;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    return a.bound > b.bound;  // min-heap on bound
  }
};

int pick_branch_var(const MilpModel& model, const std::vector<double>& x) {
  int best = -1;
  int best_prio = 0;
  double best_frac = -1.0;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.vars()[j].kind != VarKind::Binary) continue;
    double f = x[j] - std::floor(x[j]);
    double dist = std::min(f, 1.0 - f);
    if (dist <= kIntTol) continue;
    int prio = model.vars()[j].branch_priority;
    if (best < 0 || prio > best_prio ||
        (prio == best_prio && dist > best_frac + 1e-12)) {
      best = j;
      best_prio = prio;
      best_frac = dist;
    }
  }
  return best;
}

}  // namespace

const char* milp_status_name(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::BoundLimit: return "bound-limit";
    case MilpStatus::NodeLimit: return "node-limit";
    case MilpStatus::TimeLimit: return "time-limit";
  }
  return "?";
}

double SolveResult::gap_pct() const {
  if (!incumbent) return 100.0;
  double u = incumbent_value, l = dual_bound;
  if (u == l) return 0.0;
  if (std::abs(u) < 1e-12) return l < -1e-12 ? 100.0 : 0.0;
  return 100.0 * (u - l) / u;
}

SolveResult solve_milp(const MilpModel& model, const MilpLimits& limits,
                       std::vector<NodeLogEntry>* node_log) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  SolveResult res;
  SimplexSolver solver(model);

  std::vector<double> lb0(model.num_vars()), ub0(model.num_vars());
  for (int j = 0; j < model.num_vars(); ++j) {
    lb0[j] = model.vars()[j].lb;
    ub0[j] = model.vars()[j].ub;
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push({-kInf, 0, std::move(lb0), std::move(ub0)});

  double best_value = kInf;
  std::optional<std::vector<double>> best_point;
  double global_bound = -kInf;

  auto finish = [&](MilpStatus status) {
    res.status = status;
    res.incumbent = best_point;
    res.incumbent_value = best_value;
    res.dual_bound = std::min(global_bound, best_value);
    if (status == MilpStatus::Optimal && best_point) res.dual_bound = best_value;
    res.wall_ms = elapsed_s() * 1000.0;
    return res;
  };

  auto gap_closed = [&] {
    if (!best_point) return false;
    return best_value - global_bound <=
           limits.gap_tol * std::max(std::abs(best_value), 1.0);
  };

  while (!open.empty()) {
    Node node = std::move(const_cast<Node&>(open.top()));
    open.pop();

    // Best-bound order makes the popped bound a valid global lower bound.
    if (node.bound > global_bound) global_bound = node.bound;
    if (gap_closed()) return finish(MilpStatus::Optimal);
    if (global_bound >= limits.bound_cutoff) return finish(MilpStatus::BoundLimit);
    if (res.nodes >= limits.node_limit) return finish(MilpStatus::NodeLimit);
    if (elapsed_s() > limits.time_limit_s) return finish(MilpStatus::TimeLimit);

    ++res.nodes;
    LpResult lp = solver.solve(node.lb, node.ub);
    if (lp.status != LpStatus::Infeasible && lp.status != LpStatus::Optimal)
      throw ModelError(std::string("LP relaxation failed: ") +
                       lp_status_name(lp.status));

    bool pruned = lp.status == LpStatus::Infeasible ||
                  lp.value >= best_value - limits.gap_tol *
                                               std::max(std::abs(best_value), 1.0);
    int branch = -1;
    if (!pruned) {
      branch = pick_branch_var(model, lp.x);
      if (branch < 0) {
        best_value = lp.value;
        best_point = lp.x;
      } else {
        Node down;
        down.bound = lp.value;
        down.depth = node.depth + 1;
        down.lb = node.lb;
        down.ub = node.ub;
        Node up = down;
        down.ub[branch] = 0.0;
        up.lb[branch] = 1.0;
        open.push(std::move(down));
        open.push(std::move(up));
      }
    }

    // After this node, the tree bound is the min over open subtrees.
    double gb = open.empty() ? best_value : open.top().bound;
    gb = std::min(gb, best_value);
    if (std::isfinite(gb) && gb > global_bound) global_bound = gb;
    if (node_log)
      node_log->push_back({res.nodes,
                           std::isfinite(global_bound) ? global_bound : -1e300,
                           best_value, node.depth});
  }

  if (!best_point) return finish(MilpStatus::Infeasible);
  global_bound = best_value;
  return finish(MilpStatus::Optimal);
}

void write_node_log_csv(const std::vector<NodeLogEntry>& log,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write node log: " + path);
  out << "node,best_bound,incumbent,depth\n";
  for (const NodeLogEntry& e : log) {
    out << e.node << ",";
    if (e.best_bound <= -1e299)
      out << "-inf";
    else
      out << e.best_bound;
    out << ",";
    if (std::isinf(e.incumbent))
      out << "inf";
    else
      out << e.incumbent;
    out << "," << e.depth << "\n";
  }
}

}  // namespace flp
