#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "flp/model.hpp"

namespace flp {

enum class MilpStatus { Optimal, Infeasible, BoundLimit, NodeLimit, TimeLimit };

const char* milp_status_name(MilpStatus s);

struct MilpLimits {
  double time_limit_s = std::numeric_limits<double>::infinity();
  long node_limit = std::numeric_limits<long>::max();
  double gap_tol = 1e-6;  // relative optimality gap
  // Stop with BoundLimit once the dual bound proves the optimum is >= this.
  double bound_cutoff = std::numeric_limits<double>::infinity();
};

struct SolveResult {
  MilpStatus status = MilpStatus::Infeasible;
  std::optional<std::vector<double>> incumbent;
  double incumbent_value = std::numeric_limits<double>::infinity();
  double dual_bound = -std::numeric_limits<double>::infinity();
  long nodes = 0;
  double wall_ms = 0.0;

  // 100 (U - L) / U, the paper's relative gap convention.
  double gap_pct() const;
};

struct NodeLogEntry {
  long node = 0;
  double best_bound = 0.0;
  double incumbent = std::numeric_limits<double>::infinity();
  int depth = 0;
};

// Best-bound branch-and-bound on binary variables. Branches on the highest
// priority fractional binary, ties broken by most-fractional then lowest
// index. Single-threaded; the model is not modified.
SolveResult solve_milp(const MilpModel& model, const MilpLimits& limits = {},
                       std::vector<NodeLogEntry>* node_log = nullptr);

void write_node_log_csv(const std::vector<NodeLogEntry>& log,
                        const std::string& path);

}  // namespace flp
