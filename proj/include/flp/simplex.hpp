#pragma once

#include <limits>
#include <vector>

#include "flp/model.hpp"

namespace flp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

const char* lp_status_name(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::NumericalFailure;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x;  // structural values, set when Optimal
  long iterations = 0;
};

// Bounded-variable two-phase primal simplex over a MilpModel with
// integrality relaxed. Dantzig pricing with a Bland's-rule fallback after a
// long degenerate streak; the dense basis inverse is refreshed periodically.
// Construction captures the column structure so branch-and-bound can re-solve
// with different variable bounds cheaply.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpModel& model);

  LpResult solve();
  LpResult solve(const std::vector<double>& lb, const std::vector<double>& ub);

  // Replaces the structural objective for subsequent solves.
  void set_objective(const std::vector<double>& obj);

 private:
  enum class ColStatus { Lower, Upper, Basic, Fixed };

  bool price(int& entering, double& direction, bool bland) const;
  void compute_duals();
  void ftran(int col, std::vector<double>& w) const;
  void refactorize(bool& ok);
  double column_cost(int j) const { return phase1_ ? phase1_cost_[j] : cost_[j]; }

  // Problem data (fixed at construction).
  int n_ = 0;  // structural variables
  int m_ = 0;  // rows
  std::vector<std::vector<std::pair<int, double>>> cols_;  // structural columns
  std::vector<double> rhs_;
  std::vector<Sense> sense_;
  std::vector<double> model_lb_, model_ub_, obj_;

  // Per-solve state. Column order: structural, slack, artificial.
  int total_ = 0;
  std::vector<double> lb_, ub_, cost_, phase1_cost_, x_;
  std::vector<double> art_sign_;
  std::vector<ColStatus> status_;
  std::vector<int> basis_;      // column of each basic row slot
  std::vector<int> basic_slot_; // inverse map, -1 if nonbasic
  std::vector<double> binv_;    // m x m row-major
  std::vector<double> duals_;   // y = cB' B^-1
  bool phase1_ = true;
};

inline LpResult solve_lp(const MilpModel& model) {
  SimplexSolver s(model);
  return s.solve();
}

}  // namespace flp
