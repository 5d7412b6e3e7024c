#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "flp/formulations.hpp"
#include "flp/instance.hpp"
#include "flp/model.hpp"

namespace flp {

// Per-constraint verdicts for a concrete layout: on-floor, width bounds,
// area (with slack), non-overlap per pair with the satisfied branch list,
// plus the objective value.
struct FeasibilityReport {
  struct Check {
    std::string what;
    bool ok = true;
    double slack = 0.0;  // >= 0 means satisfied by that margin
    std::string detail;
  };
  std::vector<Check> checks;
  bool feasible = true;
  double objective = 0.0;

  std::string text() const;
  static std::string csv_header();
  std::string csv_row(const std::string& instance_name) const;
};

FeasibilityReport check_layout(const FlpInstance& instance,
                               const Layout& layout, double tol = kFeasTol);

struct BruteForceResult {
  bool feasible = false;
  double value = std::numeric_limits<double>::infinity();
  Layout layout;
  long lp_count = 0;
};

// Enumerates one non-overlap branch per pair (the four-branch disjunction,
// or the eight-branch refinement when refined=true), solves each assignment
// as an LP with the objective linearization and the same area tangents the
// models use, and returns the minimum. Guards: N <= 4 (N <= 3 refined).
BruteForceResult brute_force_optimum(const FlpInstance& instance,
                                     int area_tangents = 8,
                                     bool refined = false);

struct FeasibleSample {
  std::vector<double> point;      // model variable space
  std::vector<int> code_choice;   // per pair, index into PairInfo.codes
};

// Fixes a uniformly random feasible code per pair, solves the restricted LP
// under a random objective, and returns the vertex. Deterministic under
// seed; infeasible code combinations are redrawn with bounded retries.
std::vector<FeasibleSample> sample_feasible_points(const NboxModel& nbox,
                                                   int count,
                                                   std::uint64_t seed);

// A bounded polytope given explicitly by rows (variable bounds included as
// rows by the caller where intended).
struct Polytope {
  std::vector<std::string> vars;
  std::vector<NamedRow> rows;
};

// All vertices by recursive basis enumeration with duplicate filtering.
// Dimension guard <= 14.
std::vector<std::vector<double>> enumerate_vertices(const Polytope& poly,
                                                    double tol = kVertexTol);

// Rows of the pairwise system restricted to one axis, the polytope behind
// the unary formulation's idealness argument.
Polytope unary_single_axis_polytope(int i, int j, const BoxBounds& bounds,
                                    Axis s, double L);

}  // namespace flp
