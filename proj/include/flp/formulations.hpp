#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flp/bb.hpp"
#include "flp/embedding.hpp"
#include "flp/instance.hpp"
#include "flp/model.hpp"

namespace flp {

enum class FormulationKind {
  BigMUnary,     // four-binary big-M pairwise formulation
  Unary,         // four-binary formulation with tightened stay-on-floor rows
  GrayBinary,    // two-binary Gray-code big-M formulation
  Bldp1,         // two-binary alternative-code big-M formulation
  SequencePair,  // GrayBinary plus global triangle rows
  RefinedUnary,  // eight-branch refinement on four binaries
  Extended,      // per-branch variable copies, unary selector
};

const char* formulation_name(FormulationKind k);       // u-bigm, u, gray, ...
FormulationKind parse_formulation(const std::string&); // throws ModelError

enum class CutLevel { None, Plus, VI, VI3 };
const char* cut_level_name(CutLevel level);
CutLevel parse_cut_level(const std::string&);

enum class SitbMode { InFormulation, AsCuts };

struct AssemblyOptions {
  FormulationKind kind = FormulationKind::RefinedUnary;
  CutLevel cuts = CutLevel::None;
  bool symmetry = false;
  SitbMode sitb = SitbMode::AsCuts;
  int area_tangents = 8;
  // Additional tangent abscissae (box id, l_x value), appended by the lazy
  // area refinement loop.
  std::vector<std::pair<int, double>> extra_area_tangents;
};

// Variable naming scheme; stable so exported files diff cleanly.
std::string var_c(Axis s, int box);             // c_x_3
std::string var_l(Axis s, int box);             // l_y_2
std::string var_d(Axis s, int i, int j);        // d_y_1_2
std::string var_u(Axis s, int p, int q);        // u_x_1_2
std::string var_z(Axis s, int p, int q);        // z_x_1_2
std::string var_w(int k, int i, int j);         // w_1_1_2
std::string var_y(int k, int i, int j);         // y_1_1_2
std::string var_v(int k, int i, int j);         // v_1_1_2
std::string var_copy(const char* base, Axis s, int box, int i, int j, int k);

// New variables plus rows contributed by one pair; c/l variables of the two
// boxes are referenced by name and owned by the enclosing model.
struct ModelFragment {
  std::vector<Variable> vars;
  std::vector<NamedRow> rows;
  std::vector<std::string> binaries;            // code variables, slot order
  std::vector<std::vector<int>> codes;          // feasible codes, slot order
};

// Exactly the rows of the named pairwise display. Tightened stay-on-floor
// rows are included only under SitbMode::InFormulation (the display's simple
// per-pair rows likewise); under AsCuts the enclosing model carries one
// aggregated copy per box.
ModelFragment pairwise_model(FormulationKind kind, int i, int j,
                             const BoxBounds& bounds, double Lx, double Ly,
                             SitbMode sitb = SitbMode::InFormulation);

// Standalone one-pair model: declares the c/l variables plus the fragment.
MilpModel pairwise_standalone_model(FormulationKind kind, int i, int j,
                                    const BoxBounds& bounds, double Lx,
                                    double Ly,
                                    SitbMode sitb = SitbMode::InFormulation);

// The four-branch non-overlap disjunction (one precedence row per branch)
// and its eight-branch logical refinement, over the pair's c/l variables.
Disjunction d4_disjunction(int i, int j);
Disjunction d8_disjunction(int i, int j);

// Common-constraint ground sets for one pair: stay-on-floor rows plus width
// lower bounds; the second adds the width upper bounds.
GroundSet ground_set_lb(int i, int j, const BoxBounds& bounds, double Lx,
                        double Ly);
GroundSet ground_set_bounds(int i, int j, const BoxBounds& bounds, double Lx,
                            double Ly);

// Triangle rows over existing w binaries for all ordered distinct triples,
// both coordinates. Empty for N < 3.
std::vector<NamedRow> sequence_pair_globals(int n);

// K tangent rows to l_x * l_y >= area at abscissae geometrically spaced on
// [lb_x, ub_x], each of the form (area/t^2) l_x + l_y >= 2 area / t.
std::vector<NamedRow> area_outer_approx(int box, double area,
                                        const BoxBounds& bounds, int k);

struct PairInfo {
  int i = 0, j = 0;
  std::vector<std::string> binaries;
  std::vector<std::vector<int>> codes;
};

struct NboxModel {
  MilpModel model;
  FormulationKind kind = FormulationKind::RefinedUnary;
  std::vector<PairInfo> pairs;
  int area_tangents = 8;
};

NboxModel assemble_nbox(const FlpInstance& instance,
                        const AssemblyOptions& options);

// Solve loop with lazy area refinement: whenever the incumbent violates the
// exact area constraint of some box, a tangent at the incumbent width is
// added and the model re-solved, until clean or max_rounds is hit.
struct AreaRefineResult {
  SolveResult result;
  NboxModel nbox;  // final model including added tangents
  int rounds = 0;
};
AreaRefineResult solve_with_area_refinement(const FlpInstance& instance,
                                            AssemblyOptions options,
                                            const MilpLimits& limits = {},
                                            int max_rounds = 10,
                                            double area_tol = 1e-6);

Layout extract_layout(const FlpInstance& instance, const MilpModel& model,
                      const std::vector<double>& x);

// The small ground-set / objective-linearization strengthening examples,
// used as exact LP fixtures.
struct FixtureModels {
  MilpModel m2_weak, m2_strong;  // LP point (1,1,1/2,1/2) separates them
  MilpModel m3_weak, m3_strong;  // LP values 0 and 1
};
FixtureModels fixture_models();

}  // namespace flp
