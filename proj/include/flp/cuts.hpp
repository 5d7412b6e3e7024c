#pragma once

#include <string>
#include <vector>

#include "flp/formulations.hpp"
#include "flp/instance.hpp"
#include "flp/model.hpp"

namespace flp {

// A valid inequality carrying its provenance in the row name
// (e.g. cut_obj3_x_1_2); surfaces in exported model row names.
using LinearCut = NamedRow;

// Directed chain of distinct boxes t0..t_{m+1} along one axis.
struct Path {
  std::vector<int> boxes;
  Axis axis = Axis::X;

  void validate() const;  // >= 3 distinct boxes
  int interior_count() const { return static_cast<int>(boxes.size()) - 2; }
};

// Upper-bound inequalities: the unconditional family for every (axis,
// ordering) choice, plus the width-packing family on the opposite axis when
// its gate L < ub_i + ub_j holds. All rows over the refined (z) binaries.
std::vector<LinearCut> ub_cuts(int i, int j, const BoxBounds& bounds,
                               double Lx, double Ly);

// Lower bounds on the objective auxiliaries d, four families over all
// (axis, ordering) assignments, z-form.
std::vector<LinearCut> objective_cuts(int i, int j, const BoxBounds& bounds,
                                      double Lx, double Ly);

// Chain-strengthened variants for one path and axis: the four objective
// families plus tightened stay-on-floor and non-overlap, all carrying the
// gamma * chain-indicator term. z-form.
std::vector<LinearCut> multibox_cuts(const Path& path, const BoxBounds& bounds,
                                     double Lx, double Ly);

// Tightened stay-on-floor rows stated as cuts (z-form).
std::vector<LinearCut> tightened_sitb_cuts(int i, int j,
                                           const BoxBounds& bounds, double Lx,
                                           double Ly);

enum class LiteratureCutKind { B2, V2 };

// Classic distance lower bounds, stated over the unary (u) binaries.
std::vector<LinearCut> literature_cuts(int i, int j, const BoxBounds& bounds,
                                       double Lx, double Ly,
                                       LiteratureCutKind kind);

// Fixes the relative position of the highest-cost pair (lexicographic
// tie-break). Empty when all costs are zero. z-form.
std::vector<LinearCut> symmetry_breaking(const FlpInstance& instance,
                                         const BoxBounds& bounds);

enum class CodeTarget { Unary, Gray, BB, Refined };

class TranslateError : public ModelError {
 public:
  explicit TranslateError(const std::string& what) : ModelError(what) {}
};

// Affine code translation of a z-form cut. Requires nonnegative code
// coefficients in <=-form; violations raise TranslateError naming the
// offending coefficient. Unary translation is the identity renaming.
LinearCut translate_cut(const LinearCut& z_cut, CodeTarget target);

// u-form to z-form lift; valid only when, per pair, one axis's code
// coefficients are all zero.
LinearCut lift_cut(const LinearCut& u_cut);

// The O(n) static selection: per top-N cost pair the pairwise families, per
// top-N triplet all 6 directed paths of chain cuts (families 5-7 at VI,
// additionally 1-4 at VI3). Deterministic, lexicographic tie-breaks.
std::vector<LinearCut> select_cut_subset(const FlpInstance& instance,
                                         const BoxBounds& bounds,
                                         CutLevel level, FormulationKind kind);

// Translates and appends the cut set requested by the options to an
// assembled model.
void apply_cuts(NboxModel& nbox, const FlpInstance& instance,
                const BoxBounds& bounds, const AssemblyOptions& options);

}  // namespace flp
