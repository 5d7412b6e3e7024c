#pragma once

#include <string>
#include <vector>

#include "flp/model.hpp"

namespace flp {

// One branch of a disjunctive constraint: a conjunction of <= rows over the
// base variables.
struct Branch {
  std::vector<NamedRow> rows;  // all Sense::LE
};

struct Disjunction {
  std::vector<Branch> branches;
  void validate() const;
};

// K pairwise distinct 0/1 code vectors of common length r, assigned to
// branches positionally.
struct Encoding {
  std::vector<std::vector<int>> codes;

  int size() const { return static_cast<int>(codes.size()); }
  int length() const { return codes.empty() ? 0 : static_cast<int>(codes[0].size()); }
  void validate() const;
  bool is_unary() const;

  static Encoding unary(int k);
  // Gray-cycle order (0,0),(1,0),(1,1),(0,1); tight for the big-M functions
  // of the two-bit formulation it reproduces.
  static Encoding gray4();
  static Encoding bb4();
  static Encoding c8();
};

// Named base variables with finite bounds plus common linear constraints.
struct GroundSet {
  std::vector<Variable> vars;
  std::vector<NamedRow> rows;
  void validate() const;  // bounded
};

// Affine function of the r code variables.
struct CodeAffine {
  double constant = 0.0;
  std::vector<double> coefs;

  double eval(const std::vector<int>& code) const {
    double v = constant;
    for (size_t j = 0; j < coefs.size(); ++j) v += coefs[j] * code[j];
    return v;
  }
};

// Linear rows over the given binary names whose 0/1 solutions are exactly
// the code set. Throws ModelError for encodings that are not among the
// supported families and not describable by affine equations on the cube.
std::vector<NamedRow> code_set_formulation(const Encoding& enc,
                                           const std::vector<std::string>& bins);

// Big-M function for one branch row, synthesized by bounding the row's
// left-hand side over the whole ground set: tight at the branch's own code,
// dominating everywhere else.
CodeAffine default_bigM(const GroundSet& q, const NamedRow& row,
                        const Encoding& enc, int branch);

// Generic big-M formulation of Em(Q, D, C): base variables and rows of Q,
// r binaries constrained by V = code_set_formulation, and one row
// (A^k)_l x <= R^k_l(v) per branch row. R must be tight at each branch's own
// code; when R is omitted it is synthesized with default_bigM.
MilpModel build_bigM_embedding(const GroundSet& q, const Disjunction& d,
                               const Encoding& enc,
                               const std::vector<std::string>& bins,
                               const std::vector<std::vector<CodeAffine>>& R);
MilpModel build_bigM_embedding(const GroundSet& q, const Disjunction& d,
                               const Encoding& enc,
                               const std::vector<std::string>& bins);

}  // namespace flp
