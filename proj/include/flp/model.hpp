#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace flp {

// Shared numeric tolerances.
constexpr double kFeasTol = 1e-6;    // constraint feasibility
constexpr double kIntTol = 1e-6;     // integrality
constexpr double kLpTol = 1e-7;      // LP optimality (reduced costs)
constexpr double kVertexTol = 1e-7;  // vertex enumeration / dedup

enum class VarKind { Continuous, Binary };
enum class Sense { LE, EQ, GE };

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  VarKind kind = VarKind::Continuous;
  int branch_priority = 0;
};

struct RowTerm {
  int var = -1;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<RowTerm> terms;  // unique var indices, ascending
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

// A linear row expressed over variable names, before it is bound to a model.
// Used for disjunction branches, ground-set rows and cuts.
struct NamedTerm {
  std::string var;
  double coef = 0.0;
};

struct NamedRow {
  std::string name;
  std::vector<NamedTerm> terms;
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Solver-agnostic MILP in minimization form. Immutable once handed to a
// solver; building is single-threaded.
class MilpModel {
 public:
  int add_var(const std::string& name, double lb, double ub,
              VarKind kind = VarKind::Continuous, int branch_priority = 0);

  bool has_var(const std::string& name) const {
    return index_.count(name) != 0;
  }
  int var(const std::string& name) const;

  void add_row(const std::string& name, std::vector<RowTerm> terms,
               Sense sense, double rhs);
  void add_row(const NamedRow& row);

  void set_objective(int var, double coef);
  void add_objective(int var, double coef) { set_objective(var, objective_coef(var) + coef); }
  double objective_coef(int var) const;

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  Variable& var_ref(int i) { return vars_.at(i); }
  const Variable& var_ref(int i) const { return vars_.at(i); }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  double eval_row(const Constraint& c, const std::vector<double>& x) const;
  // Signed violation of a row at x: positive means infeasible by that much.
  double row_violation(const Constraint& c, const std::vector<double>& x) const;
  // Max violation over all rows and variable bounds.
  double max_violation(const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;

  bool has_integers() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> obj_;  // dense by var index
  std::unordered_map<std::string, int> index_;
};

}  // namespace flp
