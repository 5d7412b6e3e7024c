#include "flp/model.hpp"

#include <algorithm>

namespace flp {

int MilpModel::add_var(const std::string& name, double lb, double ub,
                       VarKind kind, int branch_priority) {
  if (index_.count(name)) throw ModelError("duplicate variable name: " + name);
  if (lb > ub + 1e-12)
    throw ModelError("variable " + name + " has lb > ub");
  if (kind == VarKind::Binary && (lb < -1e-12 || ub > 1.0 + 1e-12))
    throw ModelError("binary variable " + name + " has bounds outside [0,1]");
  Variable v;
  v.name = name;
  v.lb = lb;
  v.ub = ub;
  v.kind = kind;
  v.branch_priority = branch_priority;
  vars_.push_back(std::move(v));
  obj_.push_back(0.0);
  int idx = static_cast<int>(vars_.size()) - 1;
  index_.emplace(name, idx);
  return idx;
}

int MilpModel::var(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ModelError("unknown variable: " + name);
  return it->second;
}

void MilpModel::add_row(const std::string& name, std::vector<RowTerm> terms,
                        Sense sense, double rhs) {
  // Merge duplicate indices, drop zeros, keep ascending order.
  std::sort(terms.begin(), terms.end(),
            [](const RowTerm& a, const RowTerm& b) { return a.var < b.var; });
  std::vector<RowTerm> merged;
  for (const RowTerm& t : terms) {
    if (t.var < 0 || t.var >= num_vars())
      throw ModelError("row " + name + " references unknown variable index");
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const RowTerm& t) { return t.coef == 0.0; }),
               merged.end());
  Constraint c;
  c.name = name;
  c.terms = std::move(merged);
  c.sense = sense;
  c.rhs = rhs;
  rows_.push_back(std::move(c));
}

void MilpModel::add_row(const NamedRow& row) {
  std::vector<RowTerm> terms;
  terms.reserve(row.terms.size());
  for (const NamedTerm& t : row.terms) terms.push_back({var(t.var), t.coef});
  add_row(row.name, std::move(terms), row.sense, row.rhs);
}

void MilpModel::set_objective(int var, double coef) {
  obj_.at(var) = coef;
}

double MilpModel::objective_coef(int var) const { return obj_.at(var); }

double MilpModel::eval_row(const Constraint& c,
                           const std::vector<double>& x) const {
  double v = 0.0;
  for (const RowTerm& t : c.terms) v += t.coef * x[t.var];
  return v;
}

double MilpModel::row_violation(const Constraint& c,
                                const std::vector<double>& x) const {
  double v = eval_row(c, x);
  switch (c.sense) {
    case Sense::LE: return v - c.rhs;
    case Sense::GE: return c.rhs - v;
    case Sense::EQ: return std::abs(v - c.rhs);
  }
  return 0.0;
}

double MilpModel::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const Constraint& c : rows_)
    worst = std::max(worst, row_violation(c, x));
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars_[j].lb - x[j]);
    worst = std::max(worst, x[j] - vars_[j].ub);
  }
  return worst;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < num_vars(); ++j) v += obj_[j] * x[j];
  return v;
}

bool MilpModel::has_integers() const {
  for (const Variable& v : vars_)
    if (v.kind == VarKind::Binary) return true;
  return false;
}

}  // namespace flp
