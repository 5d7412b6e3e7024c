#include "flp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "flp/simplex.hpp"

namespace flp {

namespace {

const char* kBranchNames[4] = {"d1", "d2", "d3", "d4"};

// Signed slack of "p precedes q along s": positive when satisfied strictly.
double precedence_slack(const Layout& lay, Axis s, int p, int q) {
  const auto& bp = lay.boxes[p - 1];
  const auto& bq = lay.boxes[q - 1];
  return (bq.center(s) - 0.5 * bq.width(s)) -
         (bp.center(s) + 0.5 * bp.width(s));
}

}  // namespace

FeasibilityReport check_layout(const FlpInstance& instance,
                               const Layout& layout, double tol) {
  if (static_cast<int>(layout.boxes.size()) != instance.num_boxes())
    throw InstanceError("layout does not match instance box count");
  BoxBounds bounds = derive_bounds(instance);
  FeasibilityReport rep;
  auto add = [&](std::string what, double slack, std::string detail = "") {
    bool ok = slack >= -tol;
    rep.checks.push_back({std::move(what), ok, slack, std::move(detail)});
    if (!ok) rep.feasible = false;
  };

  for (int b = 1; b <= instance.num_boxes(); ++b) {
    const auto& p = layout.boxes[b - 1];
    for (Axis s : kAxes) {
      double L = instance.floor(s);
      double c = p.center(s), l = p.width(s);
      std::string ax = axis_name(s);
      add("onfloor_" + ax + "_" + std::to_string(b),
          std::min(c - 0.5 * l, L - c - 0.5 * l));
      add("width_lb_" + ax + "_" + std::to_string(b), l - bounds.lb(b, s));
      add("width_ub_" + ax + "_" + std::to_string(b), bounds.ub(b, s) - l);
    }
    add("area_" + std::to_string(b),
        p.lx * p.ly - instance.boxes[b - 1].area);
  }

  for (auto [i, j] : instance.pairs()) {
    double slacks[4] = {
        precedence_slack(layout, Axis::Y, i, j),
        precedence_slack(layout, Axis::X, i, j),
        precedence_slack(layout, Axis::Y, j, i),
        precedence_slack(layout, Axis::X, j, i),
    };
    std::string branches;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      best = std::max(best, slacks[k]);
      if (slacks[k] >= -tol) {
        if (!branches.empty()) branches += ",";
        branches += kBranchNames[k];
      }
    }
    add("nonoverlap_" + std::to_string(i) + "_" + std::to_string(j), best,
        branches.empty() ? "no branch satisfied" : "branches " + branches);
  }

  double obj = 0.0;
  for (auto [i, j] : instance.pairs()) {
    const auto& bi = layout.boxes[i - 1];
    const auto& bj = layout.boxes[j - 1];
    obj += instance.cost(i, j) *
           (std::abs(bi.cx - bj.cx) + std::abs(bi.cy - bj.cy));
  }
  rep.objective = obj;
  return rep;
}

std::string FeasibilityReport::text() const {
  std::ostringstream os;
  for (const Check& c : checks) {
    os << (c.ok ? "ok   " : "FAIL ") << c.what << " slack=" << c.slack;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  os << (feasible ? "feasible" : "infeasible") << " objective=" << objective
     << "\n";
  return os.str();
}

std::string FeasibilityReport::csv_header() {
  return "instance,feasible,objective,failed_checks,min_slack";
}

std::string FeasibilityReport::csv_row(const std::string& instance_name) const {
  int failed = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const Check& c : checks) {
    if (!c.ok) ++failed;
    min_slack = std::min(min_slack, c.slack);
  }
  std::ostringstream os;
  os << instance_name << "," << (feasible ? 1 : 0) << "," << objective << ","
     << failed << "," << min_slack;
  return os.str();
}

namespace {

// Branch clause row builders shared by the brute-force oracles; "p precedes
// q" and its complement, both as <= rows over the assembled variable names.
NamedRow oracle_prec(Axis s, int p, int q) {
  return {"orc_prec_" + std::string(axis_name(s)) + "_" + std::to_string(p) +
              "_" + std::to_string(q),
          {{var_c(s, p), 1.0},
           {var_l(s, p), 0.5},
           {var_c(s, q), -1.0},
           {var_l(s, q), 0.5}},
          Sense::LE,
          0.0};
}

NamedRow oracle_nprec(Axis s, int p, int q) {
  return {"orc_nprec_" + std::string(axis_name(s)) + "_" + std::to_string(p) +
              "_" + std::to_string(q),
          {{var_c(s, q), 1.0},
           {var_l(s, q), -0.5},
           {var_c(s, p), -1.0},
           {var_l(s, p), -0.5}},
          Sense::LE,
          0.0};
}

std::vector<NamedRow> branch_rows_d4(int i, int j, int k) {
  switch (k) {
    case 0: return {oracle_prec(Axis::Y, i, j)};
    case 1: return {oracle_prec(Axis::X, i, j)};
    case 2: return {oracle_prec(Axis::Y, j, i)};
    default: return {oracle_prec(Axis::X, j, i)};
  }
}

std::vector<NamedRow> branch_rows_d8(int i, int j, int k) {
  switch (k) {
    case 0:
      return {oracle_prec(Axis::Y, i, j), oracle_nprec(Axis::X, i, j),
              oracle_nprec(Axis::X, j, i)};
    case 1: return {oracle_prec(Axis::Y, i, j), oracle_prec(Axis::X, i, j)};
    case 2:
      return {oracle_prec(Axis::X, i, j), oracle_nprec(Axis::Y, i, j),
              oracle_nprec(Axis::Y, j, i)};
    case 3: return {oracle_prec(Axis::X, i, j), oracle_prec(Axis::Y, j, i)};
    case 4:
      return {oracle_prec(Axis::Y, j, i), oracle_nprec(Axis::X, i, j),
              oracle_nprec(Axis::X, j, i)};
    case 5: return {oracle_prec(Axis::X, j, i), oracle_prec(Axis::Y, j, i)};
    case 6:
      return {oracle_prec(Axis::X, j, i), oracle_nprec(Axis::Y, i, j),
              oracle_nprec(Axis::Y, j, i)};
    default: return {oracle_prec(Axis::X, j, i), oracle_prec(Axis::Y, i, j)};
  }
}

MilpModel oracle_base_model(const FlpInstance& instance,
                            const BoxBounds& bounds, int area_tangents) {
  MilpModel m;
  int n = instance.num_boxes();
  for (int b = 1; b <= n; ++b)
    for (Axis s : kAxes) {
      m.add_var(var_c(s, b), 0.0, instance.floor(s));
      m.add_var(var_l(s, b), bounds.lb(b, s), bounds.ub(b, s));
    }
  for (int b = 1; b <= n; ++b)
    for (Axis s : kAxes) {
      std::string ax = axis_name(s);
      m.add_row("sitb_lo_" + ax + "_" + std::to_string(b),
                {{m.var(var_l(s, b)), 0.5}, {m.var(var_c(s, b)), -1.0}},
                Sense::LE, 0.0);
      m.add_row("sitb_hi_" + ax + "_" + std::to_string(b),
                {{m.var(var_c(s, b)), 1.0}, {m.var(var_l(s, b)), 0.5}},
                Sense::LE, instance.floor(s));
    }
  for (int b = 1; b <= n; ++b)
    for (const NamedRow& r : area_outer_approx(b, instance.boxes[b - 1].area,
                                               bounds, area_tangents))
      m.add_row(r);
  for (auto [i, j] : instance.pairs()) {
    double p = instance.cost(i, j);
    for (Axis s : kAxes) {
      int d = m.add_var(var_d(s, i, j), 0.0, instance.floor(s));
      std::string tag = std::string(axis_name(s)) + "_" + std::to_string(i) +
                        "_" + std::to_string(j);
      m.add_row("objlin_" + tag + "_a",
                {{m.var(var_c(s, i)), 1.0}, {m.var(var_c(s, j)), -1.0}, {d, -1.0}},
                Sense::LE, 0.0);
      m.add_row("objlin_" + tag + "_b",
                {{m.var(var_c(s, j)), 1.0}, {m.var(var_c(s, i)), -1.0}, {d, -1.0}},
                Sense::LE, 0.0);
      if (p != 0.0) m.set_objective(d, p);
    }
  }
  return m;
}

}  // namespace

BruteForceResult brute_force_optimum(const FlpInstance& instance,
                                     int area_tangents, bool refined) {
  instance.validate();
  int n = instance.num_boxes();
  int guard = refined ? 3 : 4;
  if (n > guard)
    throw ModelError("brute_force_optimum guard: N <= " +
                     std::to_string(guard) +
                     (refined ? " for the refined disjunction" : ""));
  BoxBounds bounds = derive_bounds(instance);
  auto pairs = instance.pairs();
  int branches = refined ? 8 : 4;

  BruteForceResult out;
  std::vector<int> choice(pairs.size(), 0);
  std::vector<double> best_point;
  MilpModel best_model;
  while (true) {
    MilpModel m = oracle_base_model(instance, bounds, area_tangents);
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      auto rows = refined ? branch_rows_d8(i, j, choice[k])
                          : branch_rows_d4(i, j, choice[k]);
      for (NamedRow& r : rows) {
        r.name += "_p" + std::to_string(k);
        m.add_row(r);
      }
    }
    ++out.lp_count;
    LpResult lp = solve_lp(m);
    if (lp.status == LpStatus::Optimal && lp.value < out.value) {
      out.feasible = true;
      out.value = lp.value;
      best_point = lp.x;
      best_model = m;
    }
    // Odometer over branch assignments.
    size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == branches) {
      choice[pos] = 0;
      ++pos;
    }
    if (pos == choice.size()) break;
  }
  if (out.feasible) out.layout = extract_layout(instance, best_model, best_point);
  return out;
}

std::vector<FeasibleSample> sample_feasible_points(const NboxModel& nbox,
                                                   int count,
                                                   std::uint64_t seed) {
  std::vector<FeasibleSample> samples;
  if (count <= 0) return samples;
  const MilpModel& model = nbox.model;
  SimplexSolver solver(model);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.05, 1.0);

  std::vector<double> base_lb(model.num_vars()), base_ub(model.num_vars());
  for (int v = 0; v < model.num_vars(); ++v) {
    base_lb[v] = model.vars()[v].lb;
    base_ub[v] = model.vars()[v].ub;
  }

  long attempts = 0;
  long max_attempts = 50L * count + 100;
  while (static_cast<int>(samples.size()) < count) {
    if (++attempts > max_attempts)
      throw ModelError("sample_feasible_points: too many infeasible draws");
    std::vector<double> lb = base_lb, ub = base_ub;
    FeasibleSample s;
    for (const PairInfo& pi : nbox.pairs) {
      int pick = static_cast<int>(rng() % pi.codes.size());
      s.code_choice.push_back(pick);
      for (size_t b = 0; b < pi.binaries.size(); ++b) {
        int v = model.var(pi.binaries[b]);
        lb[v] = ub[v] = pi.codes[pick][b];
      }
    }
    // Random objective; positive weight on the d variables keeps them tight
    // against their lower bounding rows.
    std::vector<double> obj(model.num_vars(), 0.0);
    for (int v = 0; v < model.num_vars(); ++v) {
      if (model.vars()[v].kind == VarKind::Binary) continue;
      const std::string& name = model.vars()[v].name;
      obj[v] = name.rfind("d_", 0) == 0 ? pos(rng) : sym(rng);
    }
    solver.set_objective(obj);
    LpResult lp = solver.solve(lb, ub);
    if (lp.status != LpStatus::Optimal) continue;
    s.point = lp.x;
    samples.push_back(std::move(s));
  }
  return samples;
}

namespace {

class VertexEnumerator {
 public:
  VertexEnumerator(const Polytope& poly, double tol) : tol_(tol) {
    n_ = static_cast<int>(poly.vars.size());
    if (n_ > 14) throw ModelError("enumerate_vertices: dimension > 14");
    std::unordered_map<std::string, int> index;
    for (int v = 0; v < n_; ++v) index[poly.vars[v]] = v;
    for (const NamedRow& r : poly.rows) {
      std::vector<double> a(n_, 0.0);
      for (const NamedTerm& t : r.terms) {
        auto it = index.find(t.var);
        if (it == index.end())
          throw ModelError("enumerate_vertices: unknown variable " + t.var);
        a[it->second] += t.coef;
      }
      if (r.sense == Sense::EQ) {
        eq_a_.push_back(a);
        eq_b_.push_back(r.rhs);
      } else if (r.sense == Sense::LE) {
        le_a_.push_back(a);
        le_b_.push_back(r.rhs);
      } else {
        for (double& v : a) v = -v;
        le_a_.push_back(a);
        le_b_.push_back(-r.rhs);
      }
    }
  }

  std::vector<std::vector<double>> run() {
    for (size_t e = 0; e < eq_a_.size(); ++e) {
      std::vector<double> row = eq_a_[e];
      double rhs = eq_b_[e];
      if (!push_reduced(row, rhs)) {
        if (std::abs(rhs) > tol_) return {};  // inconsistent equalities
      }
    }
    recurse(0);
    dedupe();
    return vertices_;
  }

 private:
  // Reduce (row, rhs) against the current echelon; on independence install a
  // new pivot and return true. On dependence rhs holds the residual.
  bool push_reduced(std::vector<double>& row, double& rhs) {
    for (size_t k = 0; k < rows_.size(); ++k) {
      double f = row[pivots_[k]];
      if (f == 0.0) continue;
      for (int c = 0; c < n_; ++c) row[c] -= f * rows_[k][c];
      rhs -= f * rhs_[k];
    }
    int piv = -1;
    double best = 1e-9;
    for (int c = 0; c < n_; ++c)
      if (std::abs(row[c]) > best) {
        best = std::abs(row[c]);
        piv = c;
      }
    if (piv < 0) return false;
    double f = row[piv];
    for (int c = 0; c < n_; ++c) row[c] /= f;
    rhs /= f;
    rows_.push_back(std::move(row));
    rhs_.push_back(rhs);
    pivots_.push_back(piv);
    return true;
  }

  void pop() {
    rows_.pop_back();
    rhs_.pop_back();
    pivots_.pop_back();
  }

  void recurse(size_t next) {
    int need = n_ - static_cast<int>(rows_.size());
    if (need == 0) {
      candidate();
      return;
    }
    for (size_t r = next; r + need <= le_a_.size(); ++r) {
      std::vector<double> row = le_a_[r];
      double rhs = le_b_[r];
      if (!push_reduced(row, rhs)) continue;
      recurse(r + 1);
      pop();
    }
  }

  void candidate() {
    // Back-substitute: rows are zero on earlier pivots only.
    std::vector<double> x(n_, 0.0);
    for (int k = static_cast<int>(rows_.size()) - 1; k >= 0; --k) {
      double v = rhs_[k];
      for (int m = k + 1; m < static_cast<int>(rows_.size()); ++m)
        v -= rows_[k][pivots_[m]] * x[pivots_[m]];
      x[pivots_[k]] = v;
    }
    for (size_t r = 0; r < le_a_.size(); ++r) {
      double lhs = 0.0;
      for (int c = 0; c < n_; ++c) lhs += le_a_[r][c] * x[c];
      if (lhs > le_b_[r] + tol_) return;
    }
    for (size_t e = 0; e < eq_a_.size(); ++e) {
      double lhs = 0.0;
      for (int c = 0; c < n_; ++c) lhs += eq_a_[e][c] * x[c];
      if (std::abs(lhs - eq_b_[e]) > tol_) return;
    }
    vertices_.push_back(std::move(x));
  }

  void dedupe() {
    std::sort(vertices_.begin(), vertices_.end());
    std::vector<std::vector<double>> out;
    for (const auto& v : vertices_) {
      bool dup = false;
      for (const auto& u : out) {
        double dist = 0.0;
        for (int c = 0; c < n_; ++c) dist = std::max(dist, std::abs(u[c] - v[c]));
        if (dist <= tol_ * 10) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(v);
    }
    vertices_ = std::move(out);
  }

  int n_ = 0;
  double tol_;
  std::vector<std::vector<double>> eq_a_, le_a_;
  std::vector<double> eq_b_, le_b_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<int> pivots_;
  std::vector<std::vector<double>> vertices_;
};

}  // namespace

std::vector<std::vector<double>> enumerate_vertices(const Polytope& poly,
                                                    double tol) {
  VertexEnumerator e(poly, tol);
  return e.run();
}

Polytope unary_single_axis_polytope(int i, int j, const BoxBounds& bounds,
                                    Axis s, double L) {
  Polytope poly;
  std::string ci = var_c(s, i), cj = var_c(s, j);
  std::string li = var_l(s, i), lj = var_l(s, j);
  std::string uij = var_u(s, i, j), uji = var_u(s, j, i);
  poly.vars = {ci, cj, li, lj, uij, uji};
  double lbi = bounds.lb(i, s), lbj = bounds.lb(j, s);
  poly.rows = {
      {"lo_i", {{li, 0.5}, {uji, lbj}, {ci, -1.0}}, Sense::LE, 0.0},
      {"hi_i", {{ci, 1.0}, {li, 0.5}, {uij, lbj}}, Sense::LE, L},
      {"lo_j", {{lj, 0.5}, {uij, lbi}, {cj, -1.0}}, Sense::LE, 0.0},
      {"hi_j", {{cj, 1.0}, {lj, 0.5}, {uji, lbi}}, Sense::LE, L},
      {"prec_ij",
       {{ci, 1.0}, {li, 0.5}, {cj, -1.0}, {lj, 0.5}, {uij, L}},
       Sense::LE,
       L},
      {"prec_ji",
       {{cj, 1.0}, {lj, 0.5}, {ci, -1.0}, {li, 0.5}, {uji, L}},
       Sense::LE,
       L},
      {"wlb_i", {{li, -1.0}}, Sense::LE, -lbi},
      {"wlb_j", {{lj, -1.0}}, Sense::LE, -lbj},
      {"u_ij_lo", {{uij, -1.0}}, Sense::LE, 0.0},
      {"u_ij_hi", {{uij, 1.0}}, Sense::LE, 1.0},
      {"u_ji_lo", {{uji, -1.0}}, Sense::LE, 0.0},
      {"u_ji_hi", {{uji, 1.0}}, Sense::LE, 1.0},
      {"u_pair", {{uij, 1.0}, {uji, 1.0}}, Sense::LE, 1.0},
  };
  return poly;
}

}  // namespace flp
