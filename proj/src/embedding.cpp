#include "flp/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flp/simplex.hpp"

namespace flp {

void Disjunction::validate() const {
  if (branches.empty()) throw ModelError("disjunction needs at least one branch");
  for (const Branch& b : branches)
    for (const NamedRow& r : b.rows)
      if (r.sense != Sense::LE)
        throw ModelError("disjunction branches must use <= rows");
}

void Encoding::validate() const {
  if (codes.empty()) throw ModelError("encoding has no codes");
  int r = length();
  std::set<std::vector<int>> seen;
  for (const auto& c : codes) {
    if (static_cast<int>(c.size()) != r)
      throw ModelError("encoding codes have mixed lengths");
    for (int b : c)
      if (b != 0 && b != 1) throw ModelError("encoding codes must be 0/1");
    if (!seen.insert(c).second)
      throw ModelError("encoding has duplicate codes");
  }
  int k = size();
  int need = 0;
  while ((1 << need) < k) ++need;
  if (r < need) throw ModelError("encoding too short for branch count");
}

bool Encoding::is_unary() const {
  if (length() != size()) return false;
  for (int k = 0; k < size(); ++k)
    for (int j = 0; j < length(); ++j)
      if (codes[k][j] != (j == k ? 1 : 0)) return false;
  return true;
}

Encoding Encoding::unary(int k) {
  Encoding e;
  e.codes.assign(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i) e.codes[i][i] = 1;
  return e;
}

Encoding Encoding::gray4() { return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

Encoding Encoding::bb4() { return {{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}; }

Encoding Encoding::c8() {
  return {{{1, 0, 0, 0},
           {1, 1, 0, 0},
           {0, 1, 0, 0},
           {0, 1, 1, 0},
           {0, 0, 1, 0},
           {0, 0, 1, 1},
           {0, 0, 0, 1},
           {1, 0, 0, 1}}};
}

void GroundSet::validate() const {
  for (const Variable& v : vars)
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
      throw ModelError("ground set is unbounded in variable " + v.name);
}

namespace {

bool matches(const Encoding& a, const Encoding& b) { return a.codes == b.codes; }

// All 0/1 points of the r-cube satisfying the given equalities.
std::vector<std::vector<int>> cube_solutions(
    int r, const std::vector<std::pair<std::vector<double>, double>>& eqs) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> v(r);
    for (int j = 0; j < r; ++j) v[j] = (mask >> j) & 1;
    bool ok = true;
    for (const auto& [a, b] : eqs) {
      double lhs = 0;
      for (int j = 0; j < r; ++j) lhs += a[j] * v[j];
      if (std::abs(lhs - b) > 1e-9) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<NamedRow> code_set_formulation(const Encoding& enc,
                                           const std::vector<std::string>& bins) {
  enc.validate();
  int r = enc.length();
  if (static_cast<int>(bins.size()) != r)
    throw ModelError("code_set_formulation: binary name count != code length");
  if (r > 8) throw ModelError("encodings longer than 8 bits are unsupported");

  std::vector<NamedRow> rows;
  if (enc.size() == (1 << r)) return rows;  // full cube, e.g. two-bit codes

  if (enc.is_unary()) {
    NamedRow sum;
    sum.name = "code_sum";
    for (const std::string& b : bins) sum.terms.push_back({b, 1.0});
    sum.sense = Sense::EQ;
    sum.rhs = 1.0;
    rows.push_back(std::move(sum));
    return rows;
  }

  if (matches(enc, Encoding::c8())) {
    NamedRow ge1{"code_cover", {}, Sense::GE, 1.0};
    for (const std::string& b : bins) ge1.terms.push_back({b, 1.0});
    rows.push_back(ge1);
    // Slot order (y_ij, x_ij, y_ji, x_ji): opposite orientations exclude
    // each other per axis.
    rows.push_back({"code_pair_y", {{bins[0], 1.0}, {bins[2], 1.0}}, Sense::LE, 1.0});
    rows.push_back({"code_pair_x", {{bins[1], 1.0}, {bins[3], 1.0}}, Sense::LE, 1.0});
    return rows;
  }

  // Fallback: affine-hull equations, accepted only if their 0/1 solutions
  // are exactly the code set.
  int k = enc.size();
  std::vector<std::vector<double>> m(k, std::vector<double>(r + 1, 1.0));
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < r; ++j) m[a][j] = enc.codes[a][j];
  // Row-reduce m and extract a nullspace basis of the column space.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c <= r && rank < k; ++c) {
    int piv = -1;
    for (int a = rank; a < k; ++a)
      if (std::abs(m[a][c]) > 1e-9) {
        piv = a;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    double p = m[rank][c];
    for (int j = 0; j <= r; ++j) m[rank][j] /= p;
    for (int a = 0; a < k; ++a) {
      if (a == rank) continue;
      double f = m[a][c];
      for (int j = 0; j <= r; ++j) m[a][j] -= f * m[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::pair<std::vector<double>, double>> eqs;
  for (int c = 0; c <= r; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end())
      continue;
    // Free column c: nullspace vector w with w[c] = 1, w[pivot] = -m[.][c].
    std::vector<double> w(r + 1, 0.0);
    w[c] = 1.0;
    for (int a = 0; a < rank; ++a) w[pivot_col[a]] = -m[a][c];
    std::vector<double> coef(w.begin(), w.begin() + r);
    eqs.push_back({coef, -w[r]});
  }
  auto sols = cube_solutions(r, eqs);
  std::set<std::vector<int>> want(enc.codes.begin(), enc.codes.end());
  std::set<std::vector<int>> got(sols.begin(), sols.end());
  if (want != got)
    throw ModelError(
        "encoding is not among the supported families and not affinely "
        "describable");
  int idx = 0;
  for (const auto& [a, b] : eqs) {
    NamedRow row;
    row.name = "code_eq" + std::to_string(idx++);
    for (int j = 0; j < r; ++j)
      if (a[j] != 0.0) row.terms.push_back({bins[j], a[j]});
    row.sense = Sense::EQ;
    row.rhs = b;
    rows.push_back(std::move(row));
  }
  return rows;
}

CodeAffine default_bigM(const GroundSet& q, const NamedRow& row,
                        const Encoding& enc, int branch) {
  q.validate();
  if (row.sense != Sense::LE)
    throw ModelError("default_bigM expects a <= row");
  // Exact maximum of the row's lhs over Q, by LP.
  MilpModel lp;
  for (const Variable& v : q.vars) lp.add_var(v.name, v.lb, v.ub);
  for (const NamedRow& r : q.rows) lp.add_row(r);
  for (const NamedTerm& t : row.terms)
    lp.add_objective(lp.var(t.var), -t.coef);  // maximize lhs
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw ModelError("default_bigM: ground set LP not optimal");
  double max_lhs = -res.value;
  double slack = std::max(0.0, max_lhs - row.rhs);

  CodeAffine out;
  int r = enc.length();
  out.coefs.assign(r, 0.0);
  if (enc.is_unary()) {
    // R(v) = b + slack (1 - v_k): off by one code bit exactly.
    out.constant = row.rhs + slack;
    out.coefs[branch] = -slack;
  } else {
    // R(v) = b + slack * hamming(v, h^k).
    const std::vector<int>& h = enc.codes[branch];
    out.constant = row.rhs;
    for (int j = 0; j < r; ++j) {
      if (h[j] == 1) {
        out.constant += slack;
        out.coefs[j] = -slack;
      } else {
        out.coefs[j] = slack;
      }
    }
  }
  return out;
}

MilpModel build_bigM_embedding(const GroundSet& q, const Disjunction& d,
                               const Encoding& enc,
                               const std::vector<std::string>& bins,
                               const std::vector<std::vector<CodeAffine>>& R) {
  q.validate();
  d.validate();
  enc.validate();
  if (enc.size() != static_cast<int>(d.branches.size()))
    throw ModelError("encoding size must match branch count");
  if (static_cast<int>(bins.size()) != enc.length())
    throw ModelError("binary name count must match code length");
  if (R.size() != d.branches.size())
    throw ModelError("R must supply one function list per branch");

  MilpModel model;
  for (const Variable& v : q.vars)
    model.add_var(v.name, v.lb, v.ub, v.kind, v.branch_priority);
  for (const std::string& b : bins) model.add_var(b, 0.0, 1.0, VarKind::Binary);
  for (const NamedRow& r : q.rows) model.add_row(r);
  for (const NamedRow& r : code_set_formulation(enc, bins)) model.add_row(r);

  for (size_t k = 0; k < d.branches.size(); ++k) {
    const Branch& br = d.branches[k];
    if (R[k].size() != br.rows.size())
      throw ModelError("R[" + std::to_string(k) + "] size mismatch");
    for (size_t l = 0; l < br.rows.size(); ++l) {
      const NamedRow& row = br.rows[l];
      const CodeAffine& Rkl = R[k][l];
      if (std::abs(Rkl.eval(enc.codes[k]) - row.rhs) > 1e-7)
        throw ModelError("big-M function not tight at branch " +
                         std::to_string(k + 1) + " own code (row " +
                         row.name + ")");
      NamedRow out;
      out.name = row.name.empty()
                     ? "br" + std::to_string(k + 1) + "_" + std::to_string(l + 1)
                     : row.name;
      out.terms = row.terms;
      for (int j = 0; j < enc.length(); ++j)
        if (Rkl.coefs[j] != 0.0) out.terms.push_back({bins[j], -Rkl.coefs[j]});
      out.sense = Sense::LE;
      out.rhs = Rkl.constant;
      model.add_row(out);
    }
  }
  return model;
}

MilpModel build_bigM_embedding(const GroundSet& q, const Disjunction& d,
                               const Encoding& enc,
                               const std::vector<std::string>& bins) {
  std::vector<std::vector<CodeAffine>> R;
  R.reserve(d.branches.size());
  for (size_t k = 0; k < d.branches.size(); ++k) {
    std::vector<CodeAffine> rk;
    for (const NamedRow& row : d.branches[k].rows)
      rk.push_back(default_bigM(q, row, enc, static_cast<int>(k)));
    R.push_back(std::move(rk));
  }
  return build_bigM_embedding(q, d, enc, bins, R);
}

}  // namespace flp
