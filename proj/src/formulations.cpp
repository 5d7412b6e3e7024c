#include "flp/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "flp/cuts.hpp"

namespace flp {

const char* formulation_name(FormulationKind k) {
  switch (k) {
    case FormulationKind::BigMUnary: return "u-bigm";
    case FormulationKind::Unary: return "u";
    case FormulationKind::GrayBinary: return "gray";
    case FormulationKind::Bldp1: return "bldp1";
    case FormulationKind::SequencePair: return "sp";
    case FormulationKind::RefinedUnary: return "ru";
    case FormulationKind::Extended: return "ext";
  }
  return "?";
}

FormulationKind parse_formulation(const std::string& s) {
  for (FormulationKind k :
       {FormulationKind::BigMUnary, FormulationKind::Unary,
        FormulationKind::GrayBinary, FormulationKind::Bldp1,
        FormulationKind::SequencePair, FormulationKind::RefinedUnary,
        FormulationKind::Extended})
    if (s == formulation_name(k)) return k;
  throw ModelError("unknown formulation kind: " + s);
}

const char* cut_level_name(CutLevel level) {
  switch (level) {
    case CutLevel::None: return "none";
    case CutLevel::Plus: return "plus";
    case CutLevel::VI: return "vi";
    case CutLevel::VI3: return "vi3";
  }
  return "?";
}

CutLevel parse_cut_level(const std::string& s) {
  for (CutLevel l : {CutLevel::None, CutLevel::Plus, CutLevel::VI, CutLevel::VI3})
    if (s == cut_level_name(l)) return l;
  throw ModelError("unknown cut level: " + s);
}

std::string var_c(Axis s, int box) {
  return std::string("c_") + axis_name(s) + "_" + std::to_string(box);
}
std::string var_l(Axis s, int box) {
  return std::string("l_") + axis_name(s) + "_" + std::to_string(box);
}
std::string var_d(Axis s, int i, int j) {
  return std::string("d_") + axis_name(s) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}
std::string var_u(Axis s, int p, int q) {
  return std::string("u_") + axis_name(s) + "_" + std::to_string(p) + "_" +
         std::to_string(q);
}
std::string var_z(Axis s, int p, int q) {
  return std::string("z_") + axis_name(s) + "_" + std::to_string(p) + "_" +
         std::to_string(q);
}
std::string var_w(int k, int i, int j) {
  return "w_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}
std::string var_y(int k, int i, int j) {
  return "y_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}
std::string var_v(int k, int i, int j) {
  return "v_" + std::to_string(k) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}
std::string var_copy(const char* base, Axis s, int box, int i, int j, int k) {
  return std::string(base) + "_" + axis_name(s) + "_" + std::to_string(box) +
         "_" + std::to_string(i) + "_" + std::to_string(j) + "_b" +
         std::to_string(k);
}

namespace {

std::string pair_tag(int i, int j) {
  return std::to_string(i) + "_" + std::to_string(j);
}

// Precedence row "p before q along s": c_p + l_p/2 - c_q + l_q/2 <= 0.
NamedRow precedence_row(const std::string& name, Axis s, int p, int q) {
  return {name,
          {{var_c(s, p), 1.0},
           {var_l(s, p), 0.5},
           {var_c(s, q), -1.0},
           {var_l(s, q), 0.5}},
          Sense::LE,
          0.0};
}

void add_simple_sitb(ModelFragment& f, Axis s, int box, const std::string& tag) {
  std::string ax = axis_name(s);
  f.rows.push_back({"sitb_lo_" + ax + "_" + std::to_string(box) + "_" + tag,
                    {{var_l(s, box), 0.5}, {var_c(s, box), -1.0}},
                    Sense::LE,
                    0.0});
  f.rows.push_back({"sitb_hi_" + ax + "_" + std::to_string(box) + "_" + tag,
                    {{var_c(s, box), 1.0}, {var_l(s, box), 0.5}},
                    Sense::LE,
                    0.0});  // rhs patched by caller with L^s
}

void add_width_lb(ModelFragment& f, Axis s, int box, double lb,
                  const std::string& tag) {
  f.rows.push_back({"wlb_" + std::string(axis_name(s)) + "_" +
                        std::to_string(box) + "_" + tag,
                    {{var_l(s, box), -1.0}},
                    Sense::LE,
                    -lb});
}

}  // namespace

ModelFragment pairwise_model(FormulationKind kind, int i, int j,
                             const BoxBounds& bounds, double Lx, double Ly,
                             SitbMode sitb) {
  if (i >= j) throw ModelError("pairwise_model expects i < j");
  if (j > static_cast<int>(bounds.x.size()))
    throw ModelError("pairwise_model: pair out of range");
  ModelFragment f;
  std::string tag = pair_tag(i, j);
  auto L = [&](Axis s) { return s == Axis::X ? Lx : Ly; };
  bool tight = sitb == SitbMode::InFormulation;

  // Slot order shared by every four-binary family: (y,i,j), (x,i,j),
  // (y,j,i), (x,j,i).
  struct Slot {
    Axis s;
    int p, q;
  };
  const Slot slots[4] = {{Axis::Y, i, j}, {Axis::X, i, j}, {Axis::Y, j, i},
                         {Axis::X, j, i}};

  switch (kind) {
    case FormulationKind::BigMUnary: {
      for (int k = 0; k < 4; ++k)
        f.binaries.push_back(var_v(k + 1, i, j));
      f.codes = Encoding::unary(4).codes;
      if (tight)
        for (Axis s : kAxes)
          for (int b : {i, j}) {
            add_simple_sitb(f, s, b, tag);
            f.rows[f.rows.size() - 1].rhs = L(s);
          }
      for (int k = 0; k < 4; ++k) {
        const Slot& sl = slots[k];
        NamedRow row = precedence_row(
            "bm_prec_" + std::string(axis_name(sl.s)) + "_" +
                std::to_string(sl.p) + "_" + std::to_string(sl.q),
            sl.s, sl.p, sl.q);
        row.terms.push_back({f.binaries[k], L(sl.s)});
        row.rhs = L(sl.s);
        f.rows.push_back(std::move(row));
      }
      for (Axis s : kAxes)
        for (int b : {i, j}) {
          add_width_lb(f, s, b, bounds.lb(b, s), tag);
          f.rows.push_back({"wub_" + std::string(axis_name(s)) + "_" +
                                std::to_string(b) + "_" + tag,
                            {{var_l(s, b), 1.0}},
                            Sense::LE,
                            bounds.ub(b, s)});
        }
      NamedRow sum{"code_sum_" + tag, {}, Sense::EQ, 1.0};
      for (const std::string& b : f.binaries) sum.terms.push_back({b, 1.0});
      f.rows.push_back(std::move(sum));
      break;
    }

    case FormulationKind::Unary:
    case FormulationKind::RefinedUnary: {
      bool ru = kind == FormulationKind::RefinedUnary;
      for (const Slot& sl : slots)
        f.binaries.push_back(ru ? var_z(sl.s, sl.p, sl.q)
                                : var_u(sl.s, sl.p, sl.q));
      f.codes = ru ? Encoding::c8().codes : Encoding::unary(4).codes;
      auto bin = [&](Axis s, int p, int q) {
        for (int k = 0; k < 4; ++k)
          if (slots[k].s == s && slots[k].p == p) return f.binaries[k];
        throw ModelError("bad slot");
      };
      if (tight) {
        // (half l_p) + lb_q bin(q,p) <= c_p <= L - (half l_p) - lb_q bin(p,q)
        for (Axis s : kAxes)
          for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
            std::string ax = axis_name(s);
            f.rows.push_back({"tsitb_lo_" + ax + "_" + std::to_string(p) + "_" + tag,
                              {{var_l(s, p), 0.5},
                               {bin(s, q, p), bounds.lb(q, s)},
                               {var_c(s, p), -1.0}},
                              Sense::LE,
                              0.0});
            f.rows.push_back({"tsitb_hi_" + ax + "_" + std::to_string(p) + "_" + tag,
                              {{var_c(s, p), 1.0},
                               {var_l(s, p), 0.5},
                               {bin(s, p, q), bounds.lb(q, s)}},
                              Sense::LE,
                              L(s)});
          }
      }
      for (const Slot& sl : slots) {
        NamedRow row = precedence_row(
            (ru ? "ru_prec_" : "u_prec_") + std::string(axis_name(sl.s)) + "_" +
                std::to_string(sl.p) + "_" + std::to_string(sl.q),
            sl.s, sl.p, sl.q);
        row.terms.push_back({bin(sl.s, sl.p, sl.q), L(sl.s)});
        row.rhs = L(sl.s);
        f.rows.push_back(std::move(row));
      }
      for (Axis s : kAxes)
        for (int b : {i, j}) add_width_lb(f, s, b, bounds.lb(b, s), tag);
      if (ru) {
        NamedRow cover{"code_cover_" + tag, {}, Sense::GE, 1.0};
        for (const std::string& b : f.binaries) cover.terms.push_back({b, 1.0});
        f.rows.push_back(std::move(cover));
        for (Axis s : kAxes)
          f.rows.push_back({"code_pair_" + std::string(axis_name(s)) + "_" + tag,
                            {{bin(s, i, j), 1.0}, {bin(s, j, i), 1.0}},
                            Sense::LE,
                            1.0});
        // Non-precedence side: c_p + l_p/2 + L z_pq >= c_q - l_q/2
        //                      + (lb_p + lb_q)(z_ij + z_ji).
        for (Axis s : kAxes)
          for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
            double lbsum = bounds.lb(i, s) + bounds.lb(j, s);
            NamedRow row{"ru_nprec_" + std::string(axis_name(s)) + "_" +
                             std::to_string(p) + "_" + std::to_string(q),
                         {{var_c(s, q), 1.0},
                          {var_l(s, q), -0.5},
                          {var_c(s, p), -1.0},
                          {var_l(s, p), -0.5},
                          {bin(s, p, q), -L(s)},
                          {bin(s, i, j), lbsum},
                          {bin(s, j, i), lbsum}},
                         Sense::LE,
                         0.0};
            f.rows.push_back(std::move(row));
          }
      } else {
        NamedRow sum{"code_sum_" + tag, {}, Sense::EQ, 1.0};
        for (const std::string& b : f.binaries) sum.terms.push_back({b, 1.0});
        f.rows.push_back(std::move(sum));
      }
      break;
    }

    case FormulationKind::GrayBinary:
    case FormulationKind::SequencePair:
    case FormulationKind::Bldp1: {
      bool bb = kind == FormulationKind::Bldp1;
      std::string b1 = bb ? var_y(1, i, j) : var_w(1, i, j);
      std::string b2 = bb ? var_y(2, i, j) : var_w(2, i, j);
      f.binaries = {b1, b2};
      f.codes = (bb ? Encoding::bb4() : Encoding::gray4()).codes;
      if (tight)
        for (Axis s : kAxes)
          for (int b : {i, j}) {
            add_simple_sitb(f, s, b, tag);
            f.rows[f.rows.size() - 1].rhs = L(s);
          }
      for (Axis s : kAxes)
        for (int b : {i, j}) add_width_lb(f, s, b, bounds.lb(b, s), tag);
      // Big-M affine terms per branch, coefficients of (1, b1, b2).
      struct BigM {
        double c0, c1, c2;
      };
      // Gray: L(w1+w2), L(1-w1+w2), L(2-w1-w2), L(1+w1-w2)
      // BB:   L(y1+y2), L(2-y1-y2), L(1-y1+y2), L(1+y1-y2)
      const BigM gray[4] = {{0, 1, 1}, {1, -1, 1}, {2, -1, -1}, {1, 1, -1}};
      const BigM bldp[4] = {{0, 1, 1}, {2, -1, -1}, {1, -1, 1}, {1, 1, -1}};
      const BigM* M = bb ? bldp : gray;
      const char* prefix = bb ? "bb_prec_" : "gb_prec_";
      for (int k = 0; k < 4; ++k) {
        const Slot& sl = slots[k];
        NamedRow row = precedence_row(
            prefix + std::string(axis_name(sl.s)) + "_" +
                std::to_string(sl.p) + "_" + std::to_string(sl.q),
            sl.s, sl.p, sl.q);
        row.terms.push_back({b1, -L(sl.s) * M[k].c1});
        row.terms.push_back({b2, -L(sl.s) * M[k].c2});
        row.rhs = L(sl.s) * M[k].c0;
        f.rows.push_back(std::move(row));
      }
      break;
    }

    case FormulationKind::Extended: {
      for (int k = 1; k <= 4; ++k) f.binaries.push_back(var_v(k, i, j));
      f.codes = Encoding::unary(4).codes;
      for (int k = 1; k <= 4; ++k)
        for (Axis s : kAxes)
          for (int b : {i, j}) {
            f.vars.push_back({var_copy("c", s, b, i, j, k), 0.0, L(s),
                              VarKind::Continuous, 0});
            f.vars.push_back({var_copy("l", s, b, i, j, k), 0.0,
                              bounds.ub(b, s), VarKind::Continuous, 0});
          }
      for (int k = 1; k <= 4; ++k)
        for (Axis s : kAxes)
          for (int b : {i, j}) {
            std::string cn = var_copy("c", s, b, i, j, k);
            std::string ln = var_copy("l", s, b, i, j, k);
            std::string kt = std::to_string(k);
            std::string bt = std::string(axis_name(s)) + "_" +
                             std::to_string(b) + "_" + tag + "_b" + kt;
            f.rows.push_back({"ext_sitb_lo_" + bt,
                              {{ln, 0.5}, {cn, -1.0}},
                              Sense::LE,
                              0.0});
            f.rows.push_back({"ext_sitb_hi_" + bt,
                              {{cn, 1.0}, {ln, 0.5}, {var_v(k, i, j), -L(s)}},
                              Sense::LE,
                              0.0});
            f.rows.push_back({"ext_wlb_" + bt,
                              {{var_v(k, i, j), bounds.lb(b, s)}, {ln, -1.0}},
                              Sense::LE,
                              0.0});
            f.rows.push_back({"ext_wub_" + bt,
                              {{ln, 1.0}, {var_v(k, i, j), -bounds.ub(b, s)}},
                              Sense::LE,
                              0.0});
          }
      // One disjunct row per branch over the branch's copies.
      for (int k = 0; k < 4; ++k) {
        const Slot& sl = slots[k];
        int kk = k + 1;
        f.rows.push_back({"ext_prec_" + std::string(axis_name(sl.s)) + "_" +
                              std::to_string(sl.p) + "_" + std::to_string(sl.q),
                          {{var_copy("c", sl.s, sl.p, i, j, kk), 1.0},
                           {var_copy("c", sl.s, sl.q, i, j, kk), -1.0},
                           {var_copy("l", sl.s, sl.p, i, j, kk), 0.5},
                           {var_copy("l", sl.s, sl.q, i, j, kk), 0.5}},
                          Sense::LE,
                          0.0});
      }
      for (Axis s : kAxes)
        for (int b : {i, j}) {
          NamedRow csum{"ext_csum_" + std::string(axis_name(s)) + "_" +
                            std::to_string(b) + "_" + tag,
                        {{var_c(s, b), -1.0}},
                        Sense::EQ,
                        0.0};
          NamedRow lsum{"ext_lsum_" + std::string(axis_name(s)) + "_" +
                            std::to_string(b) + "_" + tag,
                        {{var_l(s, b), -1.0}},
                        Sense::EQ,
                        0.0};
          for (int k = 1; k <= 4; ++k) {
            csum.terms.push_back({var_copy("c", s, b, i, j, k), 1.0});
            lsum.terms.push_back({var_copy("l", s, b, i, j, k), 1.0});
          }
          f.rows.push_back(std::move(csum));
          f.rows.push_back(std::move(lsum));
        }
      NamedRow sum{"code_sum_" + tag, {}, Sense::EQ, 1.0};
      for (const std::string& b : f.binaries) sum.terms.push_back({b, 1.0});
      f.rows.push_back(std::move(sum));
      break;
    }
  }
  return f;
}

namespace {

NamedRow nonprecedence_row(const std::string& name, Axis s, int p, int q) {
  // Complement of precedence: c_q - l_q/2 - c_p - l_p/2 <= 0.
  return {name,
          {{var_c(s, q), 1.0},
           {var_l(s, q), -0.5},
           {var_c(s, p), -1.0},
           {var_l(s, p), -0.5}},
          Sense::LE,
          0.0};
}

}  // namespace

Disjunction d4_disjunction(int i, int j) {
  Disjunction d;
  int k = 0;
  for (auto [s, p, q] : {std::tuple{Axis::Y, i, j}, std::tuple{Axis::X, i, j},
                         std::tuple{Axis::Y, j, i}, std::tuple{Axis::X, j, i}})
    d.branches.push_back(
        {{precedence_row("d" + std::to_string(++k), s, p, q)}});
  return d;
}

Disjunction d8_disjunction(int i, int j) {
  auto prec = [&](Axis s, int p, int q) {
    return precedence_row("prec", s, p, q);
  };
  auto nprec = [&](Axis s, int p, int q) {
    return nonprecedence_row("nprec", s, p, q);
  };
  Disjunction d;
  d.branches = {
      {{prec(Axis::Y, i, j), nprec(Axis::X, i, j), nprec(Axis::X, j, i)}},
      {{prec(Axis::Y, i, j), prec(Axis::X, i, j)}},
      {{prec(Axis::X, i, j), nprec(Axis::Y, i, j), nprec(Axis::Y, j, i)}},
      {{prec(Axis::X, i, j), prec(Axis::Y, j, i)}},
      {{prec(Axis::Y, j, i), nprec(Axis::X, i, j), nprec(Axis::X, j, i)}},
      {{prec(Axis::X, j, i), prec(Axis::Y, j, i)}},
      {{prec(Axis::X, j, i), nprec(Axis::Y, i, j), nprec(Axis::Y, j, i)}},
      {{prec(Axis::X, j, i), prec(Axis::Y, i, j)}},
  };
  return d;
}

GroundSet ground_set_lb(int i, int j, const BoxBounds& bounds, double Lx,
                        double Ly) {
  GroundSet q;
  for (int b : {i, j})
    for (Axis s : kAxes) {
      double L = s == Axis::X ? Lx : Ly;
      q.vars.push_back({var_c(s, b), 0.0, L, VarKind::Continuous, 0});
      q.vars.push_back({var_l(s, b), 0.0, 2.0 * L, VarKind::Continuous, 0});
      std::string ax = axis_name(s);
      std::string tag = std::to_string(b) + "_" + std::to_string(i) + "_" +
                        std::to_string(j);
      q.rows.push_back({"sitb_lo_" + ax + "_" + tag,
                        {{var_l(s, b), 0.5}, {var_c(s, b), -1.0}},
                        Sense::LE,
                        0.0});
      q.rows.push_back({"sitb_hi_" + ax + "_" + tag,
                        {{var_c(s, b), 1.0}, {var_l(s, b), 0.5}},
                        Sense::LE,
                        L});
      q.rows.push_back({"wlb_" + ax + "_" + tag,
                        {{var_l(s, b), -1.0}},
                        Sense::LE,
                        -bounds.lb(b, s)});
    }
  return q;
}

GroundSet ground_set_bounds(int i, int j, const BoxBounds& bounds, double Lx,
                            double Ly) {
  GroundSet q = ground_set_lb(i, j, bounds, Lx, Ly);
  for (int b : {i, j})
    for (Axis s : kAxes) {
      std::string tag = std::string(axis_name(s)) + "_" + std::to_string(b) +
                        "_" + std::to_string(i) + "_" + std::to_string(j);
      q.rows.push_back({"wub_" + tag,
                        {{var_l(s, b), 1.0}},
                        Sense::LE,
                        bounds.ub(b, s)});
    }
  return q;
}

MilpModel pairwise_standalone_model(FormulationKind kind, int i, int j,
                                    const BoxBounds& bounds, double Lx,
                                    double Ly, SitbMode sitb) {
  MilpModel model;
  for (int b : {i, j})
    for (Axis s : kAxes) {
      double L = s == Axis::X ? Lx : Ly;
      model.add_var(var_c(s, b), 0.0, L);
      model.add_var(var_l(s, b), 0.0, L);
    }
  ModelFragment f = pairwise_model(kind, i, j, bounds, Lx, Ly, sitb);
  for (const Variable& v : f.vars)
    model.add_var(v.name, v.lb, v.ub, v.kind, v.branch_priority);
  for (const std::string& b : f.binaries)
    if (!model.has_var(b)) model.add_var(b, 0.0, 1.0, VarKind::Binary);
  for (const NamedRow& r : f.rows) model.add_row(r);
  return model;
}

std::vector<NamedRow> sequence_pair_globals(int n) {
  std::vector<NamedRow> rows;
  if (n < 3) return rows;
  // w-hat flips orientation for p > q: w_hat(p,q) = w(p,q) if p < q,
  // else 1 - w(q,p). Row: sum of three w-hats <= 2 for every ordered triple.
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c) {
        if (a == b || a == c || b == c) continue;
        for (int k = 1; k <= 2; ++k) {
          NamedRow row;
          row.name = "sp_tri_" + std::to_string(k) + "_" + std::to_string(a) +
                     "_" + std::to_string(b) + "_" + std::to_string(c);
          row.sense = Sense::LE;
          row.rhs = 2.0;
          for (auto [p, q] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}}) {
            if (p < q) {
              row.terms.push_back({var_w(k, p, q), 1.0});
            } else {
              row.terms.push_back({var_w(k, q, p), -1.0});
              row.rhs -= 1.0;
            }
          }
          rows.push_back(std::move(row));
        }
      }
  return rows;
}

std::vector<NamedRow> area_outer_approx(int box, double area,
                                        const BoxBounds& bounds, int k) {
  std::vector<NamedRow> rows;
  if (k <= 0) return rows;
  double lo = bounds.lb(box, Axis::X);
  double hi = bounds.ub(box, Axis::X);
  for (int t = 0; t < k; ++t) {
    double frac = k == 1 ? 0.5 : static_cast<double>(t) / (k - 1);
    double at = lo * std::pow(hi / lo, frac);
    // Tangent to l_y = area / l_x at l_x = at.
    rows.push_back({"area_" + std::to_string(box) + "_t" + std::to_string(t),
                    {{var_l(Axis::X, box), area / (at * at)},
                     {var_l(Axis::Y, box), 1.0}},
                    Sense::GE,
                    2.0 * area / at});
  }
  return rows;
}

NboxModel assemble_nbox(const FlpInstance& instance,
                        const AssemblyOptions& options) {
  instance.validate();
  if (instance.num_boxes() < 1)
    throw ModelError("assemble_nbox needs at least one box");
  BoxBounds bounds = derive_bounds(instance);
  double Lx = instance.floor_x, Ly = instance.floor_y;

  NboxModel out;
  out.kind = options.kind;
  out.area_tangents = options.area_tangents;
  MilpModel& model = out.model;

  int n = instance.num_boxes();
  for (int b = 1; b <= n; ++b)
    for (Axis s : kAxes) {
      model.add_var(var_c(s, b), 0.0, instance.floor(s));
      model.add_var(var_l(s, b), bounds.lb(b, s), bounds.ub(b, s));
    }

  // Aggregated stay-on-floor rows, one copy per box.
  if (options.sitb == SitbMode::AsCuts) {
    for (int b = 1; b <= n; ++b)
      for (Axis s : kAxes) {
        std::string ax = axis_name(s);
        model.add_row("sitb_lo_" + ax + "_" + std::to_string(b),
                      {{model.var(var_l(s, b)), 0.5},
                       {model.var(var_c(s, b)), -1.0}},
                      Sense::LE, 0.0);
        model.add_row("sitb_hi_" + ax + "_" + std::to_string(b),
                      {{model.var(var_c(s, b)), 1.0},
                       {model.var(var_l(s, b)), 0.5}},
                      Sense::LE, instance.floor(s));
      }
  }

  for (int b = 1; b <= n; ++b)
    for (const NamedRow& r :
         area_outer_approx(b, instance.boxes[b - 1].area, bounds,
                           options.area_tangents))
      model.add_row(r);
  int refine_id = 0;
  for (auto [b, at] : options.extra_area_tangents) {
    double area = instance.boxes[b - 1].area;
    model.add_row("area_" + std::to_string(b) + "_r" +
                      std::to_string(refine_id++),
                  {{model.var(var_l(Axis::X, b)), area / (at * at)},
                   {model.var(var_l(Axis::Y, b)), 1.0}},
                  Sense::GE, 2.0 * area / at);
  }

  // Branch priority: rank of the pair's cost, descending; the highest-cost
  // pair's binaries branch first.
  auto pairs = instance.pairs();
  std::vector<int> order(pairs.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.cost(pairs[a].first, pairs[a].second) >
           instance.cost(pairs[b].first, pairs[b].second);
  });
  std::vector<int> priority(pairs.size());
  for (size_t rank = 0; rank < order.size(); ++rank)
    priority[order[rank]] = static_cast<int>(order.size() - rank);

  for (size_t k = 0; k < pairs.size(); ++k) {
    auto [i, j] = pairs[k];
    ModelFragment f =
        pairwise_model(options.kind, i, j, bounds, Lx, Ly, options.sitb);
    for (const Variable& v : f.vars)
      model.add_var(v.name, v.lb, v.ub, v.kind, v.branch_priority);
    for (const std::string& b : f.binaries)
      model.add_var(b, 0.0, 1.0, VarKind::Binary, priority[k]);
    for (const NamedRow& r : f.rows) model.add_row(r);
    PairInfo info;
    info.i = i;
    info.j = j;
    info.binaries = f.binaries;
    info.codes = f.codes;
    out.pairs.push_back(std::move(info));
  }

  if (options.kind == FormulationKind::SequencePair)
    for (const NamedRow& r : sequence_pair_globals(n)) model.add_row(r);

  // Objective linearization and objective.
  for (auto [i, j] : pairs) {
    double p = instance.cost(i, j);
    for (Axis s : kAxes) {
      int d = model.add_var(var_d(s, i, j), 0.0, instance.floor(s));
      std::string ax = axis_name(s);
      std::string tag = pair_tag(i, j);
      model.add_row("objlin_" + ax + "_" + tag + "_a",
                    {{model.var(var_c(s, i)), 1.0},
                     {model.var(var_c(s, j)), -1.0},
                     {d, -1.0}},
                    Sense::LE, 0.0);
      model.add_row("objlin_" + ax + "_" + tag + "_b",
                    {{model.var(var_c(s, j)), 1.0},
                     {model.var(var_c(s, i)), -1.0},
                     {d, -1.0}},
                    Sense::LE, 0.0);
      if (p != 0.0) model.set_objective(d, p);
    }
  }

  apply_cuts(out, instance, bounds, options);
  return out;
}

AreaRefineResult solve_with_area_refinement(const FlpInstance& instance,
                                            AssemblyOptions options,
                                            const MilpLimits& limits,
                                            int max_rounds, double area_tol) {
  BoxBounds bounds = derive_bounds(instance);
  AreaRefineResult out;
  for (out.rounds = 0; out.rounds <= max_rounds; ++out.rounds) {
    out.nbox = assemble_nbox(instance, options);
    out.result = solve_milp(out.nbox.model, limits);
    if (out.result.status != MilpStatus::Optimal || !out.result.incumbent)
      return out;
    Layout lay = extract_layout(instance, out.nbox.model, *out.result.incumbent);
    bool clean = true;
    for (int b = 1; b <= instance.num_boxes(); ++b) {
      const auto& p = lay.boxes[b - 1];
      double area = instance.boxes[b - 1].area;
      if (p.lx * p.ly < area - area_tol) {
        double at = std::clamp(p.lx, bounds.lb(b, Axis::X),
                               bounds.ub(b, Axis::X));
        options.extra_area_tangents.push_back({b, at});
        clean = false;
      }
    }
    if (clean) return out;
  }
  return out;
}

Layout extract_layout(const FlpInstance& instance, const MilpModel& model,
                      const std::vector<double>& x) {
  Layout layout;
  layout.boxes.resize(instance.num_boxes());
  for (int b = 1; b <= instance.num_boxes(); ++b) {
    Layout::BoxPlacement& p = layout.boxes[b - 1];
    p.cx = x[model.var(var_c(Axis::X, b))];
    p.cy = x[model.var(var_c(Axis::Y, b))];
    p.lx = x[model.var(var_l(Axis::X, b))];
    p.ly = x[model.var(var_l(Axis::Y, b))];
  }
  for (auto [i, j] : instance.pairs()) {
    std::string dx = var_d(Axis::X, i, j), dy = var_d(Axis::Y, i, j);
    if (model.has_var(dx))
      layout.d[{i, j}] = {x[model.var(dx)], x[model.var(dy)]};
  }
  return layout;
}

FixtureModels fixture_models() {
  FixtureModels out;
  // Two-variable disjunction with the extra common row x2 <= x1 + 1/2 either
  // imposed afterwards (weak) or folded into the branch strengthening
  // (strong: 1 + x2 <= x1 + (3/2) v1).
  auto base_m2 = [](bool strong) {
    MilpModel m;
    m.add_var("x1", 0.0, 2.0);
    m.add_var("x2", 0.0, 2.0);
    m.add_var("v1", 0.0, 1.0, VarKind::Binary);
    m.add_var("v2", 0.0, 1.0, VarKind::Binary);
    int x1 = 0, x2 = 1, v1 = 2, v2 = 3;
    m.add_row("r1", {{x2, 1.0}, {v1, 2.0}, {x1, 1.0}}, Sense::LE, 3.0);
    m.add_row("r2a", {{x1, -1.0}, {v1, -1.0}}, Sense::LE, -1.0);
    m.add_row("r2b", {{x1, 1.0}, {v1, 1.0}}, Sense::LE, 2.0);
    if (strong)
      m.add_row("r3", {{x2, 1.0}, {x1, -1.0}, {v1, -1.5}}, Sense::LE, -1.0);
    else
      m.add_row("r3", {{x2, 1.0}, {x1, -1.0}, {v1, -2.0}}, Sense::LE, -1.0);
    m.add_row("r4", {{v1, 1.0}, {v2, 1.0}}, Sense::EQ, 1.0);
    m.add_row("common", {{x2, 1.0}, {x1, -1.0}}, Sense::LE, 0.5);
    return m;
  };
  out.m2_weak = base_m2(false);
  out.m2_strong = base_m2(true);

  // One-dimensional two-branch disjunction with |x1 - 2| objective; folding
  // the linearization into the branches lifts the LP value from 0 to 1.
  auto base_m3 = [](bool strong) {
    MilpModel m;
    m.add_var("x1", 0.0, 4.0);
    m.add_var("y1", 0.0, 6.0);
    m.add_var("v1", 0.0, 1.0, VarKind::Binary);
    m.add_var("v2", 0.0, 1.0, VarKind::Binary);
    int x1 = 0, y1 = 1, v1 = 2, v2 = 3;
    m.add_row("blo", {{x1, -1.0}, {v1, -3.0}}, Sense::LE, -3.0);
    m.add_row("bhi", {{x1, 1.0}, {v1, 3.0}}, Sense::LE, 4.0);
    m.add_row("sum", {{v1, 1.0}, {v2, 1.0}}, Sense::EQ, 1.0);
    if (strong) {
      m.add_row("abs_a", {{x1, 1.0}, {v1, 2.0}, {y1, -1.0}}, Sense::LE, 2.0);
      m.add_row("abs_b", {{x1, -1.0}, {v1, -2.0}, {y1, -1.0}}, Sense::LE, -4.0);
    } else {
      m.add_row("abs_a", {{x1, 1.0}, {y1, -1.0}}, Sense::LE, 2.0);
      m.add_row("abs_b", {{x1, -1.0}, {y1, -1.0}}, Sense::LE, -2.0);
    }
    m.set_objective(y1, 1.0);
    return m;
  };
  out.m3_weak = base_m3(false);
  out.m3_strong = base_m3(true);
  return out;
}

}  // namespace flp
