#include "flp/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace flp {

void Path::validate() const {
  if (boxes.size() < 3) throw ModelError("path needs at least one interior box");
  std::set<int> seen(boxes.begin(), boxes.end());
  if (seen.size() != boxes.size())
    throw ModelError("path boxes must be distinct");
}

namespace {

std::string tag2(int i, int j) {
  return std::to_string(i) + "_" + std::to_string(j);
}

std::string axtag(Axis s, int p, int q) {
  return std::string(axis_name(s)) + "_" + tag2(p, q);
}

double floor_of(Axis s, double Lx, double Ly) { return s == Axis::X ? Lx : Ly; }

}  // namespace

std::vector<LinearCut> ub_cuts(int i, int j, const BoxBounds& bounds,
                               double Lx, double Ly) {
  std::vector<LinearCut> cuts;
  for (Axis s : kAxes) {
    double L = floor_of(s, Lx, Ly);
    for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
      // c_p + ub_q (1 - z_qp) >= l_p/2 + l_q
      double ubq = bounds.ub(q, s);
      cuts.push_back({"cut_ub1_" + axtag(s, p, q),
                      {{var_c(s, p), 1.0},
                       {var_z(s, q, p), -ubq},
                       {var_l(s, p), -0.5},
                       {var_l(s, q), -1.0}},
                      Sense::GE,
                      -ubq});
    }
    // Packing row on the opposite axis, gated and scaled by
    // ub_i + ub_j - L > 0:  D (z^r_ij + z^r_ji) >= l^s_i + l^s_j - L^s.
    double ubsum = bounds.ub(i, s) + bounds.ub(j, s);
    if (L < ubsum) {
      Axis r = other_axis(s);
      double d = ubsum - L;
      cuts.push_back({"cut_ub2_" + axtag(r, i, j),
                      {{var_z(r, i, j), d},
                       {var_z(r, j, i), d},
                       {var_l(s, i), -1.0},
                       {var_l(s, j), -1.0}},
                      Sense::GE,
                      -L});
    }
  }
  return cuts;
}

std::vector<LinearCut> objective_cuts(int i, int j, const BoxBounds& bounds,
                                      double Lx, double Ly) {
  std::vector<LinearCut> cuts;
  for (Axis s : kAxes) {
    double L = floor_of(s, Lx, Ly);
    std::string d = var_d(s, i, j);
    // d >= (l_i + l_j)/2 - L (1 - z_ij - z_ji)
    cuts.push_back({"cut_obj1_" + axtag(s, i, j),
                    {{d, 1.0},
                     {var_l(s, i), -0.5},
                     {var_l(s, j), -0.5},
                     {var_z(s, i, j), -L},
                     {var_z(s, j, i), -L}},
                    Sense::GE,
                    -L});
    for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
      double lbp = bounds.lb(p, s), lbq = bounds.lb(q, s);
      // d >= c_p - c_q + l_p + lb_q (z_pq + z_qp) - L (1 - z_pq)
      cuts.push_back({"cut_obj2_" + axtag(s, p, q),
                      {{d, 1.0},
                       {var_c(s, p), -1.0},
                       {var_c(s, q), 1.0},
                       {var_l(s, p), -1.0},
                       {var_z(s, p, q), -lbq - L},
                       {var_z(s, q, p), -lbq}},
                      Sense::GE,
                      -L});
      // d >= c_p - c_q + (lb_p + lb_q) z_pq
      cuts.push_back({"cut_obj3_" + axtag(s, p, q),
                      {{d, 1.0},
                       {var_c(s, p), -1.0},
                       {var_c(s, q), 1.0},
                       {var_z(s, p, q), -(lbp + lbq)}},
                      Sense::GE,
                      0.0});
      // 2d >= l_p - L (1 - z_pq - z_qp) + lb_q (z_pq + z_qp)
      cuts.push_back({"cut_obj4_" + axtag(s, p, q),
                      {{d, 2.0},
                       {var_l(s, p), -1.0},
                       {var_z(s, p, q), -(L + lbq)},
                       {var_z(s, q, p), -(L + lbq)}},
                      Sense::GE,
                      -L});
    }
  }
  return cuts;
}

std::vector<LinearCut> multibox_cuts(const Path& path, const BoxBounds& bounds,
                                     double Lx, double Ly) {
  path.validate();
  Axis s = path.axis;
  double L = floor_of(s, Lx, Ly);
  int i = path.boxes.front(), j = path.boxes.back();
  int m = path.interior_count();
  double gamma = 0.0;
  for (int k = 1; k <= m; ++k) gamma += bounds.lb(path.boxes[k], s);

  std::string ptag = std::string(axis_name(s));
  for (int b : path.boxes) ptag += "_" + std::to_string(b);
  std::string d = var_d(s, std::min(i, j), std::max(i, j));
  double lbi = bounds.lb(i, s), lbj = bounds.lb(j, s);

  // gamma * M(z) with M(z) = 1 + sum_edges (z_e - 1) = sum_edges z_e - m.
  // The scaled chain sum joins the row's lhs and the constant -m part moves
  // to the rhs.
  auto add_chain = [&](LinearCut& cut, double scale) {
    for (size_t k = 0; k + 1 < path.boxes.size(); ++k)
      cut.terms.push_back(
          {var_z(s, path.boxes[k], path.boxes[k + 1]), scale * gamma});
    cut.rhs += scale * gamma * m;
  };

  std::vector<LinearCut> cuts;
  {
    LinearCut c{"cut_multi1_" + ptag,
                {{d, 1.0},
                 {var_l(s, i), -0.5},
                 {var_l(s, j), -0.5},
                 {var_z(s, i, j), -L},
                 {var_z(s, j, i), -L}},
                Sense::GE,
                -L};
    add_chain(c, -1.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi2_" + ptag,
                {{d, 1.0},
                 {var_c(s, i), -1.0},
                 {var_c(s, j), 1.0},
                 {var_l(s, i), -1.0},
                 {var_z(s, i, j), -lbj - L},
                 {var_z(s, j, i), -lbj}},
                Sense::GE,
                -L};
    add_chain(c, -1.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi3_" + ptag,
                {{d, 1.0},
                 {var_c(s, i), -1.0},
                 {var_c(s, j), 1.0},
                 {var_z(s, i, j), -(lbi + lbj)}},
                Sense::GE,
                0.0};
    add_chain(c, -1.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi4_" + ptag,
                {{d, 2.0},
                 {var_l(s, i), -1.0},
                 {var_z(s, i, j), -(L + lbj)},
                 {var_z(s, j, i), -(L + lbj)}},
                Sense::GE,
                -L};
    add_chain(c, -2.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi5_" + ptag,
                {{var_l(s, j), 0.5}, {var_z(s, i, j), lbi}, {var_c(s, j), -1.0}},
                Sense::LE,
                0.0};
    add_chain(c, 1.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi6_" + ptag,
                {{var_c(s, i), 1.0}, {var_l(s, i), 0.5}, {var_z(s, i, j), lbj}},
                Sense::LE,
                L};
    add_chain(c, 1.0);
    cuts.push_back(std::move(c));
  }
  {
    LinearCut c{"cut_multi7_" + ptag,
                {{var_c(s, i), 1.0},
                 {var_c(s, j), -1.0},
                 {var_l(s, i), 0.5},
                 {var_l(s, j), 0.5},
                 {var_z(s, i, j), L}},
                Sense::LE,
                L};
    add_chain(c, 1.0);
    cuts.push_back(std::move(c));
  }
  return cuts;
}

std::vector<LinearCut> tightened_sitb_cuts(int i, int j,
                                           const BoxBounds& bounds, double Lx,
                                           double Ly) {
  std::vector<LinearCut> cuts;
  for (Axis s : kAxes) {
    double L = floor_of(s, Lx, Ly);
    for (auto [p, q] : {std::pair{i, j}, std::pair{j, i}}) {
      double lbq = bounds.lb(q, s);
      cuts.push_back({"cut_tsitb_lo_" + axtag(s, p, q),
                      {{var_l(s, p), 0.5},
                       {var_z(s, q, p), lbq},
                       {var_c(s, p), -1.0}},
                      Sense::LE,
                      0.0});
      cuts.push_back({"cut_tsitb_hi_" + axtag(s, p, q),
                      {{var_c(s, p), 1.0},
                       {var_l(s, p), 0.5},
                       {var_z(s, p, q), lbq}},
                      Sense::LE,
                      L});
    }
  }
  return cuts;
}

std::vector<LinearCut> literature_cuts(int i, int j, const BoxBounds& bounds,
                                       double Lx, double Ly,
                                       LiteratureCutKind kind) {
  (void)Lx;
  (void)Ly;
  std::vector<LinearCut> cuts;
  for (Axis s : kAxes) {
    std::string d = var_d(s, i, j);
    if (kind == LiteratureCutKind::B2) {
      double half = 0.5 * (bounds.lb(i, s) + bounds.lb(j, s));
      cuts.push_back({"cut_b2_" + axtag(s, i, j),
                      {{d, 1.0},
                       {var_u(s, i, j), -half},
                       {var_u(s, j, i), -half}},
                      Sense::GE,
                      0.0});
    } else {
      // Width-sum coefficient. Truncating it to L/2 for wide boxes would
      // cut feasible layouts that overlap along s with combined width
      // beyond the floor while separated along the other axis.
      double coeff = 0.5 * (bounds.ub(i, s) + bounds.ub(j, s));
      cuts.push_back({"cut_v2_" + axtag(s, i, j),
                      {{d, 1.0},
                       {var_l(s, i), -0.5},
                       {var_l(s, j), -0.5},
                       {var_u(s, i, j), -coeff},
                       {var_u(s, j, i), -coeff}},
                      Sense::GE,
                      -coeff});
    }
  }
  return cuts;
}

std::vector<LinearCut> symmetry_breaking(const FlpInstance& instance,
                                         const BoxBounds& bounds) {
  int p = -1, q = -1;
  double best = 0.0;
  for (auto [i, j] : instance.pairs()) {
    double c = instance.cost(i, j);
    if (c > best) {
      best = c;
      p = i;
      q = j;
    }
  }
  std::vector<LinearCut> cuts;
  if (p < 0) return cuts;  // all costs zero: caller warns, nothing to fix
  for (Axis s : kAxes) {
    cuts.push_back({"cut_sym_c_" + std::string(axis_name(s)),
                    {{var_c(s, p), 1.0}, {var_c(s, q), -1.0}},
                    Sense::LE,
                    0.0});
    cuts.push_back({"cut_sym_z_" + std::string(axis_name(s)),
                    {{var_z(s, q, p), 1.0}},
                    Sense::LE,
                    0.0});
  }
  double minsep = 0.5 * std::min(bounds.lb(p, Axis::X) + bounds.lb(q, Axis::X),
                                 bounds.lb(p, Axis::Y) + bounds.lb(q, Axis::Y));
  cuts.push_back({"cut_sym_minsep",
                  {{var_c(Axis::X, q), 1.0},
                   {var_c(Axis::X, p), -1.0},
                   {var_c(Axis::Y, q), 1.0},
                   {var_c(Axis::Y, p), -1.0}},
                  Sense::GE,
                  minsep});
  return cuts;
}

namespace {

struct CodeVar {
  char family = 0;  // 'z' or 'u'
  Axis axis = Axis::X;
  int p = 0, q = 0;
};

bool parse_code_var(const std::string& name, CodeVar& out) {
  if (name.size() < 7) return false;
  if (name[0] != 'z' && name[0] != 'u') return false;
  if (name[1] != '_') return false;
  if (name[2] != 'x' && name[2] != 'y') return false;
  if (name[3] != '_') return false;
  size_t sep = name.find('_', 4);
  if (sep == std::string::npos) return false;
  out.family = name[0];
  out.axis = name[2] == 'x' ? Axis::X : Axis::Y;
  try {
    out.p = std::stoi(name.substr(4, sep - 4));
    out.q = std::stoi(name.substr(sep + 1));
  } catch (...) {
    return false;
  }
  return out.p > 0 && out.q > 0 && out.p != out.q;
}

// Slot index within a pair, order (y,i,j), (x,i,j), (y,j,i), (x,j,i).
int slot_of(const CodeVar& v) {
  bool fwd = v.p < v.q;
  if (v.axis == Axis::Y) return fwd ? 0 : 2;
  return fwd ? 1 : 3;
}

struct SlotAffine {
  double constant;
  double w1, w2;
};

// Affine images of (z_y_ij, z_x_ij, z_y_ji, z_x_ji) in the two-bit codes.
const SlotAffine kGraySlots[4] = {
    {1.0, -1.0, -1.0}, {0.0, 1.0, -1.0}, {-1.0, 1.0, 1.0}, {0.0, -1.0, 1.0}};
const SlotAffine kBbSlots[4] = {
    {1.0, -1.0, -1.0}, {-1.0, 1.0, 1.0}, {0.0, 1.0, -1.0}, {0.0, -1.0, 1.0}};

}  // namespace

LinearCut translate_cut(const LinearCut& z_cut, CodeTarget target) {
  if (z_cut.sense == Sense::EQ)
    throw TranslateError("cannot translate an equality cut: " + z_cut.name);
  double le_sign = z_cut.sense == Sense::LE ? 1.0 : -1.0;
  LinearCut out;
  out.name = z_cut.name;
  out.sense = z_cut.sense;
  out.rhs = z_cut.rhs;
  for (const NamedTerm& t : z_cut.terms) {
    CodeVar cv;
    if (!parse_code_var(t.var, cv) || cv.family != 'z') {
      out.terms.push_back(t);
      continue;
    }
    if (target != CodeTarget::Refined && le_sign * t.coef < -1e-12)
      throw TranslateError("cut " + z_cut.name +
                           " has a negative code coefficient on " + t.var +
                           " and cannot be translated");
    switch (target) {
      case CodeTarget::Refined:
        out.terms.push_back(t);
        break;
      case CodeTarget::Unary:
        out.terms.push_back({var_u(cv.axis, cv.p, cv.q), t.coef});
        break;
      case CodeTarget::Gray:
      case CodeTarget::BB: {
        int i = std::min(cv.p, cv.q), j = std::max(cv.p, cv.q);
        const SlotAffine& m = (target == CodeTarget::Gray
                                   ? kGraySlots
                                   : kBbSlots)[slot_of(cv)];
        auto b1 = target == CodeTarget::Gray ? var_w(1, i, j) : var_y(1, i, j);
        auto b2 = target == CodeTarget::Gray ? var_w(2, i, j) : var_y(2, i, j);
        if (m.w1 != 0.0) out.terms.push_back({b1, t.coef * m.w1});
        if (m.w2 != 0.0) out.terms.push_back({b2, t.coef * m.w2});
        out.rhs -= t.coef * m.constant;
        break;
      }
    }
  }
  return out;
}

LinearCut lift_cut(const LinearCut& u_cut) {
  // Per pair, one axis's u coefficients must be absent (all zero).
  std::map<std::pair<int, int>, std::pair<bool, bool>> axes_used;
  for (const NamedTerm& t : u_cut.terms) {
    CodeVar cv;
    if (!parse_code_var(t.var, cv) || cv.family != 'u' || t.coef == 0.0)
      continue;
    auto key = std::minmax(cv.p, cv.q);
    auto& [used_x, used_y] = axes_used[{key.first, key.second}];
    (cv.axis == Axis::X ? used_x : used_y) = true;
  }
  for (const auto& [pair, used] : axes_used)
    if (used.first && used.second)
      throw TranslateError("cut " + u_cut.name + " touches both axes of pair " +
                           tag2(pair.first, pair.second) +
                           " and cannot be lifted");
  LinearCut out = u_cut;
  for (NamedTerm& t : out.terms) {
    CodeVar cv;
    if (parse_code_var(t.var, cv) && cv.family == 'u')
      t.var = var_z(cv.axis, cv.p, cv.q);
  }
  return out;
}

std::vector<LinearCut> select_cut_subset(const FlpInstance& instance,
                                         const BoxBounds& bounds,
                                         CutLevel level, FormulationKind kind) {
  std::vector<LinearCut> cuts;
  if (level != CutLevel::VI && level != CutLevel::VI3) return cuts;
  int n = instance.num_boxes();
  if (n < 2) return cuts;
  double Lx = instance.floor_x, Ly = instance.floor_y;

  auto pairs = instance.pairs();
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    double ca = instance.cost(a.first, a.second);
    double cb = instance.cost(b.first, b.second);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  size_t take = std::min<size_t>(n, pairs.size());
  bool ru = kind == FormulationKind::RefinedUnary;
  for (size_t k = 0; k < take; ++k) {
    auto [i, j] = pairs[k];
    auto obj = objective_cuts(i, j, bounds, Lx, Ly);
    cuts.insert(cuts.end(), obj.begin(), obj.end());
    for (LinearCut& c : ub_cuts(i, j, bounds, Lx, Ly)) {
      bool packing = c.name.rfind("cut_ub2_", 0) == 0;
      if (!packing || ru) cuts.push_back(std::move(c));
    }
    if (ru) {
      auto ts = tightened_sitb_cuts(i, j, bounds, Lx, Ly);
      cuts.insert(cuts.end(), ts.begin(), ts.end());
    }
  }

  if (n >= 3) {
    struct Triplet {
      int a, b, c;
      double score;
    };
    std::vector<Triplet> trips;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        for (int c = b + 1; c <= n; ++c)
          trips.push_back({a, b, c,
                           instance.cost(a, b) + instance.cost(a, c) +
                               instance.cost(b, c)});
    std::stable_sort(trips.begin(), trips.end(), [](const Triplet& x,
                                                    const Triplet& y) {
      if (x.score != y.score) return x.score > y.score;
      return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });
    size_t tcount = std::min<size_t>(n, trips.size());
    for (size_t t = 0; t < tcount; ++t) {
      int abc[3] = {trips[t].a, trips[t].b, trips[t].c};
      int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      for (auto& pm : perm)
        for (Axis s : kAxes) {
          Path path{{abc[pm[0]], abc[pm[1]], abc[pm[2]]}, s};
          for (LinearCut& c : multibox_cuts(path, bounds, Lx, Ly)) {
            bool objective_family = c.name.rfind("cut_multi1_", 0) == 0 ||
                                    c.name.rfind("cut_multi2_", 0) == 0 ||
                                    c.name.rfind("cut_multi3_", 0) == 0 ||
                                    c.name.rfind("cut_multi4_", 0) == 0;
            if (!objective_family || level == CutLevel::VI3)
              cuts.push_back(std::move(c));
          }
        }
    }
  }
  return cuts;
}

namespace {

CodeTarget target_for(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::RefinedUnary: return CodeTarget::Refined;
    case FormulationKind::Unary:
    case FormulationKind::BigMUnary:
    case FormulationKind::Extended: return CodeTarget::Unary;
    case FormulationKind::GrayBinary:
    case FormulationKind::SequencePair: return CodeTarget::Gray;
    case FormulationKind::Bldp1: return CodeTarget::BB;
  }
  return CodeTarget::Refined;
}

// The big-M unary and extended formulations carry the unary codes in
// v_1..v_4 order; rename u slots accordingly.
void rename_u_to_v(LinearCut& cut) {
  for (NamedTerm& t : cut.terms) {
    CodeVar cv;
    if (!parse_code_var(t.var, cv) || cv.family != 'u') continue;
    int i = std::min(cv.p, cv.q), j = std::max(cv.p, cv.q);
    t.var = var_v(slot_of(cv) + 1, i, j);
  }
}

void apply_z_cut(NboxModel& nbox, const LinearCut& cut) {
  LinearCut applied = translate_cut(cut, target_for(nbox.kind));
  if (nbox.kind == FormulationKind::BigMUnary ||
      nbox.kind == FormulationKind::Extended)
    rename_u_to_v(applied);
  nbox.model.add_row(applied);
}

void apply_u_cut(NboxModel& nbox, const LinearCut& cut) {
  switch (nbox.kind) {
    case FormulationKind::Unary:
      nbox.model.add_row(cut);
      break;
    case FormulationKind::BigMUnary:
    case FormulationKind::Extended: {
      LinearCut renamed = cut;
      rename_u_to_v(renamed);
      nbox.model.add_row(renamed);
      break;
    }
    default:
      // Through the refined encoding, then down to the target codes.
      apply_z_cut(nbox, lift_cut(cut));
      break;
  }
}

}  // namespace

void apply_cuts(NboxModel& nbox, const FlpInstance& instance,
                const BoxBounds& bounds, const AssemblyOptions& options) {
  double Lx = instance.floor_x, Ly = instance.floor_y;
  if (options.cuts == CutLevel::Plus) {
    for (auto [i, j] : instance.pairs())
      for (LiteratureCutKind kind : {LiteratureCutKind::B2, LiteratureCutKind::V2})
        for (const LinearCut& c : literature_cuts(i, j, bounds, Lx, Ly, kind))
          apply_u_cut(nbox, c);
  } else if (options.cuts == CutLevel::VI || options.cuts == CutLevel::VI3) {
    for (const LinearCut& c :
         select_cut_subset(instance, bounds, options.cuts, options.kind))
      apply_z_cut(nbox, c);
  }
  if (options.symmetry)
    for (const LinearCut& c : symmetry_breaking(instance, bounds))
      apply_z_cut(nbox, c);
}

}  // namespace flp
