#include <doctest.h>

#include "flp/bb.hpp"
#include "flp/formulations.hpp"
#include "flp/lp_format.hpp"
#include "test_util.hpp"

using namespace flp;

namespace {

bool models_equal(const MilpModel& a, const MilpModel& b) {
  if (a.num_vars() != b.num_vars() || a.num_rows() != b.num_rows()) return false;
  for (int v = 0; v < a.num_vars(); ++v) {
    const Variable &va = a.vars()[v], &vb = b.vars()[v];
    if (va.name != vb.name || va.kind != vb.kind) return false;
    if (va.lb != vb.lb || va.ub != vb.ub) return false;
    if (va.branch_priority != vb.branch_priority) return false;
    if (a.objective_coef(v) != b.objective_coef(v)) return false;
  }
  for (int r = 0; r < a.num_rows(); ++r) {
    const Constraint &ca = a.rows()[r], &cb = b.rows()[r];
    if (ca.sense != cb.sense || ca.rhs != cb.rhs) return false;
    if (ca.terms.size() != cb.terms.size()) return false;
    for (size_t t = 0; t < ca.terms.size(); ++t)
      if (ca.terms[t].var != cb.terms[t].var ||
          ca.terms[t].coef != cb.terms[t].coef)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("empty model exports and reimports") {
  MilpModel m;
  m.add_var("x", 0.0, 1.0);
  std::string text = export_lp(m);
  MilpModel back = import_lp(text);
  CHECK(models_equal(m, back));
}

TEST_CASE("one variable model round trips") {
  MilpModel m;
  int x = m.add_var("x", -1.5, 2.25);
  m.add_row("r1", {{x, 3.0}}, Sense::LE, 1.0);
  m.set_objective(x, -2.0);
  MilpModel back = import_lp(export_lp(m));
  CHECK(models_equal(m, back));
}

TEST_CASE("assembled model round trips structurally and by value") {
  FlpInstance inst = testutil::toy2();
  AssemblyOptions opt;
  opt.kind = FormulationKind::Unary;
  NboxModel nbox = assemble_nbox(inst, opt);
  std::string text = export_lp(nbox.model);
  MilpModel back = import_lp(text);
  CHECK(models_equal(nbox.model, back));

  SolveResult a = solve_milp(nbox.model);
  SolveResult b = solve_milp(back);
  REQUIRE(a.status == MilpStatus::Optimal);
  REQUIRE(b.status == MilpStatus::Optimal);
  CHECK(a.incumbent_value == doctest::Approx(b.incumbent_value).epsilon(1e-9));

  // Export is deterministic.
  CHECK(export_lp(back) == text);
}

TEST_CASE("cut provenance appears in exported row names") {
  FlpInstance inst = testutil::toy3();
  AssemblyOptions opt;
  opt.kind = FormulationKind::RefinedUnary;
  opt.cuts = CutLevel::VI;
  NboxModel nbox = assemble_nbox(inst, opt);
  std::string text = export_lp(nbox.model);
  CHECK(text.find("cut_obj3_x_1_2") != std::string::npos);
}
