#include <doctest.h>

#include "flp/bb.hpp"
#include "flp/cuts.hpp"
#include "flp/oracle.hpp"
#include "test_util.hpp"

using namespace flp;

TEST_CASE("brute force on trivial instances") {
  FlpInstance one;
  one.floor_x = one.floor_y = 10.0;
  one.boxes = {{1, 4.0, 4.0}};
  BruteForceResult r1 = brute_force_optimum(one);
  CHECK(r1.feasible);
  CHECK(r1.value == doctest::Approx(0.0));

  BruteForceResult r2 = brute_force_optimum(testutil::toy2());
  CHECK(r2.feasible);
  CHECK(r2.value == doctest::Approx(1.0));

  FlpInstance free_pair = testutil::toy2();
  free_pair.costs.clear();
  BruteForceResult r3 = brute_force_optimum(free_pair);
  CHECK(r3.feasible);
  CHECK(r3.value == doctest::Approx(0.0));

  FlpInstance big;
  big.floor_x = big.floor_y = 10.0;
  for (int i = 1; i <= 5; ++i) big.boxes.push_back({i, 1.0, 1.0});
  CHECK_THROWS_AS(brute_force_optimum(big), ModelError);
}

TEST_CASE("the refined brute force agrees with the four-branch one") {
  for (int seed = 0; seed < 4; ++seed) {
    FlpInstance inst = testutil::random_instance(400 + seed, 3);
    BruteForceResult d4 = brute_force_optimum(inst, 8, false);
    BruteForceResult d8 = brute_force_optimum(inst, 8, true);
    REQUIRE(d4.feasible);
    REQUIRE(d8.feasible);
    CHECK(d4.value == doctest::Approx(d8.value).epsilon(1e-6));
  }
}

TEST_CASE("oracle layouts verify and report the same objective") {
  FlpInstance inst = testutil::toy3();
  BruteForceResult r = brute_force_optimum(inst);
  REQUIRE(r.feasible);
  FeasibilityReport rep = check_layout(inst, r.layout);
  CHECK(rep.feasible);
  CHECK(rep.objective == doctest::Approx(r.value).epsilon(1e-6));
}

TEST_CASE("check_layout verdicts") {
  FlpInstance inst = testutil::toy2();

  SUBCASE("two unit-ish boxes side by side") {
    Layout lay;
    lay.boxes = {{2.0, 5.0, 2.0, 2.0}, {5.0, 5.0, 2.0, 2.0}};
    FeasibilityReport rep = check_layout(inst, lay);
    CHECK(rep.feasible);
    CHECK(rep.objective == doctest::Approx(3.0));  // p=1 distance |2-5|
  }

  SUBCASE("overlapping boxes fail non-overlap with no branch") {
    Layout lay;
    lay.boxes = {{5.0, 5.0, 2.0, 2.0}, {5.5, 5.0, 2.0, 2.0}};
    FeasibilityReport rep = check_layout(inst, lay);
    CHECK(!rep.feasible);
    bool saw = false;
    for (const auto& c : rep.checks)
      if (c.what == "nonoverlap_1_2") {
        saw = true;
        CHECK(!c.ok);
        CHECK(c.detail == "no branch satisfied");
      }
    CHECK(saw);
  }

  SUBCASE("area shortfall is reported with its slack") {
    Layout lay;
    lay.boxes = {{2.0, 5.0, 1.95, 2.0}, {6.0, 5.0, 2.0, 2.0}};
    FeasibilityReport rep = check_layout(inst, lay);
    CHECK(!rep.feasible);
    for (const auto& c : rep.checks)
      if (c.what == "area_1") {
        CHECK(!c.ok);
        CHECK(c.slack == doctest::Approx(1.95 * 2.0 - 4.0));
      }
  }

  SUBCASE("doubly separated layouts satisfy two branches") {
    Layout lay;
    lay.boxes = {{2.0, 2.0, 2.0, 2.0}, {7.0, 7.0, 2.0, 2.0}};
    FeasibilityReport rep = check_layout(inst, lay);
    CHECK(rep.feasible);
    for (const auto& c : rep.checks)
      if (c.what == "nonoverlap_1_2") CHECK(c.detail == "branches d1,d2");
  }
}

TEST_CASE("feasible-point sampler composes with the checker") {
  FlpInstance inst = testutil::toy3();
  AssemblyOptions opt;
  opt.kind = FormulationKind::RefinedUnary;
  NboxModel nbox = assemble_nbox(inst, opt);

  CHECK(sample_feasible_points(nbox, 0, 1).empty());

  auto samples = sample_feasible_points(nbox, 25, 11);
  REQUIRE(samples.size() == 25);
  for (const FeasibleSample& s : samples) {
    CHECK(nbox.model.max_violation(s.point) <= 1e-7);
    Layout lay = extract_layout(inst, nbox.model, s.point);
    FeasibilityReport rep = check_layout(inst, lay, 1e-5);
    // The model carries the area constraint as a tangent relaxation, so
    // sampled points meet every check exactly except area, which may fall
    // short by at most the outer-approximation gap.
    for (const auto& c : rep.checks) {
      if (c.what.rfind("area_", 0) == 0) {
        int box = std::stoi(c.what.substr(5));
        CHECK(c.slack >= -0.06 * inst.boxes[box - 1].area);
      } else {
        CHECK(c.ok);
      }
    }
    // The checker's objective agrees with the model's linearized objective.
    double model_obj = 0.0;
    for (auto [i, j] : inst.pairs())
      model_obj += inst.cost(i, j) *
                   (s.point[nbox.model.var(var_d(Axis::X, i, j))] +
                    s.point[nbox.model.var(var_d(Axis::Y, i, j))]);
    CHECK(rep.objective == doctest::Approx(model_obj).epsilon(1e-6));
  }

  auto again = sample_feasible_points(nbox, 25, 11);
  for (size_t k = 0; k < samples.size(); ++k) {
    CHECK(again[k].code_choice == samples[k].code_choice);
    CHECK(again[k].point == samples[k].point);
  }
}

TEST_CASE("vertex enumeration on reference polytopes") {
  SUBCASE("unit 3-cube has 8 vertices") {
    Polytope p;
    p.vars = {"a", "b", "c"};
    for (const std::string& v : p.vars) {
      p.rows.push_back({v + "_lo", {{v, -1.0}}, Sense::LE, 0.0});
      p.rows.push_back({v + "_hi", {{v, 1.0}}, Sense::LE, 1.0});
    }
    CHECK(enumerate_vertices(p).size() == 8);
  }

  SUBCASE("standard 2-simplex has 3 vertices") {
    Polytope p;
    p.vars = {"a", "b", "c"};
    for (const std::string& v : p.vars)
      p.rows.push_back({v + "_lo", {{v, -1.0}}, Sense::LE, 0.0});
    p.rows.push_back(
        {"sum", {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}, Sense::EQ, 1.0});
    auto verts = enumerate_vertices(p);
    CHECK(verts.size() == 3);
  }

  SUBCASE("dimension guard") {
    Polytope p;
    for (int k = 0; k < 15; ++k) p.vars.push_back("x" + std::to_string(k));
    CHECK_THROWS_AS(enumerate_vertices(p), ModelError);
  }
}

TEST_CASE("single-axis unary polytope has integral code vertices") {
  // The idealness argument's one-axis system: every vertex has integral u
  // whenever lb_i + lb_j < L.
  for (int seed = 0; seed < 6; ++seed) {
    FlpInstance inst = testutil::random_instance(800 + seed, 2);
    BoxBounds b = derive_bounds(inst);
    if (b.lb(1, Axis::X) + b.lb(2, Axis::X) >= 10.0) continue;
    Polytope p = unary_single_axis_polytope(1, 2, b, Axis::X, 10.0);
    auto verts = enumerate_vertices(p);
    REQUIRE(!verts.empty());
    for (const auto& v : verts) {
      double uij = v[4], uji = v[5];
      CHECK(std::min(std::abs(uij), std::abs(1 - uij)) <= 1e-6);
      CHECK(std::min(std::abs(uji), std::abs(1 - uji)) <= 1e-6);
    }
  }
}
