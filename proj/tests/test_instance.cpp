#include <doctest.h>

#include "flp/instance.hpp"
#include "test_util.hpp"

using namespace flp;

TEST_CASE("derive_bounds follows the width bound formulas") {
  FlpInstance inst;
  inst.floor_x = inst.floor_y = 10.0;
  inst.boxes = {{1, 4.0, 4.0}, {2, 1.0, 1.0}, {3, 100.0, 1.0}};
  BoxBounds b = derive_bounds(inst);

  // ub = min{sqrt(4*4), 10} = 4, lb = 4/4 = 1
  CHECK(b.ub(1, Axis::X) == doctest::Approx(4.0));
  CHECK(b.lb(1, Axis::X) == doctest::Approx(1.0));
  // aspect 1 forces a unit square
  CHECK(b.ub(2, Axis::Y) == doctest::Approx(1.0));
  CHECK(b.lb(2, Axis::Y) == doctest::Approx(1.0));
  // box filling the floor axis: ub clipped at L
  CHECK(b.ub(3, Axis::X) == doctest::Approx(10.0));
  CHECK(b.lb(3, Axis::X) == doctest::Approx(10.0));
}

TEST_CASE("derive_bounds reports the box and axis that cannot fit") {
  FlpInstance inst;
  inst.floor_x = 10.0;
  inst.floor_y = 2.0;
  inst.boxes = {{1, 8.0, 100.0}};
  // On y: ub = min{sqrt(800), 2} = 2, lb = 8/2 = 4 > ub.
  CHECK_THROWS_WITH_AS(derive_bounds(inst),
                       doctest::Contains("axis y"), InstanceError);
}

TEST_CASE("bounds satisfy lb*ub = area and the aspect constraint") {
  for (int seed = 0; seed < 20; ++seed) {
    FlpInstance inst = testutil::random_instance(seed, 3);
    BoxBounds b = derive_bounds(inst);
    for (const BoxSpec& box : inst.boxes)
      for (Axis s : kAxes) {
        double lb = b.lb(box.id, s), ub = b.ub(box.id, s);
        CHECK(lb * ub == doctest::Approx(box.area));
        CHECK(lb <= ub + 1e-12);
        // A rectangle with widths (lb, ub) meets area and aspect.
        CHECK(lb * ub >= box.area - 1e-9);
        CHECK(ub / lb <= box.aspect + 1e-9);
        // Unclipped bounds bracket the square root of the area.
        if (ub < inst.floor(s) - 1e-12) {
          CHECK(lb <= std::sqrt(box.area) + 1e-9);
          CHECK(ub >= std::sqrt(box.area) - 1e-9);
        }
      }
  }
}

TEST_CASE("perturb_instance with gamma 0 keeps areas and costs") {
  FlpInstance inst = testutil::toy3();
  FlpInstance out = perturb_instance(inst, 0.0, 5.0, 7);
  for (int i = 0; i < 3; ++i) {
    CHECK(out.boxes[i].area == inst.boxes[i].area);
    CHECK(out.boxes[i].aspect == 5.0);
  }
  for (const auto& [key, p] : inst.costs) CHECK(out.costs.at(key) == p);
  CHECK(out.name == "toy3-0.0(5)");
}

TEST_CASE("perturb_instance is deterministic and positive") {
  FlpInstance inst = testutil::toy3();
  FlpInstance a = perturb_instance(inst, 0.2, 4.0, 123);
  FlpInstance b = perturb_instance(inst, 0.2, 4.0, 123);
  CHECK(write_instance(a) == write_instance(b));
  CHECK(a.name == "toy3-0.2(4)");

  FlpInstance c = perturb_instance(inst, 0.2, 4.0, 124);
  CHECK(write_instance(a) != write_instance(c));

  // Large gamma forces many redraw events; outputs stay strictly positive.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    FlpInstance wild = perturb_instance(inst, 3.0, 4.0, seed);
    for (const BoxSpec& box : wild.boxes) CHECK(box.area > 0.0);
    for (const auto& [key, p] : wild.costs) CHECK(p > 0.0);
  }
}

TEST_CASE("instance text round trip") {
  FlpInstance inst = testutil::random_instance(99, 3);
  std::string text = write_instance(inst);
  FlpInstance back = parse_instance(text);
  CHECK(back.name == inst.name);
  CHECK(back.floor_x == inst.floor_x);
  CHECK(back.boxes.size() == inst.boxes.size());
  for (size_t i = 0; i < inst.boxes.size(); ++i) {
    CHECK(back.boxes[i].area == inst.boxes[i].area);
    CHECK(back.boxes[i].aspect == inst.boxes[i].aspect);
  }
  CHECK(back.costs == inst.costs);
  CHECK(write_instance(back) == text);  // byte-identical second pass
}

TEST_CASE("instance parser reports malformed input") {
  CHECK_THROWS_AS(parse_instance("floor 10 10\nbox 1 4\n"), InstanceError);
  CHECK_THROWS_WITH_AS(parse_instance("floor 10 10\nbox 1 4 4\nbox 1 2 2\n"),
                       doctest::Contains("duplicate box id"), InstanceError);
  CHECK_THROWS_WITH_AS(
      parse_instance("floor 10 10\nbox 1 4 4\nbox 2 4 4\ncost 2 1 5.0\n"),
      doctest::Contains("i<j"), InstanceError);
  CHECK_THROWS_WITH_AS(
      parse_instance("floor 10 10\nbox 1 4 4\ncost 1 3 5.0\n"),
      doctest::Contains("unknown box"), InstanceError);
  CHECK_THROWS_AS(parse_instance("floor 10 10\nbox 2 4 4\n"), InstanceError);
}

TEST_CASE("minimal files parse") {
  FlpInstance one = parse_instance("floor 10 10\nbox 1 4 4\n");
  CHECK(one.num_boxes() == 1);
  CHECK(one.costs.empty());

  FlpInstance two = parse_instance(
      "# comment\nfloor 10 10\nbox 1 4 4\nbox 2 2 2 # trailing\ncost 1 2 1.5\n");
  CHECK(two.num_boxes() == 2);
  CHECK(two.cost(1, 2) == 1.5);
  CHECK(two.cost(2, 1) == 1.5);  // absent direction resolves to the pair
}

TEST_CASE("layout file round trip") {
  Layout lay;
  lay.boxes = {{1.5, 2.5, 2.0, 2.0}, {5.0, 2.5, 2.0, 2.0}};
  std::string text = write_layout(lay);
  Layout back = parse_layout(text, 2);
  CHECK(back.boxes[0].cx == 1.5);
  CHECK(back.boxes[1].lx == 2.0);
  CHECK_THROWS_AS(parse_layout("center 1 1 1\n", 2), InstanceError);
}
