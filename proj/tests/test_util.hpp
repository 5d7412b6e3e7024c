#pragma once

#include <random>

#include "flp/instance.hpp"

namespace flp::testutil {

// Seeded random instance on a 10x10 floor: areas in [1,9], aspects in [1,6],
// strictly positive costs.
inline FlpInstance random_instance(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> area(1.0, 9.0);
  std::uniform_real_distribution<double> aspect(1.0, 6.0);
  std::uniform_real_distribution<double> cost(0.1, 5.0);
  FlpInstance inst;
  inst.name = "rand" + std::to_string(seed) + "_" + std::to_string(n);
  inst.floor_x = inst.floor_y = 10.0;
  for (int i = 1; i <= n; ++i) inst.boxes.push_back({i, area(rng), aspect(rng)});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) inst.costs[{i, j}] = cost(rng);
  return inst;
}

// The two-box toy: 10x10 floor, both boxes area 4 aspect 4, cost 1.
inline FlpInstance toy2() {
  FlpInstance inst;
  inst.name = "toy2";
  inst.floor_x = inst.floor_y = 10.0;
  inst.boxes = {{1, 4.0, 4.0}, {2, 4.0, 4.0}};
  inst.costs[{1, 2}] = 1.0;
  return inst;
}

inline FlpInstance toy3() {
  FlpInstance inst;
  inst.name = "toy3";
  inst.floor_x = inst.floor_y = 10.0;
  inst.boxes = {{1, 4.0, 4.0}, {2, 2.0, 3.0}, {3, 6.0, 2.0}};
  inst.costs[{1, 2}] = 1.0;
  inst.costs[{1, 3}] = 2.0;
  inst.costs[{2, 3}] = 0.5;
  return inst;
}

}  // namespace flp::testutil
