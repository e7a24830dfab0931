#ifndef SPEEDPLAN_TESTS_FIXTURES_HPP_
#define SPEEDPLAN_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "speedplan/instance_gen.hpp"
#include "speedplan/model.hpp"

namespace testsup {

// Library defaults are the electric-car preset used throughout the tests.
inline speedplan::VehicleParams car() { return speedplan::VehicleParams{}; }

// Frictionless, dragless variant for degenerate-physics checks.
inline speedplan::VehicleParams bare_car() {
  speedplan::VehicleParams p;
  p.Gamma = 0.0;
  p.c = 0.0;
  return p;
}

inline speedplan::PathGrid flat_grid(std::size_t n, double h, double w_cap,
                                     double w_in, double w_fin) {
  speedplan::PathGrid g;
  g.h = h;
  g.w_max.assign(n, w_cap);
  g.alpha.assign(n - 1, 0.0);
  g.w_in = w_in;
  g.w_fin = w_fin;
  return g;
}

inline speedplan::Instance desk_instance(std::uint64_t seed,
                                         std::size_t n = 200) {
  speedplan::InstanceConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return speedplan::make_random_instance(cfg);
}

}  // namespace testsup

#endif  // SPEEDPLAN_TESTS_FIXTURES_HPP_
