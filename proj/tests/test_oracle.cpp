#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "speedplan/feasibility.hpp"
#include "speedplan/model.hpp"
#include "speedplan/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace speedplan;
using testsup::car;
using testsup::flat_grid;

namespace {

TighteningResult tighten(const VehicleParams& p, const PathGrid& g) {
  return compute_zy(p, g, EffectiveLimits::from(g));
}

}  // namespace

TEST_CASE("two nodes: the single forced step fixes the objective") {
  const PathGrid g = flat_grid(2, 0.2, 1000.0, 100.0, 100.5);
  const TighteningResult tight = tighten(car(), g);
  REQUIRE(tight.feasible());
  const Weights weights{5e-4};
  const double expected =
      direct_step_cost(car(), g, weights, 0, 100.0, 100.5);
  for (const int levels : {2, 37, 400}) {
    OracleConfig cfg;
    cfg.levels = levels;
    cfg.refine_rounds = 0;
    const OracleResult res = solve_grid(car(), g, weights, tight.bounds, cfg);
    REQUIRE(res.reachable);
    CHECK(res.objective == expected);
  }
}

TEST_CASE("three nodes, pure time: the interior level hugs the ceiling") {
  const PathGrid g = flat_grid(3, 0.2, 1000.0, 100.0, 100.0);
  const TighteningResult tight = tighten(car(), g);
  REQUIRE(tight.feasible());
  OracleConfig cfg;
  cfg.levels = 10000;
  cfg.refine_rounds = 0;
  const OracleResult res = solve_grid(car(), g, Weights{0.0}, tight.bounds, cfg);
  REQUIRE(res.reachable);
  const double cell = (tight.bounds.z[1] - tight.bounds.y[1]) / 9999.0;
  CHECK(res.profile.w[1] >= tight.bounds.z[1] - cell - 1e-12);
}

TEST_CASE("nested level grids never lose ground") {
  for (const std::uint64_t seed : {2, 5, 9}) {
    const Instance inst = testsup::desk_instance(seed, 40);
    const TighteningResult tight = tighten(inst.params, inst.grid);
    if (!tight.feasible()) continue;
    const Weights weights{5e-4};
    for (const int k : {10, 25, 60}) {
      OracleConfig coarse;
      coarse.levels = k;
      coarse.refine_rounds = 0;
      OracleConfig fine = coarse;
      fine.levels = 2 * k - 1;  // supersets the coarse levels exactly
      const OracleResult lo = solve_grid(inst.params, inst.grid, weights,
                                         tight.bounds, coarse);
      const OracleResult hi =
          solve_grid(inst.params, inst.grid, weights, tight.bounds, fine);
      if (lo.reachable) {
        REQUIRE(hi.reachable);
        CHECK(hi.objective <= lo.objective);
      }
    }
  }
}

TEST_CASE("refinement rounds are monotone and stay feasible") {
  const Instance inst = testsup::desk_instance(17, 80);
  const TighteningResult tight = tighten(inst.params, inst.grid);
  REQUIRE(tight.feasible());
  const Weights weights{5e-4};
  for (const int rounds : {0, 1, 2, 3}) {
    OracleConfig cfg;
    cfg.levels = 60;
    cfg.refine_rounds = rounds;
    const OracleResult res =
        solve_grid(inst.params, inst.grid, weights, tight.bounds, cfg);
    REQUIRE(res.reachable);
    REQUIRE(static_cast<int>(res.round_objectives.size()) == rounds + 1);
    for (std::size_t r = 1; r < res.round_objectives.size(); ++r)
      CHECK(res.round_objectives[r] <= res.round_objectives[r - 1]);
    CHECK(res.objective == res.round_objectives.back());
    CHECK(is_feasible_profile(inst.params, inst.grid, inst.limits,
                              res.profile.w));
    if (rounds >= 1) {
      CHECK(res.refine_drop ==
            res.round_objectives[rounds - 1] - res.round_objectives[rounds]);
      CHECK(res.grid_gap_estimate >= res.refine_drop);
    }
  }
}

TEST_CASE("small instances match exhaustive enumeration exactly") {
  struct Setup {
    std::size_t n;
    int levels;
    double slope;
  };
  for (const Setup setup : {Setup{5, 25, 0.0}, Setup{6, 12, 0.02},
                            Setup{7, 8, -0.02}, Setup{8, 6, 0.01}}) {
    PathGrid g = flat_grid(setup.n, 0.2, 868.0, 100.0, 100.0);
    g.alpha.assign(setup.n - 1, setup.slope);
    const TighteningResult tight = tighten(car(), g);
    REQUIRE(tight.feasible());
    const Weights weights{5e-4};
    OracleConfig cfg;
    cfg.levels = setup.levels;
    cfg.refine_rounds = 0;
    const OracleResult res = solve_grid(car(), g, weights, tight.bounds, cfg);
    const double brute = testsup::enumerate_grid_optimum(
        car(), g, weights, tight.bounds, setup.levels);
    REQUIRE(res.reachable);
    CHECK(res.objective == brute);
  }
}

TEST_CASE("parallel and serial sweeps produce identical tables") {
  const Instance inst = testsup::desk_instance(1, 120);
  const TighteningResult tight = tighten(inst.params, inst.grid);
  REQUIRE(tight.feasible());
  OracleConfig serial;
  serial.levels = 150;
  serial.parallel = false;
  OracleConfig parallel = serial;
  parallel.parallel = true;
  const OracleResult a =
      solve_grid(inst.params, inst.grid, Weights{5e-4}, tight.bounds, serial);
  const OracleResult b =
      solve_grid(inst.params, inst.grid, Weights{5e-4}, tight.bounds, parallel);
  REQUIRE(a.reachable);
  REQUIRE(b.reachable);
  CHECK(a.objective == b.objective);
  CHECK(a.profile.w == b.profile.w);
}

TEST_CASE("unreachable grids are reported, not invented") {
  // Raw box reachability check on an infeasible instance: final speed too
  // high for the path length.
  PathGrid g = flat_grid(3, 0.2, 1000.0, 0.0, 100.0);
  const EffectiveLimits lim = EffectiveLimits::from(g);
  Bounds raw;
  raw.y = lim.w_min;
  raw.z = lim.w_max;
  OracleConfig cfg;
  cfg.levels = 80;
  cfg.refine_rounds = 0;
  const OracleResult res = solve_grid(car(), g, Weights{5e-4}, raw, cfg);
  CHECK_FALSE(res.reachable);
  CHECK(res.round_objectives.empty());
}

TEST_CASE("relaxation mode optimum respects the dropped constraints") {
  // The box-only relaxation may only exploit speeds inside [y, z]; with the
  // solver assumptions in force its optimum stays force-feasible, which is
  // exactly what check_exactness certifies.
  SUBCASE("flat corridor") {
    const PathGrid g = flat_grid(40, 0.2, 300.0, 100.0, 100.0);
    const TighteningResult tight = tighten(car(), g);
    REQUIRE(tight.feasible());
    const AssumptionReport rep =
        check_assumptions(car(), g, Weights{5e-4}, &tight.bounds.z);
    REQUIRE(rep.all_hold());
    OracleConfig cfg;
    cfg.levels = 200;
    cfg.relax_forces = true;
    const OracleResult res =
        solve_grid(car(), g, Weights{5e-4}, tight.bounds, cfg);
    REQUIRE(res.reachable);
    const ExactnessReport exact = check_exactness(car(), g, res);
    CHECK(exact.ok);
    CHECK(exact.violations.empty());
  }
  SUBCASE("random desk instances") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 12 && checked < 5; ++seed) {
      const Instance inst = testsup::desk_instance(seed, 120);
      const TighteningResult tight = tighten(inst.params, inst.grid);
      if (!tight.feasible()) continue;
      const AssumptionReport rep = check_assumptions(
          inst.params, inst.grid, Weights{5e-4}, &tight.bounds.z);
      if (!rep.all_hold()) continue;
      OracleConfig cfg;
      cfg.levels = 150;
      cfg.relax_forces = true;
      const OracleResult res =
          solve_grid(inst.params, inst.grid, Weights{5e-4}, tight.bounds, cfg);
      if (!res.reachable) continue;
      ++checked;
      CHECK(check_exactness(inst.params, inst.grid, res).ok);
    }
    CHECK(checked >= 3);
  }
}
