#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "speedplan/io.hpp"
#include "support/fixtures.hpp"

using namespace speedplan;

namespace {

const char* kMinimalScenario = R"json({
  "path": {
    "s_m": [0.0, 400.0],
    "slope": [0.0, 0.0],
    "v_max": [150.0, 150.0],
    "v_max_unit": "km/h"
  },
  "step_m": 0.2
})json";

}  // namespace

TEST_CASE("minimal scenario with unit conversions and defaults") {
  const Scenario sc = load_scenario(kMinimalScenario);
  CHECK(sc.vehicle.mass == 1365.0);       // bundled preset
  CHECK(sc.vehicle.power_max == 87e3);
  CHECK(sc.v_max[0] == doctest::Approx(150.0 / 3.6).epsilon(1e-12));
  CHECK(sc.w_in == 0.0);
  CHECK(sc.w_fin == 0.0);
  CHECK(sc.weights.lambda == 5e-4);

  const ResampledScenario rs = resample(sc);
  CHECK(rs.grid.size() == 2001);  // 400 m at 0.2 m steps
  for (const double w : rs.grid.w_max)
    CHECK(w == doctest::Approx(868.0555555555555).epsilon(1e-12));
}

TEST_CASE("slope units") {
  SUBCASE("percent grade") {
    const Scenario sc = load_scenario(R"({
      "path": {"s_m": [0, 10], "slope": [10.0, 10.0], "slope_unit": "percent",
               "v_max": [20, 20]},
      "step_m": 1.0
    })");
    CHECK(sc.alpha[0] == doctest::Approx(std::atan(0.1)).epsilon(1e-15));
  }
  SUBCASE("degrees") {
    const Scenario sc = load_scenario(R"({
      "path": {"s_m": [0, 10], "slope": [45.0, 45.0], "slope_unit": "deg",
               "v_max": [20, 20]},
      "step_m": 1.0
    })");
    CHECK(sc.alpha[0] == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));
  }
  SUBCASE("unknown unit is rejected") {
    CHECK_THROWS_AS(load_scenario(R"({
      "path": {"s_m": [0, 10], "slope": [1, 1], "slope_unit": "gradians",
               "v_max": [20, 20]},
      "step_m": 1.0
    })"),
                    ScenarioError);
  }
}

TEST_CASE("boundary speeds convert to half-squared form") {
  const Scenario sc = load_scenario(R"({
    "path": {"s_m": [0, 100], "slope": [0, 0], "v_max": [30, 30]},
    "step_m": 0.5,
    "boundary": {"v_in": 36.0, "v_fin": 18.0, "unit": "km/h"}
  })");
  CHECK(sc.w_in == doctest::Approx(0.5 * 10.0 * 10.0).epsilon(1e-12));
  CHECK(sc.w_fin == doctest::Approx(0.5 * 5.0 * 5.0).epsilon(1e-12));
}

TEST_CASE("malformed scenarios carry diagnostics") {
  CHECK_THROWS_WITH_AS(load_scenario("{"), doctest::Contains("parse error"),
                       ScenarioError);
  CHECK_THROWS_WITH_AS(load_scenario(R"({"step_m": 1})"),
                       doctest::Contains("path"), ScenarioError);
  CHECK_THROWS_WITH_AS(load_scenario(R"({
    "path": {"s_m": [0, 10, 5], "slope": [0,0,0], "v_max": [20,20,20]},
    "step_m": 1
  })"),
                       doctest::Contains("strictly increasing"), ScenarioError);
  CHECK_THROWS_WITH_AS(resample(load_scenario(R"({
    "path": {"s_m": [0, 10], "slope": [0,0], "v_max": [20,20]},
    "step_m": 20
  })")),
                       doctest::Contains("exceeds the path length"),
                       ScenarioError);
}

TEST_CASE("resampling") {
  SUBCASE("constant inputs resample to a constant grid") {
    const Scenario sc = load_scenario(R"({
      "path": {"s_m": [0, 399.9], "slope": [0.01, 0.01], "v_max": [25, 25]},
      "step_m": 0.2
    })");
    const ResampledScenario rs = resample(sc);
    CHECK(rs.grid.size() == 2000);  // floor(399.9/0.2) + 1
    for (const double a : rs.grid.alpha) CHECK(a == 0.01);
    for (const double w : rs.grid.w_max) CHECK(w == 312.5);
  }
  SUBCASE("idempotent on already-uniform input") {
    const Scenario sc = load_scenario(R"({
      "path": {"s_m": [0.0, 0.5, 1.0, 1.5, 2.0],
               "slope": [0.00, 0.01, 0.02, 0.03, 0.04],
               "v_max": [10, 11, 12, 13, 14]},
      "step_m": 0.5
    })");
    const ResampledScenario rs = resample(sc);
    REQUIRE(rs.grid.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(rs.grid.w_max[k] ==
            doctest::Approx(0.5 * sc.v_max[k] * sc.v_max[k]).epsilon(1e-12));
    for (std::size_t k = 0; k + 1 < 5; ++k)
      CHECK(rs.grid.alpha[k] == doctest::Approx(sc.alpha[k]).epsilon(1e-12));
  }
  SUBCASE("breakpoint mid-cell interpolates over one cell") {
    const Scenario sc = load_scenario(R"({
      "path": {"s_m": [0.0, 0.95, 1.05, 3.0],
               "slope": [0, 0, 0, 0],
               "v_max": [10, 10, 20, 20]},
      "step_m": 0.5
    })");
    const ResampledScenario rs = resample(sc);
    // Nodes at 0.0 and 0.5 read 10 m/s, node 1.5 onward reads 20 m/s; the
    // node at 1.0 sits inside the ramp.
    CHECK(rs.grid.w_max[1] == 50.0);
    CHECK(rs.grid.w_max[3] == 200.0);
    CHECK(rs.grid.w_max[2] > 50.0);
    CHECK(rs.grid.w_max[2] < 200.0);
    const double v_mid = 10.0 + (1.0 - 0.95) / (1.05 - 0.95) * 10.0;
    CHECK(rs.grid.w_max[2] == doctest::Approx(0.5 * v_mid * v_mid).epsilon(1e-12));
  }
}

TEST_CASE("scenario echo is the identity") {
  const Scenario first = load_scenario(R"({
    "vehicle": {"mass_kg": 1500, "power_max_w": 90000, "eta": 0.5,
                "rolling_coeff": 0.01, "aero_kg_per_m": 0.42,
                "friction_mu": 0.6},
    "path": {"s_m": [0, 50, 120], "slope": [1, -2, 0.5], "slope_unit": "deg",
             "v_max": [90, 54, 72], "v_max_unit": "km/h"},
    "step_m": 0.4,
    "boundary": {"v_in": 5, "v_fin": 0, "unit": "m/s"},
    "lambda_s_per_j": 2e-3,
    "solver": {"epsilon": 1e-8, "oracle_levels": 128}
  })");
  const Scenario second = load_scenario(emit_scenario(first));
  CHECK(second.vehicle.mass == first.vehicle.mass);
  CHECK(second.vehicle.eta == first.vehicle.eta);
  CHECK(second.s == first.s);
  CHECK(second.alpha == first.alpha);
  CHECK(second.v_max == first.v_max);
  CHECK(second.h == first.h);
  CHECK(second.w_in == first.w_in);
  CHECK(second.w_fin == first.w_fin);
  CHECK(second.weights.lambda == first.weights.lambda);
  CHECK(second.solver.epsilon == first.solver.epsilon);
  CHECK(second.oracle.levels == first.oracle.levels);
}

TEST_CASE("result bundle emission") {
  const Instance inst = testsup::desk_instance(1, 40);
  const Weights weights{5e-4};
  const PlanOutcome outcome = plan(inst.params, inst.grid, weights);
  REQUIRE(outcome.status == PlanStatus::Ok);
  const ResultBundle bundle = make_bundle(inst.params, inst.grid, weights, outcome);

  SUBCASE("json arrays round-trip bit-exactly") {
    const std::string doc = emit_result_json(bundle);
    const auto parsed = nlohmann::json::parse(doc);
    const auto w = parsed["w"].get<std::vector<double>>();
    const auto f = parsed["f"].get<std::vector<double>>();
    const auto y = parsed["y"].get<std::vector<double>>();
    CHECK(w == bundle.w);
    CHECK(f == bundle.f);
    CHECK(y == bundle.y);
    CHECK(parsed["status"] == "ok");
    CHECK(parsed["objective_s"].get<double>() == bundle.objective);
  }

  SUBCASE("profile csv shape") {
    const std::string csv = emit_profile_csv(bundle);
    CHECK(csv.rfind("s,w,v,f,y,z\n", 0) == 0);
    const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == bundle.w.size() + 1);
    // Last row's force column is empty: ",," straddles it.
    const std::size_t last_line_start = csv.rfind('\n', csv.size() - 2) + 1;
    const std::string last_line = csv.substr(last_line_start);
    int commas = 0;
    std::size_t double_comma = std::string::npos;
    for (std::size_t i = 0; i < last_line.size(); ++i) {
      if (last_line[i] == ',') {
        ++commas;
        if (i + 1 < last_line.size() && last_line[i + 1] == ',')
          double_comma = i;
      }
    }
    CHECK(commas == 5);
    CHECK(double_comma != std::string::npos);
  }
}

TEST_CASE("two-node profile csv has two data rows") {
  PathGrid g = testsup::flat_grid(2, 0.2, 1000.0, 100.0, 100.1);
  const Weights weights{5e-4};
  const PlanOutcome outcome = plan(testsup::car(), g, weights);
  REQUIRE(outcome.status == PlanStatus::Ok);
  const ResultBundle bundle = make_bundle(testsup::car(), g, weights, outcome);
  const std::string csv = emit_profile_csv(bundle);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("pareto csv shape") {
  ParetoFront front;
  for (int i = 0; i < 5; ++i) {
    ParetoPoint p;
    p.lambda = 1e-6 * (i + 1);
    p.travel_time = 10.0 - i;
    p.energy = 100.0 + i;
    p.specific_energy = p.energy / 1365.0;
    p.feasible = i != 3;
    front.points.push_back(p);
  }
  const std::string csv = emit_pareto_csv(front);
  CHECK(csv.rfind("lambda,time_s,energy_J,specific_energy_J_per_kg,feasible\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find(",0\n") != std::string::npos);  // infeasible row flagged 0
}

TEST_CASE("numbers print with nine significant digits") {
  ResultBundle b;
  b.status = "ok";
  b.s = {0.0};
  b.w = {123.456789123456};
  b.v = {15.7110912837};
  b.f = {};
  b.y = {0.123456789123};
  b.z = {868.055555555};
  const std::string csv = emit_profile_csv(b);
  CHECK(csv.find("123.456789") != std::string::npos);
  CHECK(csv.find("0.123456789") != std::string::npos);
  CHECK(csv.find("868.055556") != std::string::npos);
}
