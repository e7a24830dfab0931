#ifndef SPEEDPLAN_IO_HPP_
#define SPEEDPLAN_IO_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "speedplan/dp.hpp"
#include "speedplan/model.hpp"
#include "speedplan/oracle.hpp"
#include "speedplan/pareto.hpp"

namespace speedplan {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed scenario, normalized to SI: slopes in rad, speed limits in m/s,
/// boundary speeds as half-squared speeds. Unit declarations in the source
/// document (deg / percent grade, km/h) are converted on load.
struct Scenario {
  VehicleParams vehicle;
  std::vector<double> s;       // sample positions [m], strictly increasing
  std::vector<double> alpha;   // slope per sample [rad]
  std::vector<double> v_max;   // speed limit per sample [m/s]
  double h = 0.2;              // resampling step [m]
  double w_in = 0.0;           // [m^2/s^2]
  double w_fin = 0.0;          // [m^2/s^2]
  Weights weights{5e-4};       // practical default trade-off
  PlanOptions solver;
  OracleConfig oracle;
};

/// Parses a scenario JSON document. Missing blocks fall back to defaults
/// (the bundled electric-car vehicle preset, zero boundary speeds).
/// Throws ScenarioError with a field diagnostic on malformed input.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Normalized SI echo of a scenario; load_scenario(emit_scenario(x)) == x.
std::string emit_scenario(const Scenario& scenario);

struct ResampledScenario {
  VehicleParams params;
  PathGrid grid;
  EffectiveLimits limits;
};

/// Projects the raw samples onto the uniform grid: n = floor(L/h) + 1
/// nodes, slope and speed limit linearly interpolated in s (speed limits on
/// v, then squared and halved). Throws ScenarioError when the path is
/// shorter than one step.
ResampledScenario resample(const Scenario& scenario);

/// Flattened planning output for serialization.
struct ResultBundle {
  std::string status;              // "ok" | "infeasible" | "no_dp_path"
  double lambda = 0.0;
  std::size_t n = 0;
  double h = 0.0;                  // [m]
  std::vector<double> s;           // node positions [m]
  std::vector<double> w;           // [m^2/s^2]
  std::vector<double> v;           // sqrt(2w) [m/s]
  std::vector<double> f;           // [m/s^2], size n-1
  std::vector<double> y, z;        // corridor [m^2/s^2]
  double objective = 0.0;
  double travel_time = 0.0;
  double energy = 0.0;
  double dp_value = 0.0;
  double wall_time = 0.0;
  std::size_t states_expanded = 0;
  int tightening_iterations = 0;
  bool assumptions_hold = false;
  AssumptionReport assumptions;
  std::optional<InfeasibilityWitness> witness;
};

ResultBundle make_bundle(const VehicleParams& params, const PathGrid& grid,
                         const Weights& weights, const PlanOutcome& outcome);

/// Single JSON object with stable field order; numeric arrays round-trip
/// bit-exactly through parse.
std::string emit_result_json(const ResultBundle& bundle);

/// Profile table `s,w,v,f,y,z`, one row per node, f empty on the last row.
/// 9 significant digits.
std::string emit_profile_csv(const ResultBundle& bundle);

/// Front table `lambda,time_s,energy_J,specific_energy_J_per_kg,feasible`.
std::string emit_pareto_csv(const ParetoFront& front);

}  // namespace speedplan

#endif  // SPEEDPLAN_IO_HPP_
