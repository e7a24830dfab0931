#ifndef SPEEDPLAN_PARETO_HPP_
#define SPEEDPLAN_PARETO_HPP_

#include <span>
#include <vector>

#include "speedplan/dp.hpp"
#include "speedplan/model.hpp"

namespace speedplan {

struct ParetoPoint {
  double lambda = 0.0;           // [s/J]
  double travel_time = 0.0;      // [s]
  double energy = 0.0;           // [J]
  double specific_energy = 0.0;  // energy / mass [J/kg]
  double objective = 0.0;        // [s]
  bool feasible = false;
};

/// Points ordered by lambda ascending, one per sample (plus the optional
/// lambda = 0 point). Failed samples stay in the list with feasible = false.
struct ParetoFront {
  std::vector<ParetoPoint> points;
};

struct SweepConfig {
  double lambda_min = 1e-6;
  double lambda_max = 1.0;
  int samples = 45;
  bool log_spaced = true;
  bool prepend_zero = true;   // adds an explicit lambda = 0 point up front
  bool parallel = true;       // samples are independent plans
};

/// One plan per lambda sample; the bound tightening runs once and is shared
/// across samples since the constraints do not depend on lambda.
ParetoFront pareto_sweep(const VehicleParams& params, const PathGrid& grid,
                         const SweepConfig& config = {},
                         const PlanOptions& options = {});

/// Removes points weakly dominated in (travel_time, energy): both
/// coordinates no better and one strictly worse, or an exact duplicate of
/// an earlier point. Infeasible points are dropped. Idempotent.
std::vector<ParetoPoint> dominance_filter(std::span<const ParetoPoint> points);

}  // namespace speedplan

#endif  // SPEEDPLAN_PARETO_HPP_
