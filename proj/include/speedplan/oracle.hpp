#ifndef SPEEDPLAN_ORACLE_HPP_
#define SPEEDPLAN_ORACLE_HPP_

#include <vector>

#include "speedplan/dp.hpp"
#include "speedplan/feasibility.hpp"
#include "speedplan/model.hpp"

namespace speedplan {

/// Dense speed-grid reference solver over the corridor [y, z]. Slow and
/// simple on purpose: it exists to cross-check the lattice DP.
struct OracleConfig {
  int levels = 400;            // K uniform levels per interior node
  int refine_rounds = 2;       // window halvings around the incumbent
  bool relax_forces = false;   // keep only the box constraints (relaxation mode)
  bool parallel = true;        // OpenMP over destination levels
  double tol = kTolFeas;
  double epsilon_speed = kEpsilonSpeed;
};

struct OracleResult {
  SpeedProfile profile;
  double objective = 0.0;          // direct objective of the best grid path [s]
  double refine_drop = 0.0;        // objective drop over the last refinement
  // Upper estimate of how far the grid optimum may sit above the true
  // optimum: the last refinement drop plus the cost of rounding a profile
  // of this shape onto the final grid (time curvature per node plus one
  // force-kink slack per monotone segment). The drop alone provably
  // understates the excess when coasting arcs are finer than a cell.
  double grid_gap_estimate = 0.0;
  bool reachable = false;          // some grid path reaches the final node
  std::vector<double> cell_width;  // final level spacing per node [m^2/s^2]
  std::vector<double> round_objectives;  // one entry per solve, non-increasing
};

/// Stage DP over K levels per node (boundary nodes pinned to w_in/w_fin),
/// transitions filtered through the force/power caps unless relax_forces is
/// set. Each refinement round halves every node's window around the
/// incumbent and keeps the incumbent as an extra level, so the objective
/// never increases across rounds.
OracleResult solve_grid(const VehicleParams& params, const PathGrid& grid,
                        const Weights& weights, const Bounds& bounds,
                        const OracleConfig& config = {});

/// One term of the discretized objective,
/// h * (lambda*M*max(eta*f, f) + 1/sqrt(2*max(w_s, eps))), in the exact
/// arithmetic order the grid DP accumulates. Exhaustive reference checks
/// sum this term to reproduce solve_grid values bit for bit.
double direct_step_cost(const VehicleParams& params, const PathGrid& grid,
                        const Weights& weights, std::size_t s, double w_s,
                        double w_next, double epsilon_speed = kEpsilonSpeed);

/// The per-node level sets of solve_grid's first round (uniform levels over
/// the corridor plus the tagged anchor speeds), for reference checks that
/// must enumerate exactly the same grid.
std::vector<std::vector<double>> initial_oracle_levels(
    const VehicleParams& params, const PathGrid& grid, const Weights& weights,
    const Bounds& bounds, const OracleConfig& config = {});

/// True iff any feasible path over a K-level grid on [box.y, box.z] reaches
/// the final node (boundary nodes pinned to w_in/w_fin). Pure reachability
/// with the same transition admission as solve_grid.
bool grid_reachable(const VehicleParams& params, const PathGrid& grid,
                    const Bounds& box, int levels, double tol = kTolFeas);

struct ExactnessReport {
  bool ok = false;
  std::vector<ConstraintViolation> violations;
};

/// Checks that an oracle profile (typically from relax_forces mode) stays
/// inside the force and power caps within tol plus the per-step allowance
/// implied by the final grid resolution.
ExactnessReport check_exactness(const VehicleParams& params,
                                const PathGrid& grid,
                                const OracleResult& result,
                                double tol = kTolFeas);

}  // namespace speedplan

#endif  // SPEEDPLAN_ORACLE_HPP_
