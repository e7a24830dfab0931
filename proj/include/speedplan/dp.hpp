#ifndef SPEEDPLAN_DP_HPP_
#define SPEEDPLAN_DP_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "speedplan/feasibility.hpp"
#include "speedplan/model.hpp"

namespace speedplan {

/// The four tagged speeds a state can take at step j: the corridor floor
/// y_j, the corridor ceiling z_j, and the two reference speeds.
enum class SpeedTag : int { Ymin = 0, Zmax = 1, WPlus = 2, WMinus = 3 };
inline constexpr int kNumTags = 4;

struct PlanOptions {
  double epsilon = kBoundsEpsilon;           // tightening stop threshold
  int max_iterations = kMaxTighteningIterations;
  double tol_feas = kTolFeas;                // transition admission slack
  double tol_root = kTolRoot;
  double epsilon_speed = kEpsilonSpeed;      // 1/sqrt(2w) clamp
};

/// Value and predecessor tables over the (step, tag) state lattice.
/// States are stored densely (n x 4); an absent or unreached state holds
/// +infinity. Predecessors more than one step back encode null-force moves.
struct DpTables {
  std::size_t n = 0;
  std::vector<double> value;              // n*4, +inf when unreached
  std::vector<std::int32_t> pred_step;    // n*4, -1 when none
  std::vector<std::int8_t> pred_tag;      // n*4
  std::vector<double> state_speed;        // n*4, NaN when not instantiated
  std::vector<std::uint8_t> live;         // n*4, state instantiated
  std::size_t states_expanded = 0;
  int final_tag = -1;                     // best tag at step n-1, -1 if none

  static std::size_t cell(std::size_t j, SpeedTag t) {
    return j * kNumTags + static_cast<std::size_t>(t);
  }
  double value_at(std::size_t j, SpeedTag t) const { return value[cell(j, t)]; }
  bool reachable(std::size_t j, SpeedTag t) const {
    return value_at(j, t) < std::numeric_limits<double>::infinity();
  }
  double final_value() const {
    return final_tag < 0 ? std::numeric_limits<double>::infinity()
                         : value_at(n - 1, static_cast<SpeedTag>(final_tag));
  }
};

struct PlanResult {
  SpeedProfile profile;
  double dp_value = 0.0;            // accumulated stage costs (F units)
  std::size_t states_expanded = 0;
  double wall_time = 0.0;           // [s]
};

enum class PlanStatus { Ok, Infeasible, NoDpPath };

struct PlanOutcome {
  PlanStatus status = PlanStatus::Infeasible;
  std::optional<PlanResult> result;
  std::optional<InfeasibilityWitness> witness;
  AssumptionReport assumptions;
  Bounds bounds;                    // tightened corridor (last iterates when infeasible)
};

/// True iff the transition w_j -> w_next over step j keeps w_next inside
/// [y_{j+1}, z_{j+1}] and the induced force inside the friction and power
/// caps, all within tol.
bool in_gamma(const VehicleParams& params, const PathGrid& grid,
              const Bounds& bounds, std::size_t j, double w_j, double w_next,
              double tol = kTolFeas);

/// Stage-cost terms the DP accumulates, exposed so reference searches can
/// reproduce its values exactly: every step pays
/// lambda*M*eta*gamma*w + 1/sqrt(2*max(w, eps)) at its origin speed, and a
/// forced step additionally pays (1-eta)*lambda*M*max(f, 0).
double dp_speed_cost(const VehicleParams& params, const Weights& weights,
                     double w, double epsilon_speed = kEpsilonSpeed);
double dp_force_cost(const VehicleParams& params, const Weights& weights,
                     double f);

/// Coasting recursion w_{s+1} = (1-h*gamma)*w_s - h*g*(sin a_s + c*cos a_s)
/// from node j, truncated at the first negative value. First entry is w_j.
std::vector<double> null_force_curve(const VehicleParams& params,
                                     const PathGrid& grid, std::size_t j,
                                     double w_j);

/// Largest i such that the null-force curve from (j, w_j) stays inside the
/// corridor at every node j..j+i (contiguous prefix, i <= n-j-2).
std::size_t eta_index(const VehicleParams& params, const PathGrid& grid,
                      const Bounds& bounds, std::size_t j, double w_j,
                      double tol = kTolFeas);

/// Null-force move offsets: i is listed when the tagged target at node
/// j+i+1 is reachable by one forced step from the curve value at node j+i.
struct IndexSets {
  std::vector<std::size_t> to_zmax;    // targets z_{j+i+1}
  std::vector<std::size_t> to_ymin;    // targets y_{j+i+1}
  std::vector<std::size_t> to_wplus;
  std::vector<std::size_t> to_wminus;
};

IndexSets index_sets(const VehicleParams& params, const PathGrid& grid,
                     const Bounds& bounds, const ReferenceSpeeds& refs,
                     std::size_t j, double w_j, double tol = kTolFeas);

/// Stage-swept relaxation over the four-speed lattice: single-step moves
/// plus null-force moves, processed in ascending step order.
DpTables dyn_prog(const VehicleParams& params, const PathGrid& grid,
                  const Weights& weights, const Bounds& bounds,
                  const PlanOptions& options = {});

/// Backward walk over the predecessor table; null-force predecessors replay
/// the coasting recursion forward. Throws std::logic_error on a broken
/// chain and std::runtime_error when no path reached the final state.
PlanResult build_solution(const VehicleParams& params, const PathGrid& grid,
                          const Weights& weights, const Bounds& bounds,
                          const DpTables& tables,
                          const PlanOptions& options = {});

/// End-to-end: validate, tighten bounds, run the DP and rebuild the
/// profile. The reported objective is always the direct evaluation on the
/// reconstructed profile.
PlanOutcome plan(const VehicleParams& params, const PathGrid& grid,
                 const Weights& weights, const PlanOptions& options = {});

/// Same, reusing an existing tightening result (bounds do not depend on
/// lambda, so sweeps share them across weights).
PlanOutcome plan_with_bounds(const VehicleParams& params, const PathGrid& grid,
                             const Weights& weights,
                             const TighteningResult& tightening,
                             const PlanOptions& options = {});

}  // namespace speedplan

#endif  // SPEEDPLAN_DP_HPP_
