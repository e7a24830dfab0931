#ifndef SPEEDPLAN_MODEL_HPP_
#define SPEEDPLAN_MODEL_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace speedplan {

inline constexpr double kDefaultGravity = 9.81;  // [m/s^2]

/// Floor applied to w inside every 1/sqrt(2w) evaluation, so that profiles
/// starting or ending at standstill keep a finite time term. [m^2/s^2]
inline constexpr double kEpsilonSpeed = 1e-3;

/// Vehicle model parameters, all SI. Defaults describe a compact full
/// electric car (1365 kg, 87 kW, 70% regeneration) on dry asphalt.
struct VehicleParams {
  double mass = 1365.0;            // M [kg]
  double power_max = 87e3;         // P_max [W]
  double eta = 0.7;                // regeneration factor, 0 = no recovery [-]
  double c = 0.007;                // rolling-resistance coefficient [-]
  double Gamma = 0.399;            // aerodynamic coefficient [kg/m]
  double mu = 0.7;                 // tire-road friction coefficient [-]
  double g = kDefaultGravity;      // gravitational acceleration [m/s^2]

  /// Specific aerodynamic coefficient Gamma/M [1/m].
  double gamma() const { return Gamma / mass; }

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// Uniform arc-length grid: n nodes spaced h meters apart, n-1 steps.
/// Node quantities (w_max) have size n, step quantities (alpha) size n-1.
struct PathGrid {
  double h = 0.2;                  // arc-length step [m]
  std::vector<double> alpha;       // slope angle per step [rad], size n-1
  std::vector<double> w_max;       // speed-limit half-squared speed per node [m^2/s^2]
  double w_in = 0.0;               // boundary half-squared speeds [m^2/s^2]
  double w_fin = 0.0;

  std::size_t size() const { return w_max.size(); }
  void validate() const;
};

/// Box limits with the boundary conditions folded in: node 0 and node n-1
/// are pinned to w_in and w_fin, interior lower bounds are zero.
struct EffectiveLimits {
  std::vector<double> w_min;       // size n [m^2/s^2]
  std::vector<double> w_max;       // size n [m^2/s^2]

  static EffectiveLimits from(const PathGrid& grid);
};

/// Scalarization weight: seconds of travel time traded per Joule.
struct Weights {
  double lambda = 0.0;             // energy weight [s/J], >= 0
};

/// A candidate plan: half-squared speeds, induced specific forces, and the
/// objective decomposition. objective == lambda * energy + travel_time.
struct SpeedProfile {
  std::vector<double> w;           // [m^2/s^2], size n
  std::vector<double> f;           // specific force per step [m/s^2], size n-1
  double travel_time = 0.0;        // [s]
  double energy = 0.0;             // [J]
  double objective = 0.0;          // [s]
};

/// Stationary speeds of the per-step cost under sustained traction (w_plus)
/// and sustained regenerative braking (w_minus). Either may be +infinity
/// (lambda == 0, gamma == 0, or eta == 0 for w_minus).
struct ReferenceSpeeds {
  double w_plus = std::numeric_limits<double>::infinity();   // [m^2/s^2]
  double w_minus = std::numeric_limits<double>::infinity();  // [m^2/s^2]
};

/// Numeric margins and verdicts for the conditions the solver relies on.
/// Margins are the evaluated left-hand sides; the paired booleans are their
/// sign tests. A step whose condition was not applicable (reference speed
/// unbounded, or upper bound below w_plus) reports holds = true and
/// checked = false.
struct AssumptionReport {
  std::vector<double> a1_margin;       // per step, holds iff >= 0
  std::vector<bool> a1_holds;
  double cond1_margin = 0.0;           // holds iff > 0
  bool cond1_holds = false;
  std::vector<double> cond2_margin;    // per step, holds iff > 0 where checked
  std::vector<bool> cond2_holds;
  std::vector<bool> cond2_checked;
  std::vector<double> cond3_margin;    // per step, holds iff < 0 where checked
  std::vector<bool> cond3_holds;
  std::vector<bool> cond3_checked;
  double asscomb_margin = 0.0;         // holds iff < 0
  bool asscomb_holds = false;

  bool all_hold() const;
};

/// Specific force implied by the transition w_i -> w_next over step i:
/// f = (w_next - w_i)/h + gamma*w_i + g*(sin(alpha_i) + c*cos(alpha_i)).
/// Throws std::out_of_range if i >= n-1.
double force(const VehicleParams& params, const PathGrid& grid, std::size_t i,
             double w_i, double w_next);

/// Evaluates travel time, energy and the scalarized objective of a speed
/// vector. The time term clamps w at epsilon_speed, so zero boundary speeds
/// are fine. Throws std::invalid_argument on size mismatch or negative w.
SpeedProfile evaluate_objective(const VehicleParams& params,
                                const PathGrid& grid, const Weights& weights,
                                std::span<const double> w,
                                double epsilon_speed = kEpsilonSpeed);

/// w_plus = (2*lambda*M*gamma)^(-2/3), w_minus = (2*eta*lambda*M*gamma)^(-2/3).
/// Unbounded terms come back as +infinity; w_plus <= w_minus always.
ReferenceSpeeds reference_speeds(const VehicleParams& params,
                                 const Weights& weights);

/// Evaluates the step-size condition (a1), the acceleration margin at the
/// reference speeds (cond1-cond3) and the combined-sign condition (asscomb).
/// When upper bounds z are given, cond2 is only checked at steps whose bound
/// reaches w_plus; otherwise every step is checked.
AssumptionReport check_assumptions(const VehicleParams& params,
                                   const PathGrid& grid,
                                   const Weights& weights,
                                   const std::vector<double>* bounds_z = nullptr);

}  // namespace speedplan

#endif  // SPEEDPLAN_MODEL_HPP_
