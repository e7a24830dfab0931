#ifndef SPEEDPLAN_FEASIBILITY_HPP_
#define SPEEDPLAN_FEASIBILITY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "speedplan/model.hpp"

namespace speedplan {

inline constexpr double kTolFeas = 1e-6;       // constraint residual slack
inline constexpr double kTolRoot = 1e-10;      // xi1 bisection width [m^2/s^2]
inline constexpr double kBoundsEpsilon = 1e-9; // tightening stop threshold
inline constexpr int kMaxTighteningIterations = 100000;

/// Tightened per-node corridor [y, z]. When the instance is feasible, y and
/// z are themselves feasible profiles and every feasible profile lies
/// between them component-wise.
struct Bounds {
  std::vector<double> y;   // lower vector [m^2/s^2]
  std::vector<double> z;   // upper vector [m^2/s^2]
  bool converged = false;
  int iterations = 0;
};

struct InfeasibilityWitness {
  std::size_t index = 0;
  double gap = 0.0;        // y[index] - z[index] [m^2/s^2]
};

/// Feasible iff y <= z component-wise within tolerance.
struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<InfeasibilityWitness> witness;
};

struct TighteningResult {
  Bounds bounds;
  FeasibilityVerdict verdict;
  bool feasible() const { return verdict.feasible; }
};

/// Raised when the tightening loop hits its iteration cap without either
/// converging or proving infeasibility. Carries the last iterates.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, Bounds last)
      : std::runtime_error(std::move(msg)), last_bounds(std::move(last)) {}
  Bounds last_bounds;
};

/// Half-squared speed where the power cap pm/sqrt(2w) meets the friction cap
/// g*mu*cos(alpha_i): w_hat = (pm / (g*mu*cos a_i))^2 / 2.
double critical_speed(const VehicleParams& params, const PathGrid& grid,
                      std::size_t i);

/// ell_i(w) = (1-h*gamma)*w + h*min{pm/sqrt(2w), g*mu*cos(alpha_i)}.
/// Defined at w = 0 through the friction branch; throws on w < 0.
double ell(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w);

/// Smallest w_i admitting the transition to w_next under the max-force and
/// power caps, floored at w_min_i. Found in closed form on the friction
/// branch, by safeguarded bisection on the power branch.
double xi1(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_next, double w_min_i, double tol_root = kTolRoot);

/// Largest w_{i+1} reachable from w_i under the max-force and power caps,
/// capped at w_max_next.
double xi2(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_i, double w_max_next);

/// Smallest w_{i+1} reachable from w_i under full braking, floored at
/// w_min_next.
double xi3(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_i, double w_min_next);

/// Largest w_i from which w_next is reachable under full braking, capped at
/// w_max_i. Throws when 1 - h*gamma <= 0.
double xi4(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_next, double w_max_i);

/// Directional bound sweeps. Forward sweeps (B1, B4) start from seed[0],
/// backward sweeps (B2, B3) from seed[n-1]. The seed also provides the
/// running cap (B1, B2) or floor (B3, B4), additionally clamped to the
/// static box, so each sweep output bounds the seed from the proper side.
enum class SweepKind { B1, B2, B3, B4 };

std::vector<double> sweep(SweepKind kind, std::span<const double> seed,
                          const VehicleParams& params, const PathGrid& grid,
                          const EffectiveLimits& limits,
                          double tol_root = kTolRoot);

/// Iterates u <- B2(B1(u)), l <- B4(B3(l)) from the effective box until both
/// updates move less than epsilon (returns the corridor) or the upper
/// iterate drops below the lower one (returns an infeasibility witness).
/// Throws ConvergenceError past max_iters.
TighteningResult compute_zy(const VehicleParams& params, const PathGrid& grid,
                            const EffectiveLimits& limits,
                            double epsilon = kBoundsEpsilon,
                            int max_iters = kMaxTighteningIterations,
                            double tol_feas = kTolFeas);

enum class ConstraintKind {
  PowerMax,   // f_i <= pm/sqrt(2 w_i)
  ForceMax,   // f_i <= g*mu*cos a_i
  ForceMin,   // f_i >= -g*mu*cos a_i
  SpeedMax,   // w_i <= w_max_i
  SpeedMin,   // w_i >= 0
  Boundary,   // w_0 = w_in, w_{n-1} = w_fin
};

struct ConstraintViolation {
  ConstraintKind kind;
  std::size_t index;
  double residual;   // positive amount by which the constraint is exceeded
};

/// Every violated constraint of the discretized problem, force families
/// in m/s^2, box families in m^2/s^2, each beyond tol.
std::vector<ConstraintViolation> profile_violations(
    const VehicleParams& params, const PathGrid& grid,
    const EffectiveLimits& limits, std::span<const double> w,
    double tol = kTolFeas);

bool is_feasible_profile(const VehicleParams& params, const PathGrid& grid,
                         const EffectiveLimits& limits,
                         std::span<const double> w, double tol = kTolFeas);

/// Component-wise (min, max) of two equally sized vectors.
std::pair<std::vector<double>, std::vector<double>> lattice_meet_join(
    std::span<const double> w, std::span<const double> w2);

}  // namespace speedplan

#endif  // SPEEDPLAN_FEASIBILITY_HPP_
