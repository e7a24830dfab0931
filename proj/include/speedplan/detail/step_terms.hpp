#ifndef SPEEDPLAN_DETAIL_STEP_TERMS_HPP_
#define SPEEDPLAN_DETAIL_STEP_TERMS_HPP_

#include <cmath>
#include <vector>

#include "speedplan/model.hpp"

namespace speedplan::detail {

/// Per-step constants hoisted out of the sweep and DP inner loops.
struct StepTerms {
  double h = 0.0;
  double gamma = 0.0;
  double a = 0.0;               // 1 - h*gamma
  double pm = 0.0;              // P_max / M [W/kg]
  double pm2 = 0.0;             // pm^2, for sqrt-free power-cap tests
  std::vector<double> resist;   // g*(sin a_i + c*cos a_i) per step [m/s^2]
  std::vector<double> fric;     // g*mu*cos a_i per step [m/s^2]
  std::vector<double> w_hat;    // critical half-squared speed per step [m^2/s^2]
  std::vector<double> drift;    // h*resist_i, null-force decrement [m^2/s^2]
};

inline StepTerms make_step_terms(const VehicleParams& params,
                                 const PathGrid& grid) {
  StepTerms t;
  const std::size_t steps = grid.size() - 1;
  t.h = grid.h;
  t.gamma = params.gamma();
  t.a = 1.0 - grid.h * t.gamma;
  t.pm = params.power_max / params.mass;
  t.pm2 = t.pm * t.pm;
  t.resist.resize(steps);
  t.fric.resize(steps);
  t.w_hat.resize(steps);
  t.drift.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double sa = std::sin(grid.alpha[i]);
    const double ca = std::cos(grid.alpha[i]);
    t.resist[i] = params.g * (sa + params.c * ca);
    t.fric[i] = params.g * params.mu * ca;
    const double ratio = t.pm / t.fric[i];
    t.w_hat[i] = 0.5 * ratio * ratio;
    t.drift[i] = grid.h * t.resist[i];
  }
  return t;
}

/// ell_i(w) = (1-h*gamma)*w + h*min{pm/sqrt(2w), fric}. The power branch is
/// +infinity at w = 0, so the friction branch applies below the critical
/// speed including w = 0.
inline double ell_core(double a, double h, double pm, double fric,
                       double w_hat, double w) {
  if (w <= w_hat) return a * w + h * fric;
  return a * w + h * pm / std::sqrt(2.0 * w);
}

/// Friction and power admission of the transition w_s -> w_next over step s.
/// The power cap is tested sqrt-free: f - tol <= pm/sqrt(2 w_s) is
/// equivalent to (f-tol)^2 * 2 w_s <= pm^2 when f - tol > 0, and vacuous
/// otherwise (including w_s = 0, where the cap is infinite).
inline bool force_admits(const StepTerms& t, std::size_t s, double w_s,
                         double w_next, double tol) {
  const double f = (w_next - w_s) / t.h + t.gamma * w_s + t.resist[s];
  if (f < -t.fric[s] - tol || f > t.fric[s] + tol) return false;
  const double fa = f - tol;
  if (fa <= 0.0) return true;
  return fa * fa * 2.0 * w_s <= t.pm2;
}

}  // namespace speedplan::detail

#endif  // SPEEDPLAN_DETAIL_STEP_TERMS_HPP_
