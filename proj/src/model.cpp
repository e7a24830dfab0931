#include "speedplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace speedplan {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void VehicleParams::validate() const {
  if (!(mass > 0.0)) fail("vehicle: mass must be positive");
  if (!(power_max > 0.0)) fail("vehicle: power_max must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) fail("vehicle: eta must be in [0, 1]");
  if (!(c >= 0.0)) fail("vehicle: rolling coefficient c must be >= 0");
  if (!(Gamma >= 0.0)) fail("vehicle: aerodynamic coefficient Gamma must be >= 0");
  if (!(mu > 0.0)) fail("vehicle: friction coefficient mu must be positive");
  if (!(g > 0.0)) fail("vehicle: gravity must be positive");
}

void PathGrid::validate() const {
  const std::size_t n = size();
  if (!(h > 0.0)) fail("grid: step h must be positive");
  if (n < 2) fail("grid: need at least 2 nodes");
  if (alpha.size() != n - 1)
    fail("grid: alpha must have n-1 entries, got " + std::to_string(alpha.size()) +
         " for n = " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!(w_max[i] >= 0.0))
      fail("grid: w_max[" + std::to_string(i) + "] must be >= 0");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(std::abs(alpha[i]) < std::numbers::pi / 2.0))
      fail("grid: |alpha[" + std::to_string(i) + "]| must be below pi/2");
  if (!(w_in >= 0.0 && w_in <= w_max.front()))
    fail("grid: w_in must lie in [0, w_max[0]]");
  if (!(w_fin >= 0.0 && w_fin <= w_max.back()))
    fail("grid: w_fin must lie in [0, w_max[n-1]]");
}

EffectiveLimits EffectiveLimits::from(const PathGrid& grid) {
  const std::size_t n = grid.size();
  EffectiveLimits lim;
  lim.w_min.assign(n, 0.0);
  lim.w_max = grid.w_max;
  lim.w_min.front() = grid.w_in;
  lim.w_max.front() = grid.w_in;
  lim.w_min.back() = grid.w_fin;
  lim.w_max.back() = grid.w_fin;
  return lim;
}

bool AssumptionReport::all_hold() const {
  if (!cond1_holds || !asscomb_holds) return false;
  auto ok = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  return ok(a1_holds) && ok(cond2_holds) && ok(cond3_holds);
}

double force(const VehicleParams& params, const PathGrid& grid, std::size_t i,
             double w_i, double w_next) {
  if (i + 1 >= grid.size())
    throw std::out_of_range("force: step index " + std::to_string(i) +
                            " out of range for n = " + std::to_string(grid.size()));
  const double a = grid.alpha[i];
  return (w_next - w_i) / grid.h + params.gamma() * w_i +
         params.g * (std::sin(a) + params.c * std::cos(a));
}

SpeedProfile evaluate_objective(const VehicleParams& params,
                                const PathGrid& grid, const Weights& weights,
                                std::span<const double> w,
                                double epsilon_speed) {
  const std::size_t n = grid.size();
  if (w.size() != n)
    fail("evaluate_objective: speed vector has " + std::to_string(w.size()) +
         " entries, grid has " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (!(w[i] >= 0.0))
      fail("evaluate_objective: w[" + std::to_string(i) + "] must be >= 0");

  SpeedProfile out;
  out.w.assign(w.begin(), w.end());
  out.f.resize(n - 1);
  double time = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double fi = force(params, grid, i, w[i], w[i + 1]);
    out.f[i] = fi;
    time += grid.h / std::sqrt(2.0 * std::max(w[i], epsilon_speed));
    energy += grid.h * params.mass * std::max(params.eta * fi, fi);
  }
  out.travel_time = time;
  out.energy = energy;
  out.objective = weights.lambda * energy + time;
  return out;
}

ReferenceSpeeds reference_speeds(const VehicleParams& params,
                                 const Weights& weights) {
  ReferenceSpeeds refs;
  const double base = 2.0 * weights.lambda * params.mass * params.gamma();
  if (base > 0.0) {
    refs.w_plus = std::pow(base, -2.0 / 3.0);
    if (params.eta > 0.0) refs.w_minus = std::pow(params.eta * base, -2.0 / 3.0);
  }
  return refs;
}

AssumptionReport check_assumptions(const VehicleParams& params,
                                   const PathGrid& grid,
                                   const Weights& weights,
                                   const std::vector<double>* bounds_z) {
  const std::size_t steps = grid.size() - 1;
  const double h = grid.h;
  const double gamma = params.gamma();
  const double pm = params.power_max / params.mass;
  const ReferenceSpeeds refs = reference_speeds(params, weights);

  AssumptionReport rep;
  rep.a1_margin.resize(steps);
  rep.a1_holds.resize(steps);
  rep.cond2_margin.resize(steps);
  rep.cond2_holds.resize(steps);
  rep.cond2_checked.resize(steps);
  rep.cond3_margin.resize(steps);
  rep.cond3_holds.resize(steps);
  rep.cond3_checked.resize(steps);

  for (std::size_t i = 0; i < steps; ++i) {
    const double ca = std::cos(grid.alpha[i]);
    const double sa = std::sin(grid.alpha[i]);
    const double fric = params.g * params.mu * ca;
    const double resist = params.g * (sa + params.c * ca);

    // Step-size condition: ell_i stays increasing past the critical speed.
    const double w_hat = 0.5 * (pm / fric) * (pm / fric);
    rep.a1_margin[i] = 1.0 - h * gamma - h * pm / std::pow(2.0 * w_hat, 1.5);
    rep.a1_holds[i] = rep.a1_margin[i] >= 0.0;

    // Acceleration reserve at w_plus, checked only where the corridor
    // actually reaches that speed.
    const bool applicable =
        std::isfinite(refs.w_plus) &&
        (bounds_z == nullptr || (*bounds_z)[i] >= refs.w_plus);
    rep.cond2_checked[i] = applicable;
    if (applicable) {
      const double cap = std::min(fric, pm / std::sqrt(2.0 * refs.w_plus));
      rep.cond2_margin[i] = cap - gamma * refs.w_plus - resist;
      rep.cond2_holds[i] = rep.cond2_margin[i] > 0.0;
    } else {
      rep.cond2_margin[i] = std::numeric_limits<double>::quiet_NaN();
      rep.cond2_holds[i] = true;
    }

    // Deceleration reserve at w_minus.
    const double brake_term = -params.g * (sa + (params.c + params.mu) * ca);
    rep.cond3_checked[i] = true;
    if (std::isfinite(refs.w_minus)) {
      rep.cond3_margin[i] = brake_term - gamma * refs.w_minus;
    } else if (gamma > 0.0) {
      rep.cond3_margin[i] = -std::numeric_limits<double>::infinity();
    } else {
      rep.cond3_margin[i] = brake_term;
    }
    rep.cond3_holds[i] = rep.cond3_margin[i] < 0.0;
  }

  rep.cond1_margin = 1.0 - h * gamma * (1.0 + weights.lambda * params.power_max);
  rep.cond1_holds = rep.cond1_margin > 0.0;
  rep.asscomb_margin = -(1.0 - params.eta) / h + gamma;
  rep.asscomb_holds = rep.asscomb_margin < 0.0;
  return rep;
}

}  // namespace speedplan
