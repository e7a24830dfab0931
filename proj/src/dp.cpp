#include "speedplan/dp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speedplan/detail/step_terms.hpp"
#include "speedplan/log.hpp"

namespace speedplan {

namespace {

using detail::StepTerms;
using detail::force_admits;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct StageCosts {
  double speed_coef;   // lambda*M*eta*gamma
  double force_coef;   // (1-eta)*lambda*M
  double eps;

  double speed_cost(double w) const {
    return speed_coef * w + 1.0 / std::sqrt(2.0 * std::max(w, eps));
  }
  double force_cost(double f) const { return f > 0.0 ? force_coef * f : 0.0; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

bool in_gamma(const VehicleParams& params, const PathGrid& grid,
              const Bounds& bounds, std::size_t j, double w_j, double w_next,
              double tol) {
  if (j + 1 >= grid.size())
    throw std::out_of_range("in_gamma: step index out of range");
  if (w_next < bounds.y[j + 1] - tol || w_next > bounds.z[j + 1] + tol)
    return false;
  return force_admits(detail::make_step_terms(params, grid), j, w_j, w_next, tol);
}

double dp_speed_cost(const VehicleParams& params, const Weights& weights,
                     double w, double epsilon_speed) {
  const StageCosts costs{
      weights.lambda * params.mass * params.eta * params.gamma(),
      (1.0 - params.eta) * weights.lambda * params.mass, epsilon_speed};
  return costs.speed_cost(w);
}

double dp_force_cost(const VehicleParams& params, const Weights& weights,
                     double f) {
  const StageCosts costs{
      weights.lambda * params.mass * params.eta * params.gamma(),
      (1.0 - params.eta) * weights.lambda * params.mass, kEpsilonSpeed};
  return costs.force_cost(f);
}

std::vector<double> null_force_curve(const VehicleParams& params,
                                     const PathGrid& grid, std::size_t j,
                                     double w_j) {
  const std::size_t n = grid.size();
  if (j >= n) throw std::out_of_range("null_force_curve: node out of range");
  const StepTerms t = detail::make_step_terms(params, grid);
  std::vector<double> curve;
  curve.reserve(n - j);
  curve.push_back(w_j);
  double c = w_j;
  for (std::size_t s = j; s + 1 < n; ++s) {
    c = t.a * c - t.drift[s];
    if (c < 0.0) break;
    curve.push_back(c);
  }
  return curve;
}

std::size_t eta_index(const VehicleParams& params, const PathGrid& grid,
                      const Bounds& bounds, std::size_t j, double w_j,
                      double tol) {
  const std::size_t n = grid.size();
  if (j >= n) throw std::out_of_range("eta_index: node out of range");
  if (j + 2 >= n) return 0;
  if (w_j < bounds.y[j] - tol || w_j > bounds.z[j] + tol) return 0;
  const StepTerms t = detail::make_step_terms(params, grid);
  std::size_t eta = 0;
  double c = w_j;
  for (std::size_t i = 1; i <= n - j - 2; ++i) {
    c = t.a * c - t.drift[j + i - 1];
    if (c < bounds.y[j + i] - tol || c > bounds.z[j + i] + tol) break;
    eta = i;
  }
  return eta;
}

IndexSets index_sets(const VehicleParams& params, const PathGrid& grid,
                     const Bounds& bounds, const ReferenceSpeeds& refs,
                     std::size_t j, double w_j, double tol) {
  IndexSets sets;
  const std::size_t eta = eta_index(params, grid, bounds, j, w_j, tol);
  const StepTerms t = detail::make_step_terms(params, grid);
  double c = w_j;
  for (std::size_t i = 1; i <= eta; ++i) {
    c = t.a * c - t.drift[j + i - 1];
    const std::size_t s = j + i;       // forced step, lands at node s+1
    const double yn = bounds.y[s + 1];
    const double zn = bounds.z[s + 1];
    auto in_box = [&](double w) { return w >= yn - tol && w <= zn + tol; };
    if (in_box(zn) && force_admits(t, s, c, zn, tol)) sets.to_zmax.push_back(i);
    if (in_box(yn) && force_admits(t, s, c, yn, tol)) sets.to_ymin.push_back(i);
    if (std::isfinite(refs.w_plus) && in_box(refs.w_plus) &&
        force_admits(t, s, c, refs.w_plus, tol))
      sets.to_wplus.push_back(i);
    if (std::isfinite(refs.w_minus) && in_box(refs.w_minus) &&
        force_admits(t, s, c, refs.w_minus, tol))
      sets.to_wminus.push_back(i);
  }
  return sets;
}

DpTables dyn_prog(const VehicleParams& params, const PathGrid& grid,
                  const Weights& weights, const Bounds& bounds,
                  const PlanOptions& options) {
  const std::size_t n = grid.size();
  if (bounds.y.size() != n || bounds.z.size() != n)
    throw std::invalid_argument("dyn_prog: bounds size does not match grid");

  const StepTerms t = detail::make_step_terms(params, grid);
  const ReferenceSpeeds refs = reference_speeds(params, weights);
  const StageCosts costs{
      weights.lambda * params.mass * params.eta * params.gamma(),
      (1.0 - params.eta) * weights.lambda * params.mass,
      options.epsilon_speed};
  const double tol = options.tol_feas;

  DpTables tab;
  tab.n = n;
  tab.value.assign(n * kNumTags, kInf);
  tab.pred_step.assign(n * kNumTags, -1);
  tab.pred_tag.assign(n * kNumTags, -1);
  tab.state_speed.assign(n * kNumTags,
                         std::numeric_limits<double>::quiet_NaN());
  tab.live.assign(n * kNumTags, 0);

  for (std::size_t j = 0; j < n; ++j) {
    tab.state_speed[j * kNumTags + 0] = bounds.y[j];
    tab.live[j * kNumTags + 0] = 1;
    tab.state_speed[j * kNumTags + 1] = bounds.z[j];
    tab.live[j * kNumTags + 1] = 1;
    if (std::isfinite(refs.w_plus) && refs.w_plus >= bounds.y[j] &&
        refs.w_plus <= bounds.z[j]) {
      tab.state_speed[j * kNumTags + 2] = refs.w_plus;
      tab.live[j * kNumTags + 2] = 1;
    }
    if (std::isfinite(refs.w_minus) && refs.w_minus >= bounds.y[j] &&
        refs.w_minus <= bounds.z[j]) {
      tab.state_speed[j * kNumTags + 3] = refs.w_minus;
      tab.live[j * kNumTags + 3] = 1;
    }
  }

  // Single initial state: y[0] == w_in on feasible bounds.
  tab.value[0] = 0.0;

  const double* y = bounds.y.data();
  const double* z = bounds.z.data();
  const double* resist = t.resist.data();
  const double* drift = t.drift.data();
  const double* fric = t.fric.data();
  const double* speed = tab.state_speed.data();
  const std::uint8_t* live = tab.live.data();
  double* V = tab.value.data();
  std::int32_t* PS = tab.pred_step.data();
  std::int8_t* PT = tab.pred_tag.data();

  // Relax the <=4 tagged targets at node s+1 through the forced step s.
  // Live targets are inside [y,z] at their node by construction, so only
  // the force and power families need testing here. The force expression
  // matches force() exactly so reference searches reproduce the values.
  auto relax_targets = [&](std::size_t s, double w_from, double prefix,
                           std::int32_t pj, std::int8_t pk) {
    const std::size_t row = (s + 1) * kNumTags;
    const double cap = fric[s];
    for (int k2 = 0; k2 < kNumTags; ++k2) {
      if (!live[row + k2]) continue;
      const double f =
          (speed[row + k2] - w_from) / t.h + t.gamma * w_from + resist[s];
      if (f < -cap - tol || f > cap + tol) continue;
      const double fa = f - tol;
      if (fa > 0.0 && fa * fa * 2.0 * w_from > t.pm2) continue;
      const double val = prefix + costs.force_cost(f);
      if (val < V[row + k2]) {
        V[row + k2] = val;
        PS[row + k2] = pj;
        PT[row + k2] = pk;
      }
    }
  };

  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (int k = 0; k < kNumTags; ++k) {
      const std::size_t cell = j * kNumTags + k;
      if (!live[cell]) continue;
      const double base = V[cell];
      if (!(base < kInf)) continue;
      ++tab.states_expanded;
      const double w0 = speed[cell];
      const double sc0 = costs.speed_cost(w0);

      relax_targets(j, w0, base + sc0,
                    static_cast<std::int32_t>(j), static_cast<std::int8_t>(k));

      // Null-force walk: coast while inside the corridor, relaxing one
      // forced step to each tagged target along the way.
      double c = w0;
      double acc = sc0;
      for (std::size_t s = j + 1; s + 1 < n; ++s) {
        c = t.a * c - drift[s - 1];
        if (c < y[s] - tol || c > z[s] + tol) break;
        acc += costs.speed_cost(c);
        relax_targets(s, c, base + acc,
                      static_cast<std::int32_t>(j), static_cast<std::int8_t>(k));
      }
    }
  }

  int best = -1;
  double best_value = kInf;
  const double end_tol = std::max(tol, 1e-9);
  for (int k = 0; k < kNumTags; ++k) {
    const std::size_t cell = (n - 1) * kNumTags + k;
    if (!live[cell]) continue;
    if (std::abs(speed[cell] - grid.w_fin) > end_tol) continue;
    if (V[cell] < best_value) {
      best_value = V[cell];
      best = k;
    }
  }
  tab.final_tag = best;
  return tab;
}

PlanResult build_solution(const VehicleParams& params, const PathGrid& grid,
                          const Weights& weights, const Bounds& bounds,
                          const DpTables& tables, const PlanOptions& options) {
  const std::size_t n = tables.n;
  if (n != grid.size() || bounds.y.size() != n)
    throw std::invalid_argument("build_solution: tables size does not match grid");
  if (tables.final_tag < 0)
    throw std::runtime_error("build_solution: final state was not reached");

  const StepTerms t = detail::make_step_terms(params, grid);
  std::vector<double> w(n, 0.0);
  std::size_t node = n - 1;
  int tag = tables.final_tag;
  w[node] = tables.state_speed[node * kNumTags + tag];

  while (node > 0) {
    const std::size_t cell = node * kNumTags + tag;
    const std::int32_t pj = tables.pred_step[cell];
    const std::int8_t pk = tables.pred_tag[cell];
    if (pj < 0 || static_cast<std::size_t>(pj) >= node)
      throw std::logic_error("build_solution: broken predecessor chain");
    const std::size_t prev = static_cast<std::size_t>(pj);
    w[prev] = tables.state_speed[prev * kNumTags + pk];
    for (std::size_t s = prev; s + 1 < node; ++s)
      w[s + 1] = t.a * w[s] - t.drift[s];
    node = prev;
    tag = pk;
  }

  PlanResult res;
  res.profile = evaluate_objective(params, grid, weights, w, options.epsilon_speed);
  res.dp_value = tables.final_value();
  res.states_expanded = tables.states_expanded;
  return res;
}

PlanOutcome plan_with_bounds(const VehicleParams& params, const PathGrid& grid,
                             const Weights& weights,
                             const TighteningResult& tightening,
                             const PlanOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  PlanOutcome out;
  out.bounds = tightening.bounds;

  if (!tightening.feasible()) {
    out.status = PlanStatus::Infeasible;
    out.witness = tightening.verdict.witness;
    out.assumptions = check_assumptions(params, grid, weights, nullptr);
    return out;
  }

  out.assumptions = check_assumptions(params, grid, weights, &tightening.bounds.z);
  if (!out.assumptions.all_hold())
    log_message(LogLevel::Warn,
                "plan: solver assumptions violated, continuing anyway");

  DpTables tables = dyn_prog(params, grid, weights, tightening.bounds, options);
  if (tables.final_tag < 0) {
    out.status = PlanStatus::NoDpPath;
    std::ostringstream msg;
    msg << "plan: DP lattice disconnected on a feasible instance: n="
        << grid.size() << " h=" << grid.h << " w_in=" << grid.w_in
        << " w_fin=" << grid.w_fin << " lambda=" << weights.lambda;
    log_message(LogLevel::Warn, msg.str());
    return out;
  }

  out.status = PlanStatus::Ok;
  out.result =
      build_solution(params, grid, weights, tightening.bounds, tables, options);
  out.result->wall_time = seconds_since(t0);
  return out;
}

PlanOutcome plan(const VehicleParams& params, const PathGrid& grid,
                 const Weights& weights, const PlanOptions& options) {
  params.validate();
  grid.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const EffectiveLimits limits = EffectiveLimits::from(grid);
  const TighteningResult tight =
      compute_zy(params, grid, limits, options.epsilon, options.max_iterations,
                 options.tol_feas);
  PlanOutcome out = plan_with_bounds(params, grid, weights, tight, options);
  if (out.result) out.result->wall_time = seconds_since(t0);
  return out;
}

}  // namespace speedplan
