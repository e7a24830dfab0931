#include "speedplan/pareto.hpp"

#include <cmath>
#include <stdexcept>

#include "speedplan/feasibility.hpp"

namespace speedplan {

namespace {

std::vector<double> lambda_samples(const SweepConfig& cfg) {
  if (cfg.samples < 2)
    throw std::invalid_argument("pareto_sweep: need at least 2 samples");
  if (!(cfg.lambda_min >= 0.0) || !(cfg.lambda_min < cfg.lambda_max))
    throw std::invalid_argument("pareto_sweep: need 0 <= lambda_min < lambda_max");
  if (cfg.log_spaced && !(cfg.lambda_min > 0.0))
    throw std::invalid_argument("pareto_sweep: log spacing needs lambda_min > 0");

  std::vector<double> out;
  if (cfg.prepend_zero && cfg.lambda_min > 0.0) out.push_back(0.0);
  const int m = cfg.samples;
  for (int k = 0; k < m; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(m - 1);
    if (cfg.log_spaced)
      out.push_back(cfg.lambda_min *
                    std::pow(cfg.lambda_max / cfg.lambda_min, frac));
    else
      out.push_back(cfg.lambda_min + frac * (cfg.lambda_max - cfg.lambda_min));
  }
  out.back() = cfg.lambda_max;
  return out;
}

}  // namespace

ParetoFront pareto_sweep(const VehicleParams& params, const PathGrid& grid,
                         const SweepConfig& config, const PlanOptions& options) {
  params.validate();
  grid.validate();
  const std::vector<double> lambdas = lambda_samples(config);

  const EffectiveLimits limits = EffectiveLimits::from(grid);
  const TighteningResult tight =
      compute_zy(params, grid, limits, options.epsilon, options.max_iterations,
                 options.tol_feas);

  ParetoFront front;
  front.points.assign(lambdas.size(), ParetoPoint{});
  const std::int64_t m = static_cast<std::int64_t>(lambdas.size());

#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (std::int64_t k = 0; k < m; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    ParetoPoint& pt = front.points[i];
    pt.lambda = lambdas[i];
    const PlanOutcome outcome = plan_with_bounds(
        params, grid, Weights{lambdas[i]}, tight, options);
    if (outcome.status == PlanStatus::Ok) {
      pt.feasible = true;
      pt.travel_time = outcome.result->profile.travel_time;
      pt.energy = outcome.result->profile.energy;
      pt.specific_energy = pt.energy / params.mass;
      pt.objective = outcome.result->profile.objective;
    }
  }
  return front;
}

std::vector<ParetoPoint> dominance_filter(std::span<const ParetoPoint> points) {
  std::vector<ParetoPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ParetoPoint& p = points[i];
    if (!p.feasible) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i || !points[j].feasible) continue;
      const ParetoPoint& q = points[j];
      if (q.travel_time <= p.travel_time && q.energy <= p.energy &&
          (q.travel_time < p.travel_time || q.energy < p.energy))
        dominated = true;
      else if (q.travel_time == p.travel_time && q.energy == p.energy && j < i)
        dominated = true;  // exact duplicate, keep the first
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace speedplan
