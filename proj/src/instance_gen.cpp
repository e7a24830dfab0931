#include "speedplan/instance_gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace speedplan {

Instance make_random_instance(const InstanceConfig& config) {
  if (config.n < 2)
    throw std::invalid_argument("make_random_instance: n must be >= 2");
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> slope_dist(-config.slope_max,
                                                    config.slope_max);
  std::uniform_real_distribution<double> vmax_dist(config.v_limit_min,
                                                   config.v_limit_max);
  std::uniform_int_distribution<std::size_t> seg_dist(config.segment_min,
                                                      config.segment_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Instance inst;
  inst.grid.h = config.h;
  inst.grid.w_max.assign(config.n, 0.0);
  inst.grid.alpha.assign(config.n - 1, 0.0);

  std::size_t i = 0;
  while (i < config.n) {
    const std::size_t len = std::min(seg_dist(rng), config.n - i);
    const double v = vmax_dist(rng);
    const double alpha = slope_dist(rng);
    for (std::size_t k = 0; k < len; ++k) {
      inst.grid.w_max[i + k] = 0.5 * v * v;
      if (i + k < config.n - 1) inst.grid.alpha[i + k] = alpha;
    }
    i += len;
  }

  inst.grid.w_in = unit(rng) * config.boundary_fraction * inst.grid.w_max.front();
  inst.grid.w_fin = unit(rng) * config.boundary_fraction * inst.grid.w_max.back();
  inst.grid.validate();
  inst.params.validate();
  inst.limits = EffectiveLimits::from(inst.grid);
  return inst;
}

}  // namespace speedplan
