#ifndef SPEEDPLAN_INSTANCE_GEN_HPP_
#define SPEEDPLAN_INSTANCE_GEN_HPP_

#include <cstdint>

#include "speedplan/model.hpp"

namespace speedplan {

/// Random instance distribution used by the bench command and the test
/// suites: piecewise-constant slope and speed limit over segments of
/// 10-50 steps, slope uniform in [-0.1, 0.1] rad, speed limit uniform in
/// [8, 36] m/s, boundary speeds uniform in [0, boundary_fraction * cap] at
/// the respective end. Vehicle parameters are the library defaults.
struct InstanceConfig {
  std::size_t n = 2000;
  double h = 0.2;
  std::uint64_t seed = 1;
  double slope_max = 0.1;          // [rad]
  double v_limit_min = 8.0;        // [m/s]
  double v_limit_max = 36.0;       // [m/s]
  std::size_t segment_min = 10;    // steps per constant segment
  std::size_t segment_max = 50;
  double boundary_fraction = 0.9;  // of the local w_max
};

struct Instance {
  VehicleParams params;
  PathGrid grid;
  EffectiveLimits limits;
};

Instance make_random_instance(const InstanceConfig& config);

}  // namespace speedplan

#endif  // SPEEDPLAN_INSTANCE_GEN_HPP_
