// Compares the serial and OpenMP paths of the grid oracle and times the
// lattice DP, on one random instance per size.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "speedplan/dp.hpp"
#include "speedplan/instance_gen.hpp"
#include "speedplan/oracle.hpp"

using namespace speedplan;

namespace {

double time_ms(const auto& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
  const int levels = argc > 2 ? std::atoi(argv[2]) : 400;

  // First feasible instance from a fixed seed sequence.
  InstanceConfig cfg;
  cfg.n = n;
  Instance inst;
  TighteningResult tight;
  for (cfg.seed = 42; cfg.seed < 200; ++cfg.seed) {
    inst = make_random_instance(cfg);
    tight = compute_zy(inst.params, inst.grid, inst.limits);
    if (tight.feasible()) break;
  }
  if (!tight.feasible()) {
    std::fprintf(stderr, "no feasible instance found\n");
    return 1;
  }
  std::printf("instance seed %llu\n", (unsigned long long)cfg.seed);
  const Weights weights{5e-4};

  PlanOutcome outcome;
  const double dp_ms = time_ms([&] {
    outcome = plan_with_bounds(inst.params, inst.grid, weights, tight);
  });

  OracleConfig serial;
  serial.levels = levels;
  serial.parallel = false;
  OracleConfig parallel = serial;
  parallel.parallel = true;

  OracleResult r_serial, r_parallel;
  const double serial_ms = time_ms(
      [&] { r_serial = solve_grid(inst.params, inst.grid, weights, tight.bounds, serial); });
  const double parallel_ms = time_ms(
      [&] { r_parallel = solve_grid(inst.params, inst.grid, weights, tight.bounds, parallel); });

  std::printf("n=%zu levels=%d\n", n, levels);
  std::printf("%-22s %10.2f ms  objective %.9g\n", "lattice dp", dp_ms,
              outcome.result->profile.objective);
  std::printf("%-22s %10.2f ms  objective %.9g\n", "grid oracle (serial)",
              serial_ms, r_serial.objective);
  std::printf("%-22s %10.2f ms  objective %.9g\n", "grid oracle (openmp)",
              parallel_ms, r_parallel.objective);
  std::printf("oracle speedup %.2fx, results %s\n", serial_ms / parallel_ms,
              r_serial.objective == r_parallel.objective ? "identical"
                                                         : "DIFFER");
  return r_serial.objective == r_parallel.objective ? 0 : 1;
}
