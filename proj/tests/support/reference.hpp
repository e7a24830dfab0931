#ifndef SPEEDPLAN_TESTS_REFERENCE_HPP_
#define SPEEDPLAN_TESTS_REFERENCE_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "speedplan/dp.hpp"
#include "speedplan/feasibility.hpp"
#include "speedplan/model.hpp"
#include "speedplan/oracle.hpp"

namespace testsup {

// Dijkstra over the explicitly materialized (step, tag) state graph. Edges
// come from the public in_gamma / null_force_curve / index_sets operations;
// costs reuse the exported stage-cost terms and are accumulated in the same
// order as the stage sweep, so values must match bit for bit.
inline double dijkstra_dp_value(const speedplan::VehicleParams& params,
                                const speedplan::PathGrid& grid,
                                const speedplan::Weights& weights,
                                const speedplan::Bounds& bounds,
                                const speedplan::PlanOptions& opt = {}) {
  using namespace speedplan;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = grid.size();
  const ReferenceSpeeds refs = reference_speeds(params, weights);
  const double tol = opt.tol_feas;

  std::vector<double> speed(n * 4, std::nan(""));
  std::vector<bool> live(n * 4, false);
  for (std::size_t j = 0; j < n; ++j) {
    speed[j * 4 + 0] = bounds.y[j];
    live[j * 4 + 0] = true;
    speed[j * 4 + 1] = bounds.z[j];
    live[j * 4 + 1] = true;
    if (std::isfinite(refs.w_plus) && refs.w_plus >= bounds.y[j] &&
        refs.w_plus <= bounds.z[j]) {
      speed[j * 4 + 2] = refs.w_plus;
      live[j * 4 + 2] = true;
    }
    if (std::isfinite(refs.w_minus) && refs.w_minus >= bounds.y[j] &&
        refs.w_minus <= bounds.z[j]) {
      speed[j * 4 + 3] = refs.w_minus;
      live[j * 4 + 3] = true;
    }
  }

  struct Edge {
    std::uint32_t to;
    double speed_sum;   // curve speed terms, accumulated in walk order
    double force_term;  // forced-step term
  };
  std::vector<std::vector<Edge>> edges(n * 4);

  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (!live[j * 4 + k]) continue;
      const double w0 = speed[j * 4 + k];
      const double sc0 = dp_speed_cost(params, weights, w0, opt.epsilon_speed);

      for (int k2 = 0; k2 < 4; ++k2) {
        if (!live[(j + 1) * 4 + k2]) continue;
        const double wt = speed[(j + 1) * 4 + k2];
        if (!in_gamma(params, grid, bounds, j, w0, wt, tol)) continue;
        const double f = force(params, grid, j, w0, wt);
        edges[j * 4 + k].push_back(
            {static_cast<std::uint32_t>((j + 1) * 4 + k2), sc0,
             dp_force_cost(params, weights, f)});
      }

      const IndexSets sets = index_sets(params, grid, bounds, refs, j, w0, tol);
      const std::vector<double> curve = null_force_curve(params, grid, j, w0);
      std::vector<double> acc(curve.size());
      acc[0] = sc0;
      for (std::size_t i = 1; i < curve.size(); ++i)
        acc[i] = acc[i - 1] +
                 dp_speed_cost(params, weights, curve[i], opt.epsilon_speed);
      auto add = [&](const std::vector<std::size_t>& idx, int tag) {
        for (const std::size_t i : idx) {
          const std::size_t target = j + i + 1;
          if (!live[target * 4 + tag]) continue;
          const double f =
              force(params, grid, j + i, curve[i], speed[target * 4 + tag]);
          edges[j * 4 + k].push_back(
              {static_cast<std::uint32_t>(target * 4 + tag), acc[i],
               dp_force_cost(params, weights, f)});
        }
      };
      add(sets.to_ymin, 0);
      add(sets.to_zmax, 1);
      add(sets.to_wplus, 2);
      add(sets.to_wminus, 3);
    }
  }

  std::vector<double> dist(n * 4, kInf);
  dist[0] = 0.0;  // (0, Ymin) is the single start state
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.push({0.0, 0});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const Edge& e : edges[u]) {
      const double cand = (d + e.speed_sum) + e.force_term;
      if (cand < dist[e.to]) {
        dist[e.to] = cand;
        queue.push({cand, e.to});
      }
    }
  }

  double best = kInf;
  const double end_tol = std::max(tol, 1e-9);
  for (int k = 0; k < 4; ++k) {
    const std::size_t cell = (n - 1) * 4 + k;
    if (!live[cell]) continue;
    if (std::abs(speed[cell] - grid.w_fin) > end_tol) continue;
    best = std::min(best, dist[cell]);
  }
  return best;
}

// Exhaustive path enumeration over the oracle's own level grid,
// accumulating direct_step_cost left to right exactly like the stage DP.
inline double enumerate_grid_optimum(const speedplan::VehicleParams& params,
                                     const speedplan::PathGrid& grid,
                                     const speedplan::Weights& weights,
                                     const speedplan::Bounds& bounds,
                                     int levels) {
  using namespace speedplan;
  const std::size_t n = grid.size();
  OracleConfig cfg;
  cfg.levels = levels;
  const std::vector<std::vector<double>> lv =
      initial_oracle_levels(params, grid, weights, bounds, cfg);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(n, 0);
  // Odometer over interior level choices.
  while (true) {
    double cost = 0.0;
    bool ok = true;
    for (std::size_t s = 0; s + 1 < n && ok; ++s) {
      const double wa = lv[s][pick[s]];
      const double wb = lv[s + 1][pick[s + 1]];
      if (!in_gamma(params, grid, bounds, s, wa, wb)) {
        ok = false;
        break;
      }
      cost = cost + direct_step_cost(params, grid, weights, s, wa, wb);
    }
    if (ok && cost < best) best = cost;

    std::size_t j = 1;
    while (j + 1 < n && pick[j] + 1 == lv[j].size()) pick[j++] = 0;
    if (j + 1 >= n) break;
    ++pick[j];
  }
  return best;
}

}  // namespace testsup

#endif  // SPEEDPLAN_TESTS_REFERENCE_HPP_
