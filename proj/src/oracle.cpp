#include "speedplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "speedplan/detail/step_terms.hpp"

namespace speedplan {

namespace {

using detail::StepTerms;

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double time_term(double h, double eps, double w_s) {
  return h / std::sqrt(2.0 * std::max(w_s, eps));
}

// Energy part of a step cost; the time part is hoisted per source level.
inline double energy_term(double h_lam_M, double eta, double f) {
  return h_lam_M * std::max(eta * f, f);
}

struct LevelGrid {
  std::vector<std::vector<double>> levels;  // per node
  std::vector<double> spacing;              // per node [m^2/s^2]
};

// K uniform levels on [lo, hi], endpoints exact, plus extra levels (the
// corridor anchors and the refinement incumbent). Written so that the
// K-level and (2K-1)-level grids on the same window nest bit-exactly.
std::vector<double> make_levels(double lo, double hi, int k,
                                const std::vector<double>& extras) {
  std::vector<double> out;
  if (hi - lo <= 0.0) {
    out.push_back(lo);
  } else {
    out.reserve(static_cast<std::size_t>(k) + extras.size());
    const double width = hi - lo;
    const double denom = static_cast<double>(k - 1);
    for (int i = 0; i < k; ++i)
      out.push_back(lo + (static_cast<double>(i) * width) / denom);
    out.back() = hi;
  }
  if (!extras.empty()) {
    out.insert(out.end(), extras.begin(), extras.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

// Tagged speeds the lattice structure rides; kept as levels in every round
// so the refined windows cannot hide them.
std::vector<double> node_anchors(const Bounds& bounds,
                                 const ReferenceSpeeds& refs, std::size_t j) {
  std::vector<double> anchors{bounds.y[j], bounds.z[j]};
  if (std::isfinite(refs.w_plus) && refs.w_plus >= bounds.y[j] &&
      refs.w_plus <= bounds.z[j])
    anchors.push_back(refs.w_plus);
  if (std::isfinite(refs.w_minus) && refs.w_minus >= bounds.y[j] &&
      refs.w_minus <= bounds.z[j])
    anchors.push_back(refs.w_minus);
  return anchors;
}

LevelGrid build_grid(const PathGrid& grid, const Bounds& bounds,
                     const ReferenceSpeeds& refs, const std::vector<double>& lo,
                     const std::vector<double>& hi, int k,
                     const std::vector<double>* incumbent) {
  const std::size_t n = grid.size();
  LevelGrid lg;
  lg.levels.resize(n);
  lg.spacing.assign(n, 0.0);
  lg.levels.front() = {grid.w_in};
  lg.levels.back() = {grid.w_fin};
  for (std::size_t j = 1; j + 1 < n; ++j) {
    std::vector<double> extras = node_anchors(bounds, refs, j);
    if (incumbent != nullptr) extras.push_back((*incumbent)[j]);
    lg.levels[j] = make_levels(lo[j], hi[j], k, extras);
    if (hi[j] - lo[j] > 0.0)
      lg.spacing[j] = (hi[j] - lo[j]) / static_cast<double>(k - 1);
  }
  return lg;
}

struct RoundOutcome {
  bool reachable = false;
  double objective = kInf;
  std::vector<double> profile;
};

RoundOutcome run_round(const StepTerms& t, const PathGrid& grid,
                       const Weights& weights, const VehicleParams& params,
                       const LevelGrid& lg, const OracleConfig& cfg) {
  const std::size_t n = grid.size();
  const double h = grid.h;
  const double h_lam_M = grid.h * (weights.lambda * params.mass);
  const double eta = params.eta;
  const double eps = cfg.epsilon_speed;

  std::vector<std::vector<std::int32_t>> pred(n);
  std::vector<double> v_prev{0.0};
  std::vector<double> v_next;
  std::vector<double> tc;  // hoisted time term per source level

  for (std::size_t s = 0; s + 1 < n; ++s) {
    const std::vector<double>& src = lg.levels[s];
    const std::vector<double>& dst = lg.levels[s + 1];
    const std::int64_t nd = static_cast<std::int64_t>(dst.size());
    v_next.assign(dst.size(), kInf);
    pred[s + 1].assign(dst.size(), -1);

    tc.resize(src.size());
    for (std::size_t a = 0; a < src.size(); ++a)
      tc[a] = time_term(h, eps, src[a]);

#pragma omp parallel for schedule(static) if (cfg.parallel && nd > 32)
    for (std::int64_t b = 0; b < nd; ++b) {
      const double wb = dst[static_cast<std::size_t>(b)];
      double best = kInf;
      std::int32_t arg = -1;
      for (std::size_t a = 0; a < src.size(); ++a) {
        if (v_prev[a] >= kInf) continue;
        const double wa = src[a];
        if (!cfg.relax_forces && !detail::force_admits(t, s, wa, wb, cfg.tol))
          continue;
        const double f = (wb - wa) / h + t.gamma * wa + t.resist[s];
        const double cand = v_prev[a] + (energy_term(h_lam_M, eta, f) + tc[a]);
        if (cand < best) {
          best = cand;
          arg = static_cast<std::int32_t>(a);
        }
      }
      v_next[static_cast<std::size_t>(b)] = best;
      pred[s + 1][static_cast<std::size_t>(b)] = arg;
    }
    v_prev.swap(v_next);
  }

  RoundOutcome out;
  if (!(v_prev[0] < kInf)) return out;
  out.reachable = true;
  out.objective = v_prev[0];
  out.profile.assign(n, 0.0);
  std::int32_t idx = 0;
  for (std::size_t j = n; j-- > 0;) {
    out.profile[j] = lg.levels[j][static_cast<std::size_t>(idx)];
    if (j > 0) idx = pred[j][static_cast<std::size_t>(idx)];
  }
  return out;
}

}  // namespace

double direct_step_cost(const VehicleParams& params, const PathGrid& grid,
                        const Weights& weights, std::size_t s, double w_s,
                        double w_next, double epsilon_speed) {
  if (s + 1 >= grid.size())
    throw std::out_of_range("direct_step_cost: step index out of range");
  const StepTerms t = detail::make_step_terms(params, grid);
  const double h_lam_M = grid.h * (weights.lambda * params.mass);
  const double f = (w_next - w_s) / grid.h + t.gamma * w_s + t.resist[s];
  return energy_term(h_lam_M, params.eta, f) +
         time_term(grid.h, epsilon_speed, w_s);
}

std::vector<std::vector<double>> initial_oracle_levels(
    const VehicleParams& params, const PathGrid& grid, const Weights& weights,
    const Bounds& bounds, const OracleConfig& config) {
  const ReferenceSpeeds refs = reference_speeds(params, weights);
  return build_grid(grid, bounds, refs, bounds.y, bounds.z, config.levels,
                    nullptr)
      .levels;
}

bool grid_reachable(const VehicleParams& params, const PathGrid& grid,
                    const Bounds& box, int levels, double tol) {
  const std::size_t n = grid.size();
  if (box.y.size() != n || box.z.size() != n)
    throw std::invalid_argument("grid_reachable: box size does not match grid");
  const StepTerms t = detail::make_step_terms(params, grid);

  std::vector<std::vector<double>> lv(n);
  lv.front() = {grid.w_in};
  lv.back() = {grid.w_fin};
  for (std::size_t j = 1; j + 1 < n; ++j)
    lv[j] = make_levels(box.y[j], box.z[j], levels, {});

  std::vector<char> reach_prev(1, 1), reach_next;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const std::vector<double>& src = lv[s];
    const std::vector<double>& dst = lv[s + 1];
    reach_next.assign(dst.size(), 0);
    bool any = false;
    for (std::size_t b = 0; b < dst.size(); ++b) {
      for (std::size_t a = 0; a < src.size(); ++a) {
        if (!reach_prev[a]) continue;
        if (detail::force_admits(t, s, src[a], dst[b], tol)) {
          reach_next[b] = 1;
          any = true;
          break;
        }
      }
    }
    if (!any) return false;
    reach_prev.swap(reach_next);
  }
  return reach_prev[0] != 0;
}

OracleResult solve_grid(const VehicleParams& params, const PathGrid& grid,
                        const Weights& weights, const Bounds& bounds,
                        const OracleConfig& config) {
  const std::size_t n = grid.size();
  if (bounds.y.size() != n || bounds.z.size() != n)
    throw std::invalid_argument("solve_grid: bounds size does not match grid");
  if (config.levels < 2)
    throw std::invalid_argument("solve_grid: need at least 2 levels");

  const StepTerms t = detail::make_step_terms(params, grid);
  const ReferenceSpeeds refs = reference_speeds(params, weights);

  std::vector<double> lo = bounds.y;
  std::vector<double> hi = bounds.z;
  LevelGrid lg = build_grid(grid, bounds, refs, lo, hi, config.levels, nullptr);

  OracleResult res;
  RoundOutcome round = run_round(t, grid, weights, params, lg, config);
  if (!round.reachable) return res;
  res.round_objectives.push_back(round.objective);

  double prev_objective = round.objective;
  double last_drop = 0.0;
  for (int r = 0; r < config.refine_rounds; ++r) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double half = 0.25 * (hi[j] - lo[j]);  // half of the halved window
      const double center = round.profile[j];
      lo[j] = std::max(bounds.y[j], center - half);
      hi[j] = std::min(bounds.z[j], center + half);
    }
    lg = build_grid(grid, bounds, refs, lo, hi, config.levels, &round.profile);
    RoundOutcome next = run_round(t, grid, weights, params, lg, config);
    if (!next.reachable) break;  // cannot happen: incumbent levels persist
    last_drop = prev_objective - next.objective;
    prev_objective = next.objective;
    round = std::move(next);
    res.round_objectives.push_back(round.objective);
  }

  res.reachable = true;
  res.objective = round.objective;
  res.refine_drop = std::max(0.0, last_drop);
  res.cell_width = lg.spacing;
  res.profile = evaluate_objective(params, grid, weights, round.profile,
                                   config.epsilon_speed);

  // Resolution allowance: what rounding a profile of this shape onto the
  // final grid can cost. Time curvature and the linear energy drift are
  // per-node; the force kink pays at most one cell of slack per monotone
  // force segment.
  double allowance = 0.0;
  double max_cell = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double cell = lg.spacing[j];
    max_cell = std::max(max_cell, cell);
    const double w_lo =
        std::max(round.profile[j] - 0.5 * cell, config.epsilon_speed);
    allowance += grid.h * 0.5 * cell * std::pow(2.0 * w_lo, -1.5);
    allowance += grid.h * weights.lambda * params.mass * params.eta * t.gamma *
                 0.5 * cell;
  }
  int segments = 2;
  double prev_sign = 0.0;
  for (const double f : res.profile.f) {
    const double sign = f > config.tol ? 1.0 : (f < -config.tol ? -1.0 : 0.0);
    if (sign == 0.0) continue;
    if (prev_sign != 0.0 && sign != prev_sign) ++segments;
    prev_sign = sign;
  }
  allowance += (1.0 - params.eta) * weights.lambda * params.mass * max_cell *
               static_cast<double>(segments);
  res.grid_gap_estimate = res.refine_drop + allowance;
  return res;
}

ExactnessReport check_exactness(const VehicleParams& params,
                                const PathGrid& grid,
                                const OracleResult& result, double tol) {
  ExactnessReport rep;
  if (!result.reachable) return rep;
  const StepTerms t = detail::make_step_terms(params, grid);
  const std::size_t n = grid.size();
  const std::vector<double>& w = result.profile.w;
  const std::vector<double>& cell = result.cell_width;

  for (std::size_t s = 0; s + 1 < n; ++s) {
    const double f = (w[s + 1] - w[s]) / t.h + t.gamma * w[s] + t.resist[s];
    // Half-cell rounding of w_s and w_{s+1} moves f by at most this much.
    const double allow =
        (cell[s] + cell[s + 1]) / (2.0 * t.h) + 0.5 * t.gamma * cell[s];
    if (f > t.fric[s] + tol + allow)
      rep.violations.push_back(
          {ConstraintKind::ForceMax, s, f - t.fric[s] - allow});
    if (f < -t.fric[s] - tol - allow)
      rep.violations.push_back(
          {ConstraintKind::ForceMin, s, -t.fric[s] - f - allow});
    if (w[s] > 0.0) {
      const double cap = t.pm / std::sqrt(2.0 * w[s]);
      const double cap_shift =
          t.pm * 0.5 * cell[s] / std::pow(2.0 * w[s], 1.5);
      if (f > cap + tol + allow + cap_shift)
        rep.violations.push_back(
            {ConstraintKind::PowerMax, s, f - cap - allow - cap_shift});
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace speedplan
