#include "speedplan/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "speedplan/detail/step_terms.hpp"

namespace speedplan {

namespace {

using detail::StepTerms;

void check_step(const PathGrid& grid, std::size_t i, const char* who) {
  if (i + 1 >= grid.size())
    throw std::out_of_range(std::string(who) + ": step index " +
                            std::to_string(i) + " out of range");
}

// Root of ell(w) = target on the power branch, bracketed by
// [max(floor, w_hat), target/a].
double power_branch_root(const StepTerms& t, std::size_t i, double target,
                         double floor, double tol_root) {
  double lo = std::max(floor, t.w_hat[i]);
  double hi = target / t.a;
  for (int k = 0; k < 200 && hi - lo > tol_root; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double val = t.a * mid + t.h * t.pm / std::sqrt(2.0 * mid);
    if (val < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double xi1_core(const StepTerms& t, std::size_t i, double w_next, double floor,
                double tol_root) {
  const double target = w_next + t.drift[i];
  if (detail::ell_core(t.a, t.h, t.pm, t.fric[i], t.w_hat[i], floor) >= target)
    return floor;
  const double friction_root = (target - t.h * t.fric[i]) / t.a;
  if (friction_root <= t.w_hat[i]) return friction_root;
  return power_branch_root(t, i, target, floor, tol_root);
}

double xi2_core(const StepTerms& t, std::size_t i, double w_i, double cap) {
  return std::min(
      cap, detail::ell_core(t.a, t.h, t.pm, t.fric[i], t.w_hat[i], w_i) -
               t.drift[i]);
}

double xi3_core(const StepTerms& t, std::size_t i, double w_i, double floor) {
  return std::max(floor, t.a * w_i - t.drift[i] - t.h * t.fric[i]);
}

double xi4_core(const StepTerms& t, std::size_t i, double w_next, double cap) {
  return std::min(cap, (w_next + t.drift[i] + t.h * t.fric[i]) / t.a);
}

void sweep_into(SweepKind kind, std::span<const double> seed,
                const StepTerms& t, const EffectiveLimits& limits,
                double tol_root, std::vector<double>& p) {
  const std::size_t n = seed.size();
  p.resize(n);
  switch (kind) {
    case SweepKind::B1:
      p[0] = seed[0];
      for (std::size_t j = 0; j + 1 < n; ++j)
        p[j + 1] = xi2_core(t, j, p[j], std::min(seed[j + 1], limits.w_max[j + 1]));
      break;
    case SweepKind::B2:
      p[n - 1] = seed[n - 1];
      for (std::size_t j = n - 1; j-- > 0;)
        p[j] = xi4_core(t, j, p[j + 1], std::min(seed[j], limits.w_max[j]));
      break;
    case SweepKind::B3:
      p[n - 1] = seed[n - 1];
      for (std::size_t j = n - 1; j-- > 0;)
        p[j] = xi1_core(t, j, p[j + 1], std::max(seed[j], limits.w_min[j]),
                        tol_root);
      break;
    case SweepKind::B4:
      p[0] = seed[0];
      for (std::size_t j = 0; j + 1 < n; ++j)
        p[j + 1] = xi3_core(t, j, p[j], std::max(seed[j + 1], limits.w_min[j + 1]));
      break;
  }
}

double max_abs_delta(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

FeasibilityVerdict verdict_from(const std::vector<double>& y,
                                const std::vector<double>& z,
                                double tol_feas) {
  FeasibilityVerdict v;
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double gap = y[i] - z[i];
    if (gap > worst) {
      worst = gap;
      worst_i = i;
    }
  }
  v.feasible = worst <= tol_feas;
  if (!v.feasible) v.witness = InfeasibilityWitness{worst_i, worst};
  return v;
}

}  // namespace

double critical_speed(const VehicleParams& params, const PathGrid& grid,
                      std::size_t i) {
  check_step(grid, i, "critical_speed");
  const double fric = params.g * params.mu * std::cos(grid.alpha[i]);
  const double ratio = params.power_max / (params.mass * fric);
  return 0.5 * ratio * ratio;
}

double ell(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w) {
  check_step(grid, i, "ell");
  if (w < 0.0) throw std::domain_error("ell: w must be >= 0");
  const detail::StepTerms t = detail::make_step_terms(params, grid);
  return detail::ell_core(t.a, t.h, t.pm, t.fric[i], t.w_hat[i], w);
}

double xi1(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_next, double w_min_i, double tol_root) {
  check_step(grid, i, "xi1");
  return xi1_core(detail::make_step_terms(params, grid), i, w_next, w_min_i,
                  tol_root);
}

double xi2(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_i, double w_max_next) {
  check_step(grid, i, "xi2");
  return xi2_core(detail::make_step_terms(params, grid), i, w_i, w_max_next);
}

double xi3(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_i, double w_min_next) {
  check_step(grid, i, "xi3");
  return xi3_core(detail::make_step_terms(params, grid), i, w_i, w_min_next);
}

double xi4(const VehicleParams& params, const PathGrid& grid, std::size_t i,
           double w_next, double w_max_i) {
  check_step(grid, i, "xi4");
  const detail::StepTerms t = detail::make_step_terms(params, grid);
  if (t.a <= 0.0)
    throw std::domain_error("xi4: 1 - h*gamma must be positive (step too large)");
  return xi4_core(t, i, w_next, w_max_i);
}

std::vector<double> sweep(SweepKind kind, std::span<const double> seed,
                          const VehicleParams& params, const PathGrid& grid,
                          const EffectiveLimits& limits, double tol_root) {
  if (seed.size() != grid.size())
    throw std::invalid_argument("sweep: seed size does not match grid");
  const detail::StepTerms t = detail::make_step_terms(params, grid);
  if (t.a <= 0.0)
    throw std::domain_error("sweep: 1 - h*gamma must be positive (step too large)");
  std::vector<double> p;
  sweep_into(kind, seed, t, limits, tol_root, p);
  return p;
}

TighteningResult compute_zy(const VehicleParams& params, const PathGrid& grid,
                            const EffectiveLimits& limits, double epsilon,
                            int max_iters, double tol_feas) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("compute_zy: epsilon must be positive");
  const detail::StepTerms t = detail::make_step_terms(params, grid);
  if (t.a <= 0.0)
    throw std::domain_error("compute_zy: 1 - h*gamma must be positive");

  std::vector<double> u = limits.w_max;
  std::vector<double> l = limits.w_min;
  std::vector<double> half, u_next, l_next;

  TighteningResult out;
  for (int k = 1; k <= max_iters; ++k) {
    sweep_into(SweepKind::B1, u, t, limits, kTolRoot, half);
    sweep_into(SweepKind::B2, half, t, limits, kTolRoot, u_next);
    sweep_into(SweepKind::B3, l, t, limits, kTolRoot, half);
    sweep_into(SweepKind::B4, half, t, limits, kTolRoot, l_next);

    const double du = max_abs_delta(u_next, u);
    const double dl = max_abs_delta(l_next, l);
    u.swap(u_next);
    l.swap(l_next);

    if (du <= epsilon && dl <= epsilon) {
      out.bounds = Bounds{l, u, true, k};
      out.verdict = verdict_from(l, u, tol_feas);
      return out;
    }
    FeasibilityVerdict v = verdict_from(l, u, tol_feas);
    if (!v.feasible) {
      out.bounds = Bounds{std::move(l), std::move(u), false, k};
      out.verdict = std::move(v);
      return out;
    }
  }
  throw ConvergenceError(
      "compute_zy: no convergence after " + std::to_string(max_iters) +
          " iterations",
      Bounds{std::move(l), std::move(u), false, max_iters});
}

std::vector<ConstraintViolation> profile_violations(
    const VehicleParams& params, const PathGrid& grid,
    const EffectiveLimits& limits, std::span<const double> w, double tol) {
  const std::size_t n = grid.size();
  if (w.size() != n)
    throw std::invalid_argument("profile_violations: size mismatch");
  const detail::StepTerms t = detail::make_step_terms(params, grid);

  std::vector<ConstraintViolation> out;
  auto report = [&](ConstraintKind kind, std::size_t i, double residual) {
    if (residual > tol) out.push_back({kind, i, residual});
  };

  for (std::size_t i = 1; i + 1 < n; ++i) {
    report(ConstraintKind::SpeedMax, i, w[i] - limits.w_max[i]);
    report(ConstraintKind::SpeedMin, i, limits.w_min[i] - w[i]);
  }
  report(ConstraintKind::Boundary, 0, std::abs(w[0] - grid.w_in));
  report(ConstraintKind::Boundary, n - 1, std::abs(w[n - 1] - grid.w_fin));

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double fi = (w[i + 1] - w[i]) / t.h + t.gamma * w[i] + t.resist[i];
    report(ConstraintKind::ForceMax, i, fi - t.fric[i]);
    report(ConstraintKind::ForceMin, i, -t.fric[i] - fi);
    const double power_cap = w[i] > 0.0
                                 ? t.pm / std::sqrt(2.0 * w[i])
                                 : std::numeric_limits<double>::infinity();
    if (std::isfinite(power_cap))
      report(ConstraintKind::PowerMax, i, fi - power_cap);
  }
  return out;
}

bool is_feasible_profile(const VehicleParams& params, const PathGrid& grid,
                         const EffectiveLimits& limits,
                         std::span<const double> w, double tol) {
  return profile_violations(params, grid, limits, w, tol).empty();
}

std::pair<std::vector<double>, std::vector<double>> lattice_meet_join(
    std::span<const double> w, std::span<const double> w2) {
  if (w.size() != w2.size())
    throw std::invalid_argument("lattice_meet_join: size mismatch");
  std::vector<double> meet(w.size()), join(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    meet[i] = std::min(w[i], w2[i]);
    join[i] = std::max(w[i], w2[i]);
  }
  return {std::move(meet), std::move(join)};
}

}  // namespace speedplan
