#include "speedplan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace speedplan {

namespace {

using nlohmann::ordered_json;

double get_number(const ordered_json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ScenarioError(std::string("scenario: field '") + key +
                        "' must be a number");
  return obj[key].get<double>();
}

std::vector<double> get_array(const ordered_json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_array())
    throw ScenarioError(std::string("scenario: field '") + key +
                        "' must be an array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number())
      throw ScenarioError(std::string("scenario: field '") + key +
                          "' must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double slope_to_rad(double value, const std::string& unit) {
  if (unit == "rad") return value;
  if (unit == "deg") return value * std::numbers::pi / 180.0;
  if (unit == "percent") return std::atan(value / 100.0);
  throw ScenarioError("scenario: slope_unit must be rad, deg or percent, got '" +
                      unit + "'");
}

double speed_to_ms(double value, const std::string& unit) {
  if (unit == "m/s") return value;
  if (unit == "km/h") return value / 3.6;
  throw ScenarioError("scenario: speed unit must be m/s or km/h, got '" + unit +
                      "'");
}

// Linear interpolation over strictly increasing sample positions, clamped
// at the ends.
double lerp_at(const std::vector<double>& xs, const std::vector<double>& ys,
               double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("scenario: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("scenario: top level must be an object");

  Scenario sc;
  if (doc.contains("vehicle")) {
    const auto& veh = doc["vehicle"];
    if (!veh.is_object())
      throw ScenarioError("scenario: 'vehicle' must be an object");
    sc.vehicle.mass = get_number(veh, "mass_kg", sc.vehicle.mass);
    sc.vehicle.power_max = get_number(veh, "power_max_w", sc.vehicle.power_max);
    sc.vehicle.eta = get_number(veh, "eta", sc.vehicle.eta);
    sc.vehicle.c = get_number(veh, "rolling_coeff", sc.vehicle.c);
    sc.vehicle.Gamma = get_number(veh, "aero_kg_per_m", sc.vehicle.Gamma);
    sc.vehicle.mu = get_number(veh, "friction_mu", sc.vehicle.mu);
    sc.vehicle.g = get_number(veh, "gravity_m_s2", sc.vehicle.g);
  }
  try {
    sc.vehicle.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }

  if (!doc.contains("path") || !doc["path"].is_object())
    throw ScenarioError("scenario: missing 'path' object");
  const auto& path = doc["path"];
  sc.s = get_array(path, "s_m");
  if (sc.s.size() < 2)
    throw ScenarioError("scenario: path needs at least 2 samples");
  for (std::size_t i = 0; i + 1 < sc.s.size(); ++i)
    if (!(sc.s[i] < sc.s[i + 1]))
      throw ScenarioError("scenario: path.s_m must be strictly increasing at index " +
                          std::to_string(i + 1));

  const std::string slope_unit =
      path.contains("slope_unit") ? path["slope_unit"].get<std::string>() : "rad";
  std::vector<double> slope = get_array(path, "slope");
  if (slope.size() != sc.s.size())
    throw ScenarioError("scenario: path.slope must match path.s_m in length");
  sc.alpha.resize(slope.size());
  for (std::size_t i = 0; i < slope.size(); ++i)
    sc.alpha[i] = slope_to_rad(slope[i], slope_unit);

  const std::string vmax_unit =
      path.contains("v_max_unit") ? path["v_max_unit"].get<std::string>() : "m/s";
  std::vector<double> vmax = get_array(path, "v_max");
  if (vmax.size() != sc.s.size())
    throw ScenarioError("scenario: path.v_max must match path.s_m in length");
  sc.v_max.resize(vmax.size());
  for (std::size_t i = 0; i < vmax.size(); ++i) {
    sc.v_max[i] = speed_to_ms(vmax[i], vmax_unit);
    if (!(sc.v_max[i] >= 0.0))
      throw ScenarioError("scenario: path.v_max entries must be >= 0");
  }

  sc.h = get_number(doc, "step_m", sc.h);
  if (!(sc.h > 0.0)) throw ScenarioError("scenario: step_m must be positive");

  if (doc.contains("boundary")) {
    const auto& b = doc["boundary"];
    if (!b.is_object()) throw ScenarioError("scenario: 'boundary' must be an object");
    const bool has_w = b.contains("w_in") || b.contains("w_fin");
    const bool has_v = b.contains("v_in") || b.contains("v_fin");
    if (has_w && has_v)
      throw ScenarioError("scenario: boundary must use either w or v fields, not both");
    if (has_w) {
      sc.w_in = get_number(b, "w_in", 0.0);
      sc.w_fin = get_number(b, "w_fin", 0.0);
    } else {
      const std::string unit =
          b.contains("unit") ? b["unit"].get<std::string>() : "m/s";
      const double vi = speed_to_ms(get_number(b, "v_in", 0.0), unit);
      const double vf = speed_to_ms(get_number(b, "v_fin", 0.0), unit);
      sc.w_in = 0.5 * vi * vi;
      sc.w_fin = 0.5 * vf * vf;
    }
    if (!(sc.w_in >= 0.0) || !(sc.w_fin >= 0.0))
      throw ScenarioError("scenario: boundary speeds must be >= 0");
  }

  sc.weights.lambda = get_number(doc, "lambda_s_per_j", sc.weights.lambda);
  if (!(sc.weights.lambda >= 0.0))
    throw ScenarioError("scenario: lambda_s_per_j must be >= 0");

  if (doc.contains("solver")) {
    const auto& sol = doc["solver"];
    if (!sol.is_object()) throw ScenarioError("scenario: 'solver' must be an object");
    sc.solver.epsilon = get_number(sol, "epsilon", sc.solver.epsilon);
    sc.solver.max_iterations = static_cast<int>(
        get_number(sol, "max_iterations", sc.solver.max_iterations));
    sc.solver.tol_feas = get_number(sol, "tol_feas", sc.solver.tol_feas);
    sc.solver.tol_root = get_number(sol, "tol_root", sc.solver.tol_root);
    sc.solver.epsilon_speed =
        get_number(sol, "epsilon_speed", sc.solver.epsilon_speed);
    sc.oracle.levels =
        static_cast<int>(get_number(sol, "oracle_levels", sc.oracle.levels));
    sc.oracle.refine_rounds = static_cast<int>(
        get_number(sol, "oracle_refine_rounds", sc.oracle.refine_rounds));
    sc.oracle.tol = sc.solver.tol_feas;
    sc.oracle.epsilon_speed = sc.solver.epsilon_speed;
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string emit_scenario(const Scenario& sc) {
  ordered_json doc;
  doc["vehicle"] = {{"mass_kg", sc.vehicle.mass},
                    {"power_max_w", sc.vehicle.power_max},
                    {"eta", sc.vehicle.eta},
                    {"rolling_coeff", sc.vehicle.c},
                    {"aero_kg_per_m", sc.vehicle.Gamma},
                    {"friction_mu", sc.vehicle.mu},
                    {"gravity_m_s2", sc.vehicle.g}};
  doc["path"] = {{"s_m", sc.s},
                 {"slope", sc.alpha},
                 {"slope_unit", "rad"},
                 {"v_max", sc.v_max},
                 {"v_max_unit", "m/s"}};
  doc["step_m"] = sc.h;
  doc["boundary"] = {{"w_in", sc.w_in}, {"w_fin", sc.w_fin}};
  doc["lambda_s_per_j"] = sc.weights.lambda;
  doc["solver"] = {{"epsilon", sc.solver.epsilon},
                   {"max_iterations", sc.solver.max_iterations},
                   {"tol_feas", sc.solver.tol_feas},
                   {"tol_root", sc.solver.tol_root},
                   {"epsilon_speed", sc.solver.epsilon_speed},
                   {"oracle_levels", sc.oracle.levels},
                   {"oracle_refine_rounds", sc.oracle.refine_rounds}};
  return doc.dump(2);
}

ResampledScenario resample(const Scenario& sc) {
  const double length = sc.s.back() - sc.s.front();
  if (length < sc.h)
    throw ScenarioError("scenario: step_m exceeds the path length");
  // Small nudge so exact multiples of h are not lost to rounding.
  const std::size_t n =
      static_cast<std::size_t>(std::floor(length / sc.h + 1e-9)) + 1;

  ResampledScenario out;
  out.params = sc.vehicle;
  out.grid.h = sc.h;
  out.grid.w_max.resize(n);
  out.grid.alpha.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double pos = sc.s.front() + static_cast<double>(k) * sc.h;
    const double v = lerp_at(sc.s, sc.v_max, pos);
    out.grid.w_max[k] = 0.5 * v * v;
    if (k + 1 < n) out.grid.alpha[k] = lerp_at(sc.s, sc.alpha, pos);
  }
  out.grid.w_in = sc.w_in;
  out.grid.w_fin = sc.w_fin;
  try {
    out.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  out.limits = EffectiveLimits::from(out.grid);
  return out;
}

ResultBundle make_bundle(const VehicleParams& params, const PathGrid& grid,
                         const Weights& weights, const PlanOutcome& outcome) {
  ResultBundle b;
  b.lambda = weights.lambda;
  b.n = grid.size();
  b.h = grid.h;
  b.y = outcome.bounds.y;
  b.z = outcome.bounds.z;
  b.tightening_iterations = outcome.bounds.iterations;
  b.assumptions_hold = outcome.assumptions.all_hold();
  b.assumptions = outcome.assumptions;
  b.witness = outcome.witness;
  switch (outcome.status) {
    case PlanStatus::Ok: b.status = "ok"; break;
    case PlanStatus::Infeasible: b.status = "infeasible"; break;
    case PlanStatus::NoDpPath: b.status = "no_dp_path"; break;
  }
  if (outcome.result) {
    const PlanResult& res = *outcome.result;
    const std::size_t n = res.profile.w.size();
    b.s.resize(n);
    b.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      b.s[i] = static_cast<double>(i) * grid.h;
      b.v[i] = std::sqrt(2.0 * res.profile.w[i]);
    }
    b.w = res.profile.w;
    b.f = res.profile.f;
    b.objective = res.profile.objective;
    b.travel_time = res.profile.travel_time;
    b.energy = res.profile.energy;
    b.dp_value = res.dp_value;
    b.wall_time = res.wall_time;
    b.states_expanded = res.states_expanded;
  }
  (void)params;
  return b;
}

namespace {

ordered_json assumptions_json(const ResultBundle& b) {
  const AssumptionReport& rep = b.assumptions;
  auto all = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool x) { return x; });
  };
  // Worst margin over the checked steps; null when nothing was checked.
  auto worst = [](const std::vector<double>& margins,
                  const std::vector<bool>& checked, bool smallest) {
    ordered_json out;
    double best = smallest ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < margins.size(); ++i) {
      if (!checked.empty() && !checked[i]) continue;
      any = true;
      best = smallest ? std::min(best, margins[i]) : std::max(best, margins[i]);
    }
    if (any && std::isfinite(best)) out = best;
    return out;
  };
  ordered_json doc;
  doc["all_hold"] = b.assumptions_hold;
  doc["step_size_ok"] = all(rep.a1_holds);
  doc["step_size_worst_margin"] = worst(rep.a1_margin, {}, true);
  doc["cost_shape_ok"] = rep.cond1_holds;
  doc["cost_shape_margin"] = rep.cond1_margin;
  doc["accel_reserve_ok"] = all(rep.cond2_holds);
  doc["accel_reserve_worst_margin"] =
      worst(rep.cond2_margin, rep.cond2_checked, true);
  doc["decel_reserve_ok"] = all(rep.cond3_holds);
  doc["decel_reserve_worst_margin"] =
      worst(rep.cond3_margin, rep.cond3_checked, false);
  doc["regen_sign_ok"] = rep.asscomb_holds;
  doc["regen_sign_margin"] = rep.asscomb_margin;
  return doc;
}

}  // namespace

std::string emit_result_json(const ResultBundle& b) {
  ordered_json doc;
  doc["status"] = b.status;
  doc["solver"] = "speedplan lattice dp";
  doc["n"] = b.n;
  doc["h_m"] = b.h;
  doc["lambda"] = b.lambda;
  doc["objective_s"] = b.objective;
  doc["travel_time_s"] = b.travel_time;
  doc["energy_j"] = b.energy;
  doc["dp_value"] = b.dp_value;
  doc["wall_time_s"] = b.wall_time;
  doc["states_expanded"] = b.states_expanded;
  doc["tightening_iterations"] = b.tightening_iterations;
  doc["assumptions_hold"] = b.assumptions_hold;
  doc["assumptions"] = assumptions_json(b);
  if (b.witness) {
    doc["infeasibility"] = {{"index", b.witness->index},
                            {"gap", b.witness->gap}};
  }
  doc["s"] = b.s;
  doc["w"] = b.w;
  doc["v"] = b.v;
  doc["f"] = b.f;
  doc["y"] = b.y;
  doc["z"] = b.z;
  return doc.dump(2);
}

std::string emit_profile_csv(const ResultBundle& b) {
  std::ostringstream out;
  out << "s,w,v,f,y,z\n";
  for (std::size_t i = 0; i < b.w.size(); ++i) {
    out << format_sig9(b.s[i]) << ',' << format_sig9(b.w[i]) << ','
        << format_sig9(b.v[i]) << ',';
    if (i < b.f.size()) out << format_sig9(b.f[i]);
    out << ',' << format_sig9(b.y[i]) << ',' << format_sig9(b.z[i]) << '\n';
  }
  return out.str();
}

std::string emit_pareto_csv(const ParetoFront& front) {
  std::ostringstream out;
  out << "lambda,time_s,energy_J,specific_energy_J_per_kg,feasible\n";
  for (const ParetoPoint& p : front.points) {
    out << format_sig9(p.lambda) << ',' << format_sig9(p.travel_time) << ','
        << format_sig9(p.energy) << ',' << format_sig9(p.specific_energy)
        << ',' << (p.feasible ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace speedplan
