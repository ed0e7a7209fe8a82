#include "curveflow/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"

namespace curveflow {
namespace {

using Json = nlohmann::ordered_json;

// Keeps −0 out of serialized output.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

Json vec_json(Vec2 v) { return Json::array({clean(v.x), clean(v.y)}); }

const char* mode_name(FlowMode mode) { return mode == FlowMode::Log ? "log" : "power"; }

SolitonProblem request_problem(FlowMode mode, double p, double b) {
  return mode == FlowMode::Log ? SolitonProblem::log_flow(1.0, b) : SolitonProblem::power_flow(p, 1.0, b);
}

// Three-point derivatives on a nonuniform grid, interior nodes only.
struct Derivatives {
  std::vector<double> first;
  std::vector<double> second;
};

Derivatives finite_differences(const std::vector<double>& s, const std::vector<double>& f) {
  const std::size_t n = s.size();
  Derivatives out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = s[i] - s[i - 1];
    const double h2 = s[i + 1] - s[i];
    out.first[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
    out.second[i] = 2.0 * (f[i - 1] / (h1 * (h1 + h2)) - f[i] / (h1 * h2) + f[i + 1] / (h2 * (h1 + h2)));
  }
  return out;
}

double median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

}  // namespace

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const NoSolitonError*>(&error)) return exit_code::no_solution;
  if (dynamic_cast<const StepTooLarge*>(&error)) return exit_code::stability;
  return exit_code::domain;
}

SolitonRun run_soliton(const SolitonRequest& request) {
  for (double v : {request.p, request.b, request.d, request.half_span, request.tol})
    if (!std::isfinite(v)) throw DomainError("soliton: every numeric flag must be finite");
  SolitonRun run;
  run.energy = energy_from_flow(request_problem(request.mode, request.p, request.b));
  if (run.energy.is_degenerate())
    throw DegenerateEnergy(fmt::format(
        "soliton: p = {} makes the energy the degenerate length functional; only straight lines are critical",
        request.p));
  run.problem = flow_from_energy(run.energy, request.d);
  run.profile = integrate_profile(run.energy, request.d, request.half_span, request.tol);
  run.curve = reconstruct_curve(run.profile);
  run.soliton_residual = soliton_residual(run.curve, run.problem);

  const auto& samples = run.profile.samples;
  const double h = run.profile.spacing();
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double kappa_ss = (samples[i + 1].kappa_s - samples[i - 1].kappa_s) / (2.0 * h);
    run.el_residual =
        std::max(run.el_residual, std::abs(el_residual(run.energy, samples[i].kappa, samples[i].kappa_s, kappa_ss)));
  }
  return run;
}

Json soliton_metadata(const SolitonRequest& request, const SolitonRun& run) {
  Json meta;
  meta["mode"] = mode_name(request.mode);
  meta["p"] = request.mode == FlowMode::Log ? Json(nullptr) : Json(clean(request.p));
  meta["b"] = clean(run.problem.b);
  meta["a"] = clean(run.problem.a);
  meta["lambda"] = clean(run.energy.lambda);
  meta["d"] = clean(request.d);
  meta["half_span"] = clean(request.half_span);
  meta["samples"] = run.curve.size();
  meta["truncated"] = run.profile.truncated;
  meta["V"] = vec_json(run.problem.V);
  meta["residuals"] = {{"soliton", clean(run.soliton_residual)},
                       {"first_integral_drift", clean(run.profile.first_integral_drift)},
                       {"el", clean(run.el_residual)}};
  return meta;
}

FlowRun run_flow(const PlaneCurve& initial, const FlowConfig& config, double interior_margin) {
  FlowRun run;
  run.trajectory = evolve(initial, config);
  if (run.trajectory.states.size() >= 3) run.fit = fit_translation(run.trajectory, interior_margin);
  return run;
}

Json trajectory_json(const FlowRun& run, const std::vector<std::string>& snapshot_paths) {
  const Trajectory& traj = run.trajectory;
  Json out;
  out["times"] = Json::array();
  for (double t : traj.times) out["times"].push_back(clean(t));
  out["snapshots"] = snapshot_paths;
  if (run.fit) {
    out["fit"] = {{"V", vec_json(run.fit->velocity)},
                  {"shape_residual", clean(run.fit->shape_residual)},
                  {"linearity_residual", clean(run.fit->linearity_residual)}};
    out["translating"] = run.fit->shape_residual < kTranslatingShapeTolerance;
  } else {
    out["fit"] = nullptr;
    out["translating"] = nullptr;
  }
  if (!traj.states.empty() && traj.states.front().closed()) {
    // Radius of the circle with the same enclosed area.
    out["equivalent_radius"] = Json::array();
    for (const auto& state : traj.states)
      out["equivalent_radius"].push_back(std::sqrt(std::abs(polygon_area(state.points)) / std::numbers::pi));
  }
  out["resample_times"] = traj.resample_times;
  constexpr const char* kStop[] = {"completed", "extinction_reached", "domain_exit"};
  out["stop_reason"] = kStop[static_cast<int>(traj.stop)];
  out["stop_message"] = traj.stop_message;
  out["stop_time"] = clean(traj.stop_time);
  out["steps"] = traj.steps;
  return out;
}

VerifyReport verify_curve(const PlaneCurve& curve, FlowMode mode, double p, double b) {
  const std::size_t n = curve.size();
  if (n < 7) throw DomainError("verify: need at least seven samples");
  const CurvatureEnergy energy = energy_from_flow(request_problem(mode, p, b));
  if (energy.is_degenerate())
    throw DegenerateEnergy("verify: the dual energy is the degenerate length functional");

  std::vector<double> s = curve.arc;
  const bool arc_usable =
      s.size() == n && std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); }) &&
      std::adjacent_find(s.begin(), s.end(), [](double x, double y) { return !(y > x); }) == s.end();
  if (!arc_usable) s = chord_arc_length(curve.points);

  std::vector<double> kappa = curve.kappas;
  if (kappa.size() != n || !std::all_of(kappa.begin(), kappa.end(), [](double v) { return std::isfinite(v); }))
    kappa = estimate_curvature(make_polyline(curve.points, curve.boundary));

  std::vector<double> dP(n), P(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EnergyJet jet = evaluate(energy, kappa[i]);
    P[i] = jet.P;
    dP[i] = jet.dP;
  }
  const Derivatives dPds = finite_differences(s, dP);
  const Derivatives dkds = finite_differences(s, kappa);

  VerifyReport report;
  std::vector<double> integrals;
  Vec2 mean{};
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double el = dPds.second[i] + kappa[i] * kappa[i] * dP[i] - kappa[i] * P[i];
    report.el_residual_max = std::max(report.el_residual_max, std::abs(el));
    const double tangential = kappa[i] * dP[i] - P[i];
    integrals.push_back(dPds.first[i] * dPds.first[i] + tangential * tangential);
    mean = mean + killing_vector(energy, kappa[i], dkds.first[i], curve.tangents[i], curve.normals[i]);
  }
  const auto [lo, hi] = std::minmax_element(integrals.begin(), integrals.end());
  report.d_estimate = median(integrals);
  if (!(report.d_estimate > 0.0)) throw DomainError("verify: first integral vanishes; curve carries no soliton");
  report.first_integral_drift = (*hi - *lo) / report.d_estimate;

  SolitonProblem problem = flow_from_energy(energy, report.d_estimate);
  const double m = norm(mean);
  report.V = m > 1e-12 * std::sqrt(report.d_estimate) * static_cast<double>(integrals.size())
                 ? rotate_ccw(mean / m)
                 : Vec2{0.0, 1.0};
  problem.V = report.V;
  report.a = problem.a;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double r = speed_law(problem, kappa[i]) + problem.b - problem.a * dot(curve.normals[i], problem.V);
    report.soliton_residual_max = std::max(report.soliton_residual_max, std::abs(r));
  }
  report.pass = report.el_residual_max < 1e-3 && report.soliton_residual_max < 1e-3;
  return report;
}

Json verify_json(const VerifyReport& report) {
  return Json{{"el_residual_max", clean(report.el_residual_max)},
              {"first_integral_drift", clean(report.first_integral_drift)},
              {"d_estimate", clean(report.d_estimate)},
              {"soliton_residual_max", clean(report.soliton_residual_max)},
              {"a", clean(report.a)},
              {"V", vec_json(report.V)},
              {"verdict", report.pass ? "PASS" : "FAIL"}};
}

std::vector<Figure1Panel> figure1_panels() {
  struct Default {
    const char* name;
    double lambda, d, half_span;
  };
  constexpr Default kDefaults[] = {
      {"a", -0.5, 1.0, 10.0}, {"b", 0.0, 1.0, 10.0}, {"c", 1.0, 0.25, 20.0}, {"d", 1.8, 1.0, 10.0}};
  std::vector<Figure1Panel> panels;
  for (const auto& def : kDefaults) {
    Figure1Panel panel;
    panel.name = def.name;
    panel.lambda = def.lambda;
    panel.d = def.d;
    panel.half_span = def.half_span;
    const CurvatureEnergy energy = CurvatureEnergy::entropy(def.lambda);
    panel.profile = integrate_profile(energy, def.d, def.half_span, 1e-11);
    panel.curve = reconstruct_curve(panel.profile);
    panel.extrema = profile_extrema(panel.profile);

    // Composite Simpson over the uniform profile grid, trapezoid on a leftover interval.
    const auto& smp = panel.profile.samples;
    const double h = panel.profile.spacing();
    const std::size_t intervals = smp.size() - 1;
    const std::size_t even = intervals - intervals % 2;
    double turning = 0.0;
    for (std::size_t i = 0; i + 2 <= even; i += 2)
      turning += h / 3.0 * (smp[i].kappa + 4.0 * smp[i + 1].kappa + smp[i + 2].kappa);
    if (even < intervals) turning += 0.5 * h * (smp[even].kappa + smp[even + 1].kappa);
    panel.turning = turning;
    panels.push_back(std::move(panel));
  }
  return panels;
}

std::string figure1_svg(const Figure1Panel& panel) {
  const Json meta{{"p", 1},
                  {"lambda", clean(panel.lambda)},
                  {"d", clean(panel.d)},
                  {"half_span", clean(panel.half_span)},
                  {"V", Json::array({0, 1})},
                  {"kappa_min", clean(panel.extrema.min)},
                  {"kappa_max", clean(panel.extrema.max)},
                  {"turning", clean(panel.turning)}};
  SvgOptions options;
  options.title = fmt::format("p = 1, lambda = {}, d = {}", panel.lambda, panel.d);
  options.translation_arrow = true;
  options.metadata = meta.dump();
  return render_svg({SvgCurve{panel.curve.points, false}}, options);
}

}  // namespace curveflow
