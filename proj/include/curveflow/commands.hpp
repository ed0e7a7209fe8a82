#pragma once

#include <exception>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/energy.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/soliton.hpp"

namespace curveflow {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int no_solution = 2;
inline constexpr int domain = 3;
inline constexpr int stability = 4;
}  // namespace exit_code

/// Process exit code for an exception escaping a command.
int exit_code_for(const std::exception& error);

struct SolitonRequest {
  FlowMode mode = FlowMode::Power;
  double p = 1.0;
  double b = 0.0;
  double d = 1.0;
  double half_span = 8.0;
  double tol = 1e-10;
};

struct SolitonRun {
  SolitonProblem problem;
  CurvatureEnergy energy;
  CurvatureProfile profile;
  PlaneCurve curve;
  double soliton_residual = 0.0;
  /// Euler-Lagrange residual with κ_ss from finite differences of κ_s.
  double el_residual = 0.0;
};

/// energy_from_flow → integrate_profile → reconstruct_curve → soliton_residual.
SolitonRun run_soliton(const SolitonRequest& request);
nlohmann::ordered_json soliton_metadata(const SolitonRequest& request, const SolitonRun& run);

struct FlowRun {
  Trajectory trajectory;
  std::optional<TranslationFit> fit;
};

/// Translation fits with shape_residual below this count as translating.
inline constexpr double kTranslatingShapeTolerance = 1e-2;

FlowRun run_flow(const PlaneCurve& initial, const FlowConfig& config, double interior_margin);
nlohmann::ordered_json trajectory_json(const FlowRun& run, const std::vector<std::string>& snapshot_paths);

struct VerifyReport {
  double el_residual_max = 0.0;
  double first_integral_drift = 0.0;
  double d_estimate = 0.0;
  double soliton_residual_max = 0.0;
  double a = 0.0;
  Vec2 V{};
  bool pass = false;
};

/// Both sides of the soliton/critical-curve equivalence for a sampled curve:
/// the Euler-Lagrange residual of the dictionary energy (derivatives of Ṗ by
/// finite differences in s) and the soliton residual for the dual flow, with
/// V the rotated mean Killing vector. Only samples two or more away from the
/// ends count. PASS iff both maxima are below 1e-3.
VerifyReport verify_curve(const PlaneCurve& curve, FlowMode mode, double p, double b);
nlohmann::ordered_json verify_json(const VerifyReport& report);

struct Figure1Panel {
  std::string name;
  double lambda = 0.0;
  double d = 1.0;
  double half_span = 10.0;
  CurvatureProfile profile;
  PlaneCurve curve;
  /// ∫κ ds over the panel.
  double turning = 0.0;
  CurvatureExtrema extrema;
};

/// Entropy-energy (p = 1) solitons for λ ∈ {−0.5, 0, 1, 1.8} with
/// d = {1, 1, 0.25, 1}.
std::vector<Figure1Panel> figure1_panels();
std::string figure1_svg(const Figure1Panel& panel);

}  // namespace curveflow
