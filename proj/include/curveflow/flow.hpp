#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "curveflow/energy.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// Polyline with arc length, vertex frame and estimated curvature filled in.
/// Vertex tangents bisect the adjacent edge directions; free ends use their
/// single edge.
PlaneCurve make_polyline(std::vector<Vec2> points, Boundary boundary);

/// Turning-angle curvature κ_i = 2·sin(Δθ_i/2)/ℓ_i, with ℓ_i the mean of the
/// adjacent edge lengths. Exact on regular polygons (κ = 1/circumradius).
/// Free ends copy their neighbour.
std::vector<double> estimate_curvature(const PlaneCurve& polyline);

/// (F(κ) + b)/a with F = κ^p or log κ.
double normal_speed(const SolitonProblem& problem, double kappa);

/// Largest explicit step cfl·h²·|a|/max|F′(κ_i)|, h the shortest edge.
/// Infinite when F′ vanishes on every sample.
double stable_step(const PlaneCurve& state, const SolitonProblem& problem, double cfl);

struct StepOptions {
  double cfl = 0.25;
};

/// One forward-Euler step X_i ← X_i + dt·speed(κ_i)·N_i. Free endpoints move
/// with the speed extrapolated quadratically from the three nearest interior
/// samples. Throws StepTooLarge when dt exceeds stable_step, and
/// BackwardParabolic when F′(κ)/a < 0 somewhere on the curve.
PlaneCurve step(const PlaneCurve& state, const SolitonProblem& problem, double dt, const StepOptions& options = {});

/// Uniform arc-length redistribution of n points by cubic interpolation in
/// the chord-length parameter. Endpoints (or the first point of a closed
/// curve) are kept.
PlaneCurve resample_uniform(const PlaneCurve& curve, std::size_t n);

/// Ratio of the longest to the shortest edge.
double edge_ratio(const PlaneCurve& curve);

struct FlowConfig {
  SolitonProblem problem;
  double t_end = 1.0;
  double cfl = 0.25;
  std::size_t snapshots = 10;
  Boundary boundary = Boundary::FreeEnds;
  /// Resample when edge_ratio exceeds this.
  double resample_threshold = 3.0;
  std::size_t max_steps = 20'000'000;
  /// Fixed time step; 0 uses stable_step. A fixed step above the stability
  /// bound propagates StepTooLarge out of evolve.
  double dt = 0.0;

  void validate() const;
};

enum class StopReason { Completed, ExtinctionReached, DomainExit };

struct Trajectory {
  /// times[k] = k·t_end/snapshots for every snapshot reached.
  std::vector<double> times;
  std::vector<PlaneCurve> states;
  /// Times at which the polyline was redistributed.
  std::vector<double> resample_times;
  StopReason stop = StopReason::Completed;
  std::string stop_message;
  double stop_time = 0.0;
  std::size_t steps = 0;
};

/// Repeated step with dt = stable_step, landing exactly on snapshot times.
/// The initial curve must be admissible for the flow; later loss of
/// admissibility or collapse of the polyline ends the run with a recorded
/// StopReason.
Trajectory evolve(const PlaneCurve& initial, const FlowConfig& config);

struct TranslationFit {
  Vec2 velocity;
  double shape_residual = 0.0;
  double linearity_residual = 0.0;
  /// Per-snapshot translation v_k.
  std::vector<Vec2> offsets;
};

/// Rigid-translation fit of every snapshot to the first. Each v_k minimizes
/// the squared distance from the interior samples of snapshot k, shifted by
/// −v_k, to the first snapshot's polyline, so tangential sliding of samples
/// does not count as misfit. velocity is the least-squares slope of v_k
/// against t_k through the origin.
TranslationFit fit_translation(const Trajectory& trajectory, double interior_margin);

}  // namespace curveflow
