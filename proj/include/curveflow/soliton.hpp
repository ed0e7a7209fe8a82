#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curveflow/energy.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

struct ProfileSample {
  double s = 0.0;
  double kappa = 0.0;
  double kappa_s = 0.0;
};

/// Curvature of a critical curve sampled on a uniform arc-length grid.
struct CurvatureProfile {
  std::vector<ProfileSample> samples;
  double d = 1.0;
  CurvatureEnergy energy;
  CurvatureRange range;
  /// Index of the sample at s = 0 (the starting vertex).
  std::size_t origin = 0;
  /// max |first_integral − d| / d over the samples.
  double first_integral_drift = 0.0;
  /// Set when integration stopped early on a κ → 0⁺ tail.
  bool truncated = false;

  double spacing() const { return samples.size() > 1 ? samples[1].s - samples[0].s : 0.0; }
  double s_min() const { return samples.front().s; }
  double s_max() const { return samples.back().s; }
};

struct ProfileOptions {
  /// Requested output grid spacing; the actual spacing divides half_span
  /// evenly. Zero picks min(0.01, 0.004/κ_scale) so chords stay within 1e-6
  /// of the arc length.
  double output_step = 0.0;
  std::size_t max_steps = 1'000'000;
  /// Tails with κ below this are cut off (convex kinds only).
  double kappa_floor = 1e-12;
};

/// Integrates κ_ss = (κP − κ²Ṗ − P⃛κ_s²)/P̈ outward from the vertex
/// κ(0) = curvature_range(energy, d).vertex, κ_s(0) = 0 over
/// [−half_span, half_span] with local error tolerance step_tol.
CurvatureProfile integrate_profile(const CurvatureEnergy& energy, double d, double half_span, double step_tol,
                                   const ProfileOptions& options = {});

/// Second κ-derivative implied by the Euler-Lagrange equation.
double el_kappa_ss(const CurvatureEnergy& energy, double kappa, double kappa_s);

/// κ and κ_s at arbitrary s by cubic Hermite interpolation of the profile.
ProfileSample profile_at(const CurvatureProfile& profile, double s);

struct CurvatureExtrema {
  double min = 0.0;
  double max = 0.0;
};
/// Extreme curvatures along the profile, refined between samples at the
/// zeros of κ_s.
CurvatureExtrema profile_extrema(const CurvatureProfile& profile);

/// Canonical-frame curve of a profile: x1 = ∫(κṖ − P)/√d (x1(0) = 0,
/// composite Simpson) and x2 = −Ṗ(κ)/√d. In this frame the Killing field is
/// √d·∂x1 and the soliton translates along V = (0, 1).
PlaneCurve reconstruct_curve(const CurvatureProfile& profile);

struct QuadratureOptions {
  std::size_t samples = 201;
  /// Move endpoints sitting on a root of d − (κṖ − P)² inward by 1e-10
  /// instead of throwing SingularEndpoint.
  bool offset_singular_endpoints = false;
};

struct QuadratureCurve {
  PlaneCurve curve;
  /// Accumulated quadrature error estimate (plus the omitted endpoint tail).
  double error_estimate = 0.0;
};

/// Curve sampled in the curvature parameter on the κ_s > 0 branch, with
/// x1(κ) and s(κ) from one adaptive quadrature each, measured from kappa_lo.
QuadratureCurve quadrature_parameterization(const CurvatureEnergy& energy, double d, double kappa_lo,
                                            double kappa_hi, const QuadratureOptions& options = {});

struct KillingComponents {
  double tangential = 0.0;
  double normal = 0.0;
};
/// 𝒥 = (κṖ − P)T + (dṖ/ds)N at a profile sample; |𝒥|² = d on critical curves.
KillingComponents killing_field(const CurvatureProfile& profile, std::size_t index);

/// 𝒥 = (κṖ − P)T + P̈κ_s·N as a plane vector.
Vec2 killing_vector(const CurvatureEnergy& energy, double kappa, double kappa_s, Vec2 tangent, Vec2 normal);

/// Translation direction of a critical curve: the counter-clockwise rotation
/// of the mean Killing vector, normalized. Returns (0, 1) in the canonical
/// frame. Throws DomainError when the mean vector vanishes.
Vec2 translation_direction(const PlaneCurve& curve, const CurvatureEnergy& energy,
                           std::span<const double> kappa_s);

/// max_i |F(κ_i) + b − a⟨N_i, V⟩|.
double soliton_residual(const PlaneCurve& curve, const SolitonProblem& problem);

/// Points of a profile-reconstructed curve where the curvature equals each
/// target, taken on the arc adjacent to the vertex where sign(κ_s) = branch.
std::vector<Vec2> points_at_curvature(const CurvatureProfile& profile, const PlaneCurve& curve,
                                      std::span<const double> targets, int branch = +1);

}  // namespace curveflow
