#pragma once

#include <span>

#include "curveflow/energy.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// φ(s) = A·exp(−1/(1 − u²)) for u = (s − s0)/r inside |u| < 1, zero outside.
struct BumpPerturbation {
  double center = 0.0;
  double radius = 1.0;
  double amplitude = 1.0;

  double operator()(double s) const;
  /// A·∫ exp(−1/(1 − u²)) du over (−1, 1), times r.
  double integral() const;
  /// Peak value A/e.
  double peak() const;
};

struct FunctionalValue {
  double value = 0.0;
  /// Largest arc-length step of the quadrature grid.
  double spacing = 0.0;
};

/// Θ(γ) = ∫ P(κ) ds by composite Simpson on the curve's arc-length samples
/// (closed curves include the wrap-around interval).
FunctionalValue functional_value(const PlaneCurve& curve, const CurvatureEnergy& energy);

/// γ + ε·Σφ_j·N with curvature re-estimated from the polyline. Samples inside
/// each displaced window are redistributed to equal arc-length spacing
/// between the window's fixed end samples; samples outside are unchanged.
PlaneCurve perturb(const PlaneCurve& curve, std::span<const BumpPerturbation> bumps, double epsilon);
PlaneCurve perturb(const PlaneCurve& curve, const BumpPerturbation& bump, double epsilon);

/// [Θ(γ_{+ε}) − Θ(γ_{−ε})]/(2ε). With N the counter-clockwise normal this
/// approximates +∫ EL·φ ds, EL the el_residual of the curve.
double first_variation(const PlaneCurve& curve, const CurvatureEnergy& energy,
                       std::span<const BumpPerturbation> bumps, double epsilon);
double first_variation(const PlaneCurve& curve, const CurvatureEnergy& energy, const BumpPerturbation& bump,
                       double epsilon);

}  // namespace curveflow
