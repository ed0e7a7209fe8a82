#pragma once

#include "curveflow/geometry.hpp"

namespace curveflow {

enum class EnergyKind { Power, Entropy, Log };

/// Curvature energy integrand P(κ):
///   Power:   κ^p + λ
///   Entropy: κ log κ + λ
///   Log:     log κ + λ
/// The exponent is meaningful for Power only.
struct CurvatureEnergy {
  EnergyKind kind = EnergyKind::Power;
  double p = 2.0;
  double lambda = 0.0;

  static CurvatureEnergy power(double p, double lambda) { return {EnergyKind::Power, p, lambda}; }
  static CurvatureEnergy entropy(double lambda) { return {EnergyKind::Entropy, 1.0, lambda}; }
  static CurvatureEnergy log(double lambda) { return {EnergyKind::Log, 0.0, lambda}; }

  /// False only for Power with a nonnegative integer exponent.
  bool requires_positive_curvature() const;
  /// P is affine in κ (Power with p ∈ {0, 1}); its Euler-Lagrange equation
  /// reduces to −λκ and no nonconstant critical curve exists.
  bool is_degenerate() const;

  friend bool operator==(const CurvatureEnergy&, const CurvatureEnergy&) = default;
};

/// P and its first three κ-derivatives.
struct EnergyJet {
  double P = 0.0;
  double dP = 0.0;
  double ddP = 0.0;
  double dddP = 0.0;
};

enum class FlowMode { Power, Log };

/// Constants of ∂X/∂t = (1/a)(F(κ) + b)N with F(κ) = κ^p or log κ, together
/// with the unit translation direction V of a soliton.
struct SolitonProblem {
  FlowMode mode = FlowMode::Power;
  double p = 1.0;
  double a = 1.0;
  double b = 0.0;
  Vec2 V{0.0, 1.0};

  static SolitonProblem power_flow(double p, double a, double b, Vec2 V = {0.0, 1.0}) {
    return {FlowMode::Power, p, a, b, V};
  }
  static SolitonProblem log_flow(double a, double b, Vec2 V = {0.0, 1.0}) {
    return {FlowMode::Log, 0.0, a, b, V};
  }

  /// Throws DomainError unless a ≠ 0 and |V| = 1.
  void validate() const;
  bool requires_positive_curvature() const;
};

EnergyJet evaluate(const CurvatureEnergy& energy, double kappa);

/// Energy whose critical curves are the translating solitons of `problem`.
CurvatureEnergy energy_from_flow(const SolitonProblem& problem);

/// Inverse dictionary with a fixed by (1/a)(F(κ) + b) = (κṖ − P)/√d and
/// V = (0, 1). Throws DegenerateEnergy for affine integrands.
SolitonProblem flow_from_energy(const CurvatureEnergy& energy, double d);

/// d²Ṗ/ds² + κ²Ṗ − κP expanded by the chain rule.
double el_residual(const CurvatureEnergy& energy, double kappa, double kappa_s, double kappa_ss);

/// (dṖ/ds)² + (κṖ − P)².
double first_integral(const CurvatureEnergy& energy, double kappa, double kappa_s);

/// κṖ − P, the tangential component of the Killing field.
double tangential_killing(const CurvatureEnergy& energy, double kappa);

/// F(κ): κ^p or log κ, without the additive b.
double speed_law(const SolitonProblem& problem, double kappa);
/// dF/dκ.
double speed_law_derivative(const SolitonProblem& problem, double kappa);

/// Admissible curvature interval of the solitons with first integral d.
///
/// `vertex` is the largest positive root of (κṖ − P)² = d; it is where κ_s
/// vanishes and where profiles are started. The other end is either a second
/// root, the open end κ → 0⁺ (`lo_open`), or +∞ (`hi_unbounded`).
struct CurvatureRange {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_unbounded = false;
  double vertex = 0.0;

  bool contains(double kappa) const;
};

/// Throws NoSolitonError when no nonconstant soliton exists at (energy, d).
CurvatureRange curvature_range(const CurvatureEnergy& energy, double d);

}  // namespace curveflow
