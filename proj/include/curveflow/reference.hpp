#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "curveflow/energy.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

enum class ReferenceShape { GrimReaper, Catenary, Cycloid, Parabola, Circle, Line, Elastica };

/// A named special curve. `parameter` is d for GrimReaper and Elastica, the
/// scale c for Catenary (y = c·cosh(x/c)), r for Cycloid, the focal length for
/// Parabola (y = x²/(4f)) and R for Circle; it is unused for Line. `span` is
/// the arc-length half-width of open curves.
struct ReferenceKind {
  ReferenceShape shape = ReferenceShape::Line;
  double parameter = 1.0;
  double span = 1.0;

  static ReferenceKind grim_reaper(double d, double span) { return {ReferenceShape::GrimReaper, d, span}; }
  static ReferenceKind catenary(double scale, double span) { return {ReferenceShape::Catenary, scale, span}; }
  static ReferenceKind cycloid(double r, double span) { return {ReferenceShape::Cycloid, r, span}; }
  static ReferenceKind parabola(double focal, double span) { return {ReferenceShape::Parabola, focal, span}; }
  static ReferenceKind circle(double radius) { return {ReferenceShape::Circle, radius, 0.0}; }
  static ReferenceKind line(double span) { return {ReferenceShape::Line, 1.0, span}; }
  static ReferenceKind elastica(double d, double span) { return {ReferenceShape::Elastica, d, span}; }
};

struct CurvatureJet {
  double kappa = 0.0;
  double kappa_s = 0.0;
  double kappa_ss = 0.0;
};

struct ReferenceCurve {
  PlaneCurve curve;
  /// Curvature and its first two arc-length derivatives at s.
  std::function<CurvatureJet(double)> exact;
  /// False for the elastica, whose curvature comes from the profile integrator.
  bool closed_form = true;
};

/// Uniform arc-length samples of a reference curve. Open curves are sampled on
/// [−span, span] with s = 0 at the vertex and positive orientation (κ ≥ 0);
/// circles run counter-clockwise from (R, 0).
ReferenceCurve make_reference(const ReferenceKind& kind, std::size_t n_samples);

struct DictionaryEnergy {
  CurvatureEnergy energy;
  double d = 0.0;
};
/// Energy for which the reference curve is critical, with its first-integral
/// value. Empty for circles and lines.
std::optional<DictionaryEnergy> dictionary_energy(const ReferenceKind& kind);

}  // namespace curveflow
