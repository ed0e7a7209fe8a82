#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace curveflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double k) {
    x *= k;
    y *= k;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
/// Counter-clockwise rotation through π/2.
constexpr Vec2 rotate_ccw(Vec2 a) { return {-a.y, a.x}; }

enum class Boundary { Closed, FreeEnds };

/// Arc-length ordered samples of a planar curve with a Frenet frame.
///
/// `normals[i]` is the counter-clockwise rotation of `tangents[i]`, and
/// `kappas[i]` is the signed curvature with respect to that normal, so a
/// positively oriented circle has κ > 0 and inward normals. For closed curves
/// the first point is not repeated at the end.
struct PlaneCurve {
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;
  std::vector<Vec2> normals;
  std::vector<double> kappas;
  std::vector<double> arc;
  Boundary boundary = Boundary::FreeEnds;
  /// Arc length of one full turn of a closed curve; 0 means "closing chord".
  double period = 0.0;

  std::size_t size() const noexcept { return points.size(); }
  bool closed() const noexcept { return boundary == Boundary::Closed; }
  /// Total length: `period` for closed curves that set it, otherwise the
  /// arc span plus the closing chord.
  double length() const;
};

/// Cumulative chord length starting at zero.
std::vector<double> chord_arc_length(std::span<const Vec2> points);

/// Signed enclosed area (shoelace); positive for counter-clockwise polygons.
double polygon_area(std::span<const Vec2> points);

/// Proper rigid motion x ↦ R(angle)·x + shift.
struct RigidMotion {
  double angle = 0.0;
  Vec2 shift{};

  Vec2 apply(Vec2 p) const {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + shift;
  }
};

/// Least-squares rigid motion carrying `moving[i]` onto `fixed[i]` (2D Kabsch,
/// no reflection).
RigidMotion fit_rigid_motion(std::span<const Vec2> moving, std::span<const Vec2> fixed);

/// Largest pointwise distance between matched samples after the best rigid fit.
double aligned_max_distance(std::span<const Vec2> moving, std::span<const Vec2> fixed);

/// Cubic Hermite interpolation of a curve position at arc length `s`, using
/// the sample tangents as derivatives. Requires a unit-speed sampling.
Vec2 hermite_point(const PlaneCurve& curve, double s);

}  // namespace curveflow
