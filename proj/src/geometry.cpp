#include "curveflow/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace curveflow {

double PlaneCurve::length() const {
  if (points.size() < 2) return 0.0;
  if (closed() && period > 0.0) return period;
  double total = arc.empty() ? chord_arc_length(points).back() : arc.back() - arc.front();
  if (closed()) total += norm(points.front() - points.back());
  return total;
}

std::vector<double> chord_arc_length(std::span<const Vec2> points) {
  std::vector<double> s(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) s[i] = s[i - 1] + norm(points[i] - points[i - 1]);
  return s;
}

double polygon_area(std::span<const Vec2> points) {
  const std::size_t n = points.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(points[i], points[(i + 1) % n]);
  return 0.5 * twice;
}

RigidMotion fit_rigid_motion(std::span<const Vec2> moving, std::span<const Vec2> fixed) {
  if (moving.size() != fixed.size() || moving.empty())
    throw std::invalid_argument("fit_rigid_motion: point sets must be non-empty and matched");
  Vec2 cm{}, cf{};
  for (std::size_t i = 0; i < moving.size(); ++i) {
    cm += moving[i];
    cf += fixed[i];
  }
  cm = cm / static_cast<double>(moving.size());
  cf = cf / static_cast<double>(fixed.size());
  double sum_dot = 0.0;
  double sum_cross = 0.0;
  for (std::size_t i = 0; i < moving.size(); ++i) {
    const Vec2 a = moving[i] - cm;
    const Vec2 b = fixed[i] - cf;
    sum_dot += dot(a, b);
    sum_cross += cross(a, b);
  }
  RigidMotion motion;
  motion.angle = std::atan2(sum_cross, sum_dot);
  motion.shift = cf - RigidMotion{motion.angle, {}}.apply(cm);
  return motion;
}

double aligned_max_distance(std::span<const Vec2> moving, std::span<const Vec2> fixed) {
  const RigidMotion motion = fit_rigid_motion(moving, fixed);
  double worst = 0.0;
  for (std::size_t i = 0; i < moving.size(); ++i)
    worst = std::max(worst, norm(motion.apply(moving[i]) - fixed[i]));
  return worst;
}

Vec2 hermite_point(const PlaneCurve& curve, double s) {
  const auto& arc = curve.arc;
  if (arc.size() < 2 || s < arc.front() || s > arc.back())
    throw std::out_of_range("hermite_point: arc length outside the sampled span");
  auto it = std::upper_bound(arc.begin(), arc.end(), s);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - arc.begin()), arc.size() - 1);
  const std::size_t lo = hi - 1;
  const double h = arc[hi] - arc[lo];
  const double t = (s - arc[lo]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * curve.points[lo] + (h10 * h) * curve.tangents[lo] + h01 * curve.points[hi] +
         (h11 * h) * curve.tangents[hi];
}

}  // namespace curveflow
