#include "curveflow/variation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/quadrature.hpp"

namespace curveflow {
namespace {

// ∫ exp(−1/(1 − u²)) du over (−1, 1).
constexpr double kUnitBumpIntegral = 0.443993816168079437823;

void require_support(const PlaneCurve& curve, const BumpPerturbation& bump) {
  if (!(bump.radius > 0.0)) throw DomainError("perturb: bump radius must be positive");
  const double lo = curve.arc.front();
  const double hi = curve.closed() ? curve.arc.front() + curve.length() : curve.arc.back();
  if (!(bump.center - bump.radius > lo && bump.center + bump.radius < hi))
    throw SupportExceedsCurve("perturb: bump support (" + std::to_string(bump.center - bump.radius) + ", " +
                              std::to_string(bump.center + bump.radius) + ") is not inside (" + std::to_string(lo) +
                              ", " + std::to_string(hi) + ")");
}

// Moves the samples strictly between the fixed guard indices lo and hi to
// equal chord-length spacing, by cubic interpolation in the chord parameter.
// Indices wrap for closed curves.
void redistribute(std::vector<Vec2>& pts, bool closed, long lo, long hi) {
  const long n = static_cast<long>(pts.size());
  auto at = [&](long i) { return pts[static_cast<std::size_t>(closed ? ((i % n) + n) % n : i)]; };
  const long first = closed ? lo - 1 : std::max(0L, lo - 1);
  const long last = closed ? hi + 1 : std::min(n - 1, hi + 1);
  std::vector<Vec2> local;
  std::vector<double> chord{0.0};
  for (long i = first; i <= last; ++i) {
    local.push_back(at(i));
    if (local.size() > 1) chord.push_back(chord.back() + norm(local.back() - local[local.size() - 2]));
  }
  const long m = static_cast<long>(local.size());
  const double c0 = chord[static_cast<std::size_t>(lo - first)];
  const double c1 = chord[static_cast<std::size_t>(hi - first)];
  std::vector<Vec2> moved;
  long seg = 0;
  for (long k = lo + 1; k < hi; ++k) {
    const double target = c0 + (c1 - c0) * static_cast<double>(k - lo) / static_cast<double>(hi - lo);
    while (seg + 2 < m && chord[static_cast<std::size_t>(seg + 1)] <= target) ++seg;
    const long start = std::clamp(seg - 1, 0L, m - 4);
    Vec2 value{};
    for (long i = start; i < start + 4; ++i) {
      double w = 1.0;
      for (long j = start; j < start + 4; ++j)
        if (j != i) w *= (target - chord[static_cast<std::size_t>(j)]) / (chord[static_cast<std::size_t>(i)] - chord[static_cast<std::size_t>(j)]);
      value += w * local[static_cast<std::size_t>(i)];
    }
    moved.push_back(value);
  }
  for (long k = lo + 1; k < hi; ++k) {
    const long idx = closed ? ((k % n) + n) % n : k;
    pts[static_cast<std::size_t>(idx)] = moved[static_cast<std::size_t>(k - lo - 1)];
  }
}

}  // namespace

double BumpPerturbation::operator()(double s) const {
  const double u = (s - center) / radius;
  if (!(std::abs(u) < 1.0)) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - u * u));
}

double BumpPerturbation::integral() const { return amplitude * radius * kUnitBumpIntegral; }

double BumpPerturbation::peak() const { return amplitude * std::exp(-1.0); }

FunctionalValue functional_value(const PlaneCurve& curve, const CurvatureEnergy& energy) {
  const std::size_t n = curve.size();
  if (n < 2 || curve.kappas.size() != n || curve.arc.size() != n)
    throw DomainError("functional_value: curve needs arc length and curvature at every sample");
  std::vector<double> s(curve.arc.begin(), curve.arc.end());
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = evaluate(energy, curve.kappas[i]).P;
  if (curve.closed()) {
    s.push_back(curve.arc.front() + curve.length());
    f.push_back(f.front());
  }
  FunctionalValue out;
  out.value = simpson(s, f);
  for (std::size_t i = 1; i < s.size(); ++i) out.spacing = std::max(out.spacing, s[i] - s[i - 1]);
  return out;
}

PlaneCurve perturb(const PlaneCurve& curve, std::span<const BumpPerturbation> bumps, double epsilon) {
  if (curve.normals.size() != curve.size() || curve.arc.size() != curve.size())
    throw DomainError("perturb: curve needs normals and arc length at every sample");
  for (const auto& bump : bumps) require_support(curve, bump);
  if (epsilon == 0.0) return curve;
  std::vector<Vec2> moved(curve.points);
  std::vector<bool> touched(moved.size(), false);
  for (std::size_t i = 0; i < moved.size(); ++i) {
    double phi = 0.0;
    for (const auto& bump : bumps) phi += bump(curve.arc[i]);
    touched[i] = phi != 0.0;
    moved[i] += (epsilon * phi) * curve.normals[i];
  }
  // Only the displaced windows are redistributed, so disjoint bumps leave
  // each other's samples untouched.
  const long n = static_cast<long>(moved.size());
  for (long i = 0; i < n;) {
    if (!touched[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    long j = i;
    while (j < n && touched[static_cast<std::size_t>(j)]) ++j;
    redistribute(moved, curve.closed(), i - 1, j);
    i = j;
  }
  return make_polyline(std::move(moved), curve.boundary);
}

PlaneCurve perturb(const PlaneCurve& curve, const BumpPerturbation& bump, double epsilon) {
  return perturb(curve, std::span<const BumpPerturbation>(&bump, 1), epsilon);
}

double first_variation(const PlaneCurve& curve, const CurvatureEnergy& energy,
                       std::span<const BumpPerturbation> bumps, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("first_variation: epsilon must be positive");
  const double plus = functional_value(perturb(curve, bumps, epsilon), energy).value;
  const double minus = functional_value(perturb(curve, bumps, -epsilon), energy).value;
  return (plus - minus) / (2.0 * epsilon);
}

double first_variation(const PlaneCurve& curve, const CurvatureEnergy& energy, const BumpPerturbation& bump,
                       double epsilon) {
  return first_variation(curve, energy, std::span<const BumpPerturbation>(&bump, 1), epsilon);
}

}  // namespace curveflow
