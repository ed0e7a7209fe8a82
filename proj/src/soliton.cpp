#include "curveflow/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/ode.hpp"
#include "curveflow/quadrature.hpp"
#include "curveflow/roots.hpp"

namespace curveflow {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Hermite {
  double h00, h10, h01, h11;
  explicit Hermite(double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    h00 = 2 * t3 - 3 * t2 + 1;
    h10 = t3 - 2 * t2 + t;
    h01 = -2 * t3 + 3 * t2;
    h11 = t3 - t2;
  }
  double operator()(double y0, double dy0, double y1, double dy1, double h) const {
    return h00 * y0 + h10 * h * dy0 + h01 * y1 + h11 * h * dy1;
  }
};

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError(std::string(name) + " must be positive and finite");
}

// Integrates one direction from the vertex, appending samples at s = ±j·h.
// Returns true when the run stopped early on a κ → 0⁺ tail.
bool integrate_branch(const CurvatureEnergy& energy, double d, const CurvatureRange& range, double h, std::size_t n,
                      double direction, double step_tol, const ProfileOptions& options,
                      std::vector<ProfileSample>& out) {
  const bool convex = energy.requires_positive_curvature();
  auto rhs = [&](double, const OdeState<2>& y) -> OdeState<2> {
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || (convex && !(y[0] > 0.0))) return {kNaN, kNaN};
    return {y[1], el_kappa_ss(energy, y[0], y[1])};
  };
  OdeTolerance tol{step_tol, step_tol, 1e-13, options.max_steps};
  DormandPrince<2> stepper(0.0, {range.vertex, 0.0}, std::min(h, 1e-3), tol);

  // Global error accumulates over many steps; exits are judged against a
  // margin well above the local tolerance. Integer exponents may carry κ
  // through zero, so admissibility is tested on (κṖ − P)² ≤ d directly.
  const double margin = std::sqrt(step_tol);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = direction * static_cast<double>(j) * h;
    stepper.advance(rhs, s);
    const auto& y = stepper.state();
    const double kappa = y[0];
    if (convex && kappa < options.kappa_floor) return true;
    const double u = tangential_killing(energy, kappa);
    const bool escaped = convex ? !range.contains(kappa) && u * u - d > margin * std::max(1.0, d)
                                : u * u - d > margin * std::max(1.0, d);
    if (escaped)
      throw DomainExit("integrate_profile: κ = " + std::to_string(kappa) + " left the admissible range at s = " +
                       std::to_string(s));
    out.push_back({s, kappa, y[1]});
  }
  return false;
}

}  // namespace

double el_kappa_ss(const CurvatureEnergy& energy, double kappa, double kappa_s) {
  const EnergyJet j = evaluate(energy, kappa);
  return (kappa * j.P - kappa * kappa * j.dP - j.dddP * kappa_s * kappa_s) / j.ddP;
}

CurvatureProfile integrate_profile(const CurvatureEnergy& energy, double d, double half_span, double step_tol,
                                   const ProfileOptions& options) {
  if (energy.is_degenerate())
    throw DegenerateEnergy("integrate_profile: P(κ) is affine in κ; P̈ vanishes identically");
  require_positive(d, "d");
  require_positive(half_span, "half_span");
  require_positive(step_tol, "step_tol");
  if (options.output_step < 0.0 || !std::isfinite(options.output_step))
    throw DomainError("output_step must be nonnegative (0 selects the spacing automatically)");

  CurvatureProfile profile;
  profile.d = d;
  profile.energy = energy;
  profile.range = curvature_range(energy, d);

  double step = options.output_step;
  if (step == 0.0) {
    // Chords of a unit-speed curve fall short of the arc by (κh)²/24.
    const double kappa_scale = profile.range.hi_unbounded ? 4.0 * profile.range.lo : profile.range.hi;
    step = std::min(1e-2, 4e-3 / std::max(kappa_scale, 1e-300));
  }
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(half_span / step)));
  const double h = half_span / static_cast<double>(n);

  std::vector<ProfileSample> forward;
  std::vector<ProfileSample> backward;
  forward.reserve(n);
  backward.reserve(n);
  const bool cut_fwd = integrate_branch(energy, d, profile.range, h, n, +1.0, step_tol, options, forward);
  const bool cut_bwd = integrate_branch(energy, d, profile.range, h, n, -1.0, step_tol, options, backward);
  profile.truncated = cut_fwd || cut_bwd;

  profile.samples.reserve(forward.size() + backward.size() + 1);
  profile.samples.assign(backward.rbegin(), backward.rend());
  profile.origin = profile.samples.size();
  profile.samples.push_back({0.0, profile.range.vertex, 0.0});
  profile.samples.insert(profile.samples.end(), forward.begin(), forward.end());

  double drift = 0.0;
  for (const auto& sample : profile.samples)
    drift = std::max(drift, std::abs(first_integral(energy, sample.kappa, sample.kappa_s) - d) / d);
  profile.first_integral_drift = drift;
  return profile;
}

ProfileSample profile_at(const CurvatureProfile& profile, double s) {
  const auto& samples = profile.samples;
  if (samples.size() < 2 || s < samples.front().s || s > samples.back().s)
    throw std::out_of_range("profile_at: s outside the integrated span");
  const double h = profile.spacing();
  auto cell = static_cast<std::size_t>(std::floor((s - samples.front().s) / h));
  cell = std::min(cell, samples.size() - 2);
  const ProfileSample& a = samples[cell];
  const ProfileSample& b = samples[cell + 1];
  const Hermite w((s - a.s) / h);
  const double kss_a = el_kappa_ss(profile.energy, a.kappa, a.kappa_s);
  const double kss_b = el_kappa_ss(profile.energy, b.kappa, b.kappa_s);
  return {s, w(a.kappa, a.kappa_s, b.kappa, b.kappa_s, h), w(a.kappa_s, kss_a, b.kappa_s, kss_b, h)};
}

CurvatureExtrema profile_extrema(const CurvatureProfile& profile) {
  const auto& samples = profile.samples;
  CurvatureExtrema ext{samples.front().kappa, samples.front().kappa};
  for (const auto& sample : samples) {
    ext.min = std::min(ext.min, sample.kappa);
    ext.max = std::max(ext.max, sample.kappa);
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double ka = samples[i].kappa_s;
    const double kb = samples[i + 1].kappa_s;
    if (ka == 0.0 || kb == 0.0 || (ka < 0.0) == (kb < 0.0)) continue;
    const double s_star = bisect([&](double s) { return profile_at(profile, s).kappa_s; }, samples[i].s,
                                 samples[i + 1].s, 1e-15);
    const double k_star = profile_at(profile, s_star).kappa;
    ext.min = std::min(ext.min, k_star);
    ext.max = std::max(ext.max, k_star);
  }
  return ext;
}

PlaneCurve reconstruct_curve(const CurvatureProfile& profile) {
  const auto& samples = profile.samples;
  const std::size_t n = samples.size();
  if (n < 3) throw DomainError("reconstruct_curve: profile needs at least three samples");
  const double root_d = std::sqrt(profile.d);
  const double h = profile.spacing();

  std::vector<double> tangential(n);
  for (std::size_t i = 0; i < n; ++i) tangential[i] = tangential_killing(profile.energy, samples[i].kappa) / root_d;
  std::vector<double> x1 = cumulative_simpson(tangential, h);
  const double x1_origin = x1[profile.origin];

  PlaneCurve curve;
  curve.boundary = Boundary::FreeEnds;
  curve.points.reserve(n);
  curve.tangents.reserve(n);
  curve.normals.reserve(n);
  curve.kappas.reserve(n);
  curve.arc.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProfileSample& sample = samples[i];
    const EnergyJet jet = evaluate(profile.energy, sample.kappa);
    const Vec2 velocity{tangential[i], -jet.ddP * sample.kappa_s / root_d};
    const Vec2 tangent = normalized(velocity);
    curve.points.push_back({x1[i] - x1_origin, -jet.dP / root_d});
    curve.tangents.push_back(tangent);
    curve.normals.push_back(rotate_ccw(tangent));
    curve.kappas.push_back(sample.kappa);
    curve.arc.push_back(sample.s);
  }
  return curve;
}

QuadratureCurve quadrature_parameterization(const CurvatureEnergy& energy, double d, double kappa_lo,
                                            double kappa_hi, const QuadratureOptions& options) {
  if (energy.is_degenerate()) throw DegenerateEnergy("quadrature_parameterization: P(κ) is affine in κ");
  require_positive(d, "d");
  if (!(kappa_lo < kappa_hi)) throw DomainError("quadrature_parameterization: need kappa_lo < kappa_hi");
  if (options.samples < 2) throw DomainError("quadrature_parameterization: need at least two samples");
  const CurvatureRange range = curvature_range(energy, d);

  const double root_d = std::sqrt(d);
  auto gap = [&](double k) {
    const double u = tangential_killing(energy, k);
    return d - u * u;
  };
  auto at_root = [&](double k) {
    const double scale = 1e-10 * std::max(1.0, std::abs(k));
    const bool near_lo = !range.lo_open && std::abs(k - range.lo) <= scale;
    const bool near_hi = !range.hi_unbounded && std::abs(k - range.hi) <= scale;
    return near_lo || near_hi || !(gap(k) > 0.0);
  };

  double lo = kappa_lo;
  double hi = kappa_hi;
  double tail_error = 0.0;
  auto ds_dk = [&](double k) { return std::abs(evaluate(energy, k).ddP) / std::sqrt(gap(k)); };
  for (double end : {lo, hi}) {
    if (!at_root(end) && !range.contains(end))
      throw DomainError("quadrature_parameterization: curvature interval is not inside the admissible range");
  }
  for (double* end : {&lo, &hi}) {
    if (!at_root(*end)) continue;
    if (!options.offset_singular_endpoints)
      throw SingularEndpoint("quadrature_parameterization: endpoint κ = " + std::to_string(*end) +
                             " is a root of d − (κṖ − P)²");
    const double eps = 1e-10 * std::max(1.0, std::abs(*end));
    *end += (end == &lo) ? eps : -eps;
    // Inverse-square-root singularity: the omitted tail is about 2ε·f(κ_end).
    tail_error += 2.0 * eps * ds_dk(*end) * std::max(1.0, std::abs(tangential_killing(energy, *end)) / root_d);
  }

  const std::size_t n = options.samples;
  std::vector<double> nodes(n);
  for (std::size_t j = 0; j < n; ++j) nodes[j] = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
  nodes.back() = hi;

  // κ = c − r·cos θ cancels inverse-square-root growth at either end.
  const double centre = 0.5 * (lo + hi);
  const double radius = 0.5 * (hi - lo);
  auto theta_of = [&](double k) { return std::acos(std::clamp((centre - k) / radius, -1.0, 1.0)); };
  auto in_theta = [&](auto&& f) {
    return [&, f](double theta) {
      const double k = std::clamp(centre - radius * std::cos(theta), lo, hi);
      return f(k) * radius * std::sin(theta);
    };
  };
  auto dx_dk = [&](double t) { return tangential_killing(energy, t) / root_d * ds_dk(t); };

  QuadratureCurve result;
  result.error_estimate = tail_error;
  PlaneCurve& curve = result.curve;
  curve.boundary = Boundary::FreeEnds;
  double x1 = 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double k = nodes[j];
    if (j > 0) {
      const double t0 = theta_of(nodes[j - 1]);
      const double t1 = theta_of(k);
      const auto dx = gauss_kronrod(in_theta(dx_dk), t0, t1);
      const auto ds = gauss_kronrod(in_theta(ds_dk), t0, t1);
      x1 += dx.value;
      s += ds.value;
      result.error_estimate += dx.error + ds.error;
    }
    const EnergyJet jet = evaluate(energy, k);
    const double u = k * jet.dP - jet.P;
    const double normal_part = std::sqrt(std::max(0.0, gap(k)));
    // κ_s > 0 branch: P̈κ_s = sign(P̈)·√(d − u²).
    const Vec2 tangent = normalized(Vec2{u, -std::copysign(normal_part, jet.ddP)});
    curve.points.push_back({x1, -jet.dP / root_d});
    curve.tangents.push_back(tangent);
    curve.normals.push_back(rotate_ccw(tangent));
    curve.kappas.push_back(k);
    curve.arc.push_back(s);
  }
  return result;
}

KillingComponents killing_field(const CurvatureProfile& profile, std::size_t index) {
  if (index >= profile.samples.size()) throw std::out_of_range("killing_field: sample index out of range");
  const ProfileSample& sample = profile.samples[index];
  const EnergyJet jet = evaluate(profile.energy, sample.kappa);
  return {sample.kappa * jet.dP - jet.P, jet.ddP * sample.kappa_s};
}

Vec2 killing_vector(const CurvatureEnergy& energy, double kappa, double kappa_s, Vec2 tangent, Vec2 normal) {
  const EnergyJet jet = evaluate(energy, kappa);
  return (kappa * jet.dP - jet.P) * tangent + (jet.ddP * kappa_s) * normal;
}

Vec2 translation_direction(const PlaneCurve& curve, const CurvatureEnergy& energy,
                           std::span<const double> kappa_s) {
  if (kappa_s.size() != curve.size() || curve.size() == 0)
    throw DomainError("translation_direction: need one κ_s per curve sample");
  Vec2 total{};
  for (std::size_t i = 0; i < curve.size(); ++i)
    total += killing_vector(energy, curve.kappas[i], kappa_s[i], curve.tangents[i], curve.normals[i]);
  const Vec2 mean = total / static_cast<double>(curve.size());
  if (!(norm(mean) > 1e-12)) throw DomainError("translation_direction: Killing field averages to zero");
  return normalized(rotate_ccw(mean));
}

double soliton_residual(const PlaneCurve& curve, const SolitonProblem& problem) {
  problem.validate();
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double lhs = speed_law(problem, curve.kappas[i]) + problem.b;
    const double rhs = problem.a * dot(curve.normals[i], problem.V);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<Vec2> points_at_curvature(const CurvatureProfile& profile, const PlaneCurve& curve,
                                      std::span<const double> targets, int branch) {
  const auto& samples = profile.samples;
  // From a maximum κ decreases on both sides, so κ_s > 0 lies at s < 0.
  const bool vertex_is_max = !profile.range.hi_unbounded && profile.range.vertex == profile.range.hi;
  const int direction = (vertex_is_max == (branch > 0)) ? -1 : +1;

  std::vector<Vec2> out;
  out.reserve(targets.size());
  for (double target : targets) {
    std::size_t i = profile.origin;
    bool found = false;
    while (true) {
      const std::size_t next = direction > 0 ? i + 1 : i - 1;
      if ((direction > 0 && next >= samples.size()) || (direction < 0 && i == 0)) break;
      const double fa = samples[i].kappa - target;
      const double fb = samples[next].kappa - target;
      if (fa == 0.0 || (fa < 0.0) != (fb < 0.0) || fb == 0.0) {
        const double s_lo = std::min(samples[i].s, samples[next].s);
        const double s_hi = std::max(samples[i].s, samples[next].s);
        const double s_star =
            bisect([&](double s) { return profile_at(profile, s).kappa - target; }, s_lo, s_hi, 1e-15);
        out.push_back(hermite_point(curve, s_star));
        found = true;
        break;
      }
      i = next;
    }
    if (!found) throw DomainError("points_at_curvature: curvature " + std::to_string(target) + " not on the branch");
  }
  return out;
}

}  // namespace curveflow
