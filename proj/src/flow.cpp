#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curveflow/errors.hpp"

namespace curveflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> edge_lengths(std::span<const Vec2> pts, bool closed) {
  const std::size_t n = pts.size();
  const std::size_t m = closed ? n : n - 1;
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = norm(pts[(i + 1) % n] - pts[i]);
    if (!(out[i] >= 1e-14)) throw DegenerateEdge("edge " + std::to_string(i) + " is shorter than 1e-14");
  }
  return out;
}

std::size_t min_points(Boundary boundary) { return boundary == Boundary::Closed ? 3 : 4; }

// F′(κ)/a at every sample; a negative value means the flow runs the heat
// equation backwards there.
void require_forward_parabolic(const PlaneCurve& curve, const SolitonProblem& problem) {
  double worst = 0.0;
  double scale = 1.0;
  for (double k : curve.kappas) {
    const double g = speed_law_derivative(problem, k) / problem.a;
    worst = std::min(worst, g);
    scale = std::max(scale, std::abs(g));
  }
  if (worst < -1e-8 * scale)
    throw BackwardParabolic("flow is backward parabolic on this curve (F'(κ)/a = " + std::to_string(worst) +
                            " < 0); explicit evolution is ill-posed");
}

// Cubic Lagrange interpolation through four nodes.
Vec2 lagrange4(const double* t, const Vec2* y, double x) {
  Vec2 out{};
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) w *= (x - t[j]) / (t[i] - t[j]);
    out += w * y[i];
  }
  return out;
}

// Closest point on segment [a, b] to q; returns the parameter in [0, 1].
double project_segment(Vec2 a, Vec2 b, Vec2 q) {
  const Vec2 e = b - a;
  return std::clamp(dot(q - a, e) / dot(e, e), 0.0, 1.0);
}

struct Match {
  double distance;  // signed along `normal`
  Vec2 normal;
};

Match closest(std::span<const Vec2> poly, bool closed, Vec2 q) {
  const std::size_t n = poly.size();
  const std::size_t m = closed ? n : n - 1;
  double best = kInf;
  Match out{0.0, {0.0, 1.0}};
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    const double t = project_segment(a, b, q);
    const Vec2 c = a + t * (b - a);
    const double dist = norm(q - c);
    if (dist < best) {
      best = dist;
      const Vec2 normal = rotate_ccw(normalized(b - a));
      out = {dot(q - c, normal), normal};
    }
  }
  return out;
}

}  // namespace

PlaneCurve make_polyline(std::vector<Vec2> points, Boundary boundary) {
  if (points.size() < 3) throw DomainError("polyline needs at least three points");
  const bool closed = boundary == Boundary::Closed;
  const auto lengths = edge_lengths(points, closed);
  const std::size_t n = points.size();

  PlaneCurve curve;
  curve.boundary = boundary;
  curve.points = std::move(points);
  curve.arc.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) curve.arc[i] = curve.arc[i - 1] + lengths[i - 1];
  curve.tangents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i == 0 && !closed;
    const bool last = i + 1 == n && !closed;
    const std::size_t prev = (i + n - 1) % n;
    const std::size_t next = (i + 1) % n;
    const Vec2 in = (curve.points[i] - curve.points[prev]) / lengths[prev % lengths.size()];
    const Vec2 out = (curve.points[next] - curve.points[i]) / lengths[i % lengths.size()];
    if (first) curve.tangents[i] = out;
    else if (last) curve.tangents[i] = in;
    else curve.tangents[i] = normalized(in + out);
  }
  curve.normals.resize(n);
  for (std::size_t i = 0; i < n; ++i) curve.normals[i] = rotate_ccw(curve.tangents[i]);
  curve.kappas = estimate_curvature(curve);
  return curve;
}

std::vector<double> estimate_curvature(const PlaneCurve& polyline) {
  const auto& pts = polyline.points;
  const std::size_t n = pts.size();
  if (n < 3) throw DomainError("estimate_curvature: need at least three points");
  const bool closed = polyline.closed();
  const auto lengths = edge_lengths(pts, closed);

  std::vector<double> kappa(n, 0.0);
  const std::size_t lo = closed ? 0 : 1;
  const std::size_t hi = closed ? n : n - 1;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const Vec2 in = pts[i] - pts[prev];
    const Vec2 out = pts[(i + 1) % n] - pts[i];
    const double turn = std::atan2(cross(in, out), dot(in, out));
    kappa[i] = 2.0 * std::sin(0.5 * turn) / (0.5 * (lengths[prev] + lengths[i]));
  }
  if (!closed) {
    kappa.front() = kappa[1];
    kappa.back() = kappa[n - 2];
  }
  return kappa;
}

double normal_speed(const SolitonProblem& problem, double kappa) {
  return (speed_law(problem, kappa) + problem.b) / problem.a;
}

double stable_step(const PlaneCurve& state, const SolitonProblem& problem, double cfl) {
  const auto lengths = edge_lengths(state.points, state.closed());
  const double h = *std::min_element(lengths.begin(), lengths.end());
  double stiffness = 0.0;
  for (double k : state.kappas) stiffness = std::max(stiffness, std::abs(speed_law_derivative(problem, k)));
  if (stiffness == 0.0) return kInf;
  return cfl * h * h * std::abs(problem.a) / stiffness;
}

PlaneCurve step(const PlaneCurve& state, const SolitonProblem& problem, double dt, const StepOptions& options) {
  problem.validate();
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  if (state.size() < min_points(state.boundary)) throw DomainError("step: too few points for this boundary");
  const PlaneCurve curve = make_polyline(state.points, state.boundary);
  const std::size_t n = curve.size();

  std::vector<double> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = normal_speed(problem, curve.kappas[i]);
  require_forward_parabolic(curve, problem);
  const double bound = stable_step(curve, problem, options.cfl);
  if (dt > bound * (1.0 + 1e-12))
    throw StepTooLarge("step: dt = " + std::to_string(dt) + " exceeds the stability bound " + std::to_string(bound),
                       bound);
  if (!curve.closed()) {
    speed.front() = 3.0 * speed[1] - 3.0 * speed[2] + speed[3];
    speed.back() = 3.0 * speed[n - 2] - 3.0 * speed[n - 3] + speed[n - 4];
  }

  std::vector<Vec2> moved(n);
  for (std::size_t i = 0; i < n; ++i) moved[i] = curve.points[i] + (dt * speed[i]) * curve.normals[i];
  return make_polyline(std::move(moved), curve.boundary);
}

double edge_ratio(const PlaneCurve& curve) {
  const auto lengths = edge_lengths(curve.points, curve.closed());
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  return *hi / *lo;
}

PlaneCurve resample_uniform(const PlaneCurve& curve, std::size_t n) {
  const bool closed = curve.closed();
  if (n < min_points(curve.boundary)) throw DomainError("resample_uniform: too few output points");
  const auto& pts = curve.points;
  const std::size_t m = pts.size();
  if (m < 4) throw DomainError("resample_uniform: need at least four input points");
  const auto lengths = edge_lengths(pts, closed);

  // Chord parameter, extended periodically for closed curves.
  std::vector<double> chord(m + 1, 0.0);
  for (std::size_t i = 0; i < lengths.size(); ++i) chord[i + 1] = chord[i] + lengths[i];
  const double total = closed ? chord[m] : chord[m - 1];
  auto node = [&](long i, double& t) -> Vec2 {
    if (!closed) {
      t = chord[static_cast<std::size_t>(i)];
      return pts[static_cast<std::size_t>(i)];
    }
    const long mm = static_cast<long>(m);
    const long wraps = (i >= 0) ? i / mm : -((-i + mm - 1) / mm);
    const long j = i - wraps * mm;
    t = chord[static_cast<std::size_t>(j)] + static_cast<double>(wraps) * total;
    return pts[static_cast<std::size_t>(j)];
  };

  std::vector<Vec2> out(n);
  const long segments = closed ? static_cast<long>(m) : static_cast<long>(m) - 1;
  long seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = closed ? total * static_cast<double>(k) / static_cast<double>(n)
                                 : total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 1 < segments && chord[static_cast<std::size_t>(seg + 1)] <= target) ++seg;
    long start = seg - 1;
    if (!closed) start = std::clamp(start, 0L, static_cast<long>(m) - 4);
    double t[4];
    Vec2 y[4];
    for (int j = 0; j < 4; ++j) y[j] = node(start + j, t[j]);
    out[k] = lagrange4(t, y, target);
  }
  if (!closed) {
    out.front() = pts.front();
    out.back() = pts.back();
  } else {
    out.front() = pts.front();
  }
  return make_polyline(std::move(out), curve.boundary);
}

void FlowConfig::validate() const {
  problem.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("flow: t_end must be positive");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw DomainError("flow: cfl must lie in (0, 0.5]");
  if (snapshots < 1) throw DomainError("flow: need at least one snapshot interval");
  if (!(resample_threshold > 1.0)) throw DomainError("flow: resample_threshold must exceed 1");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("flow: dt must be nonnegative");
}

Trajectory evolve(const PlaneCurve& initial, const FlowConfig& config) {
  config.validate();
  if (initial.size() < min_points(config.boundary)) throw DomainError("evolve: too few points for this boundary");
  PlaneCurve state = make_polyline(initial.points, config.boundary);
  for (double k : state.kappas) normal_speed(config.problem, k);
  require_forward_parabolic(state, config.problem);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(state);
  const StepOptions options{config.cfl};
  double t = 0.0;
  auto stop = [&](StopReason reason, std::string message) {
    traj.stop = reason;
    traj.stop_message = std::move(message);
    traj.stop_time = t;
    return traj;
  };

  for (std::size_t k = 1; k <= config.snapshots; ++k) {
    const double target = config.t_end * static_cast<double>(k) / static_cast<double>(config.snapshots);
    while (t < target) {
      if (traj.steps >= config.max_steps) return stop(StopReason::ExtinctionReached, "step budget exhausted");
      try {
        const double bound = stable_step(state, config.problem, config.cfl);
        if (bound < 1e-12 * config.t_end)
          return stop(StopReason::ExtinctionReached, "stable step collapsed to " + std::to_string(bound));
        const double dt = std::min(config.dt > 0.0 ? config.dt : bound, target - t);
        state = step(state, config.problem, dt, options);
        t = (dt == target - t) ? target : t + dt;
        ++traj.steps;
        if (edge_ratio(state) > config.resample_threshold) {
          state = resample_uniform(state, state.size());
          traj.resample_times.push_back(t);
        }
      } catch (const DegenerateEdge& e) {
        return stop(StopReason::ExtinctionReached, e.what());
      } catch (const DomainError& e) {
        return stop(StopReason::DomainExit, e.what());
      }
    }
    traj.times.push_back(target);
    traj.states.push_back(state);
  }
  traj.stop_time = t;
  return traj;
}

TranslationFit fit_translation(const Trajectory& trajectory, double interior_margin) {
  const std::size_t count = trajectory.states.size();
  if (count < 3 || trajectory.times.size() != count)
    throw InsufficientSnapshots("fit_translation: need at least three snapshots, got " + std::to_string(count));
  if (!(interior_margin >= 0.0 && interior_margin <= 0.4))
    throw DomainError("fit_translation: interior_margin must lie in [0, 0.4]");

  const PlaneCurve& base = trajectory.states.front();
  TranslationFit fit;
  fit.offsets.assign(count, Vec2{});
  for (std::size_t k = 1; k < count; ++k) {
    const PlaneCurve& snap = trajectory.states[k];
    const std::size_t n = snap.size();
    const std::size_t skip = snap.closed() ? 0 : static_cast<std::size_t>(interior_margin * static_cast<double>(n));
    const std::span<const Vec2> interior(snap.points.data() + skip, n - 2 * skip);

    Vec2 v = k >= 2 ? fit.offsets[k - 1] + (fit.offsets[k - 1] - fit.offsets[k - 2]) : Vec2{};
    double rms = 0.0;
    // Point-to-segment Gauss-Newton on the translation only.
    for (int iter = 0; iter < 100; ++iter) {
      double a11 = 0.0, a12 = 0.0, a22 = 0.0, r1 = 0.0, r2 = 0.0, sq = 0.0;
      for (Vec2 q : interior) {
        const Match match = closest(base.points, base.closed(), q - v);
        const Vec2 nrm = match.normal;
        a11 += nrm.x * nrm.x;
        a12 += nrm.x * nrm.y;
        a22 += nrm.y * nrm.y;
        r1 += nrm.x * match.distance;
        r2 += nrm.y * match.distance;
        sq += match.distance * match.distance;
      }
      rms = std::sqrt(sq / static_cast<double>(interior.size()));
      // Pseudo-inverse: a straight base curve leaves the tangential shift free.
      const double tr = a11 + a22;
      const double det = a11 * a22 - a12 * a12;
      Vec2 delta{};
      if (det > 1e-12 * tr * tr) {
        delta = {(a22 * r1 - a12 * r2) / det, (a11 * r2 - a12 * r1) / det};
      } else if (tr > 0.0) {
        delta = Vec2{r1, r2} / tr;
      }
      v += delta;
      if (norm(delta) < 1e-14 * std::max(1.0, norm(v))) break;
    }
    fit.offsets[k] = v;
    fit.shape_residual = std::max(fit.shape_residual, rms);
  }

  double tt = 0.0;
  Vec2 tv{};
  for (std::size_t k = 0; k < count; ++k) {
    tt += trajectory.times[k] * trajectory.times[k];
    tv += trajectory.times[k] * fit.offsets[k];
  }
  fit.velocity = tt > 0.0 ? tv / tt : Vec2{};
  for (std::size_t k = 0; k < count; ++k)
    fit.linearity_residual = std::max(fit.linearity_residual, norm(fit.offsets[k] - trajectory.times[k] * fit.velocity));
  return fit;
}

}  // namespace curveflow
