#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/reference.hpp"
#include "curveflow/soliton.hpp"

using namespace curveflow;

namespace {

constexpr double kPi = std::numbers::pi;

PlaneCurve regular_polygon(std::size_t n, double radius, Vec2 centre = {}) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back(centre + radius * Vec2{std::cos(t), std::sin(t)});
  }
  return make_polyline(std::move(pts), Boundary::Closed);
}

double mean_radius(const PlaneCurve& c) {
  Vec2 centre{};
  for (Vec2 p : c.points) centre += p;
  centre = centre / static_cast<double>(c.size());
  double r = 0.0;
  for (Vec2 p : c.points) r += norm(p - centre);
  return r / static_cast<double>(c.size());
}

PlaneCurve segment(std::size_t n) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({-2.0 + 4.0 * static_cast<double>(i) / (n - 1), 0.5});
  return make_polyline(std::move(pts), Boundary::FreeEnds);
}

// Soliton of `energy` in its canonical frame, resampled to n points.
PlaneCurve soliton_polyline(const CurvatureEnergy& energy, double d, double half_span, std::size_t n) {
  const auto curve = reconstruct_curve(integrate_profile(energy, d, half_span, 1e-11));
  return resample_uniform(make_polyline(curve.points, Boundary::FreeEnds), n);
}

}  // namespace

TEST_CASE("estimate_curvature examples") {
  const auto gon = regular_polygon(256, 1.0);
  for (double k : estimate_curvature(gon)) CHECK(k == doctest::Approx(1.0).epsilon(1e-12));

  for (double k : estimate_curvature(segment(20))) CHECK(k == 0.0);

  // y = log sec x has curvature cos x as a function of the abscissa.
  std::vector<Vec2> graph;
  for (int i = 0; i < 400; ++i) {
    const double x = -1.0 + 2.0 * i / 399.0;
    graph.push_back({x, -std::log(std::cos(x))});
  }
  const auto reaper = make_polyline(graph, Boundary::FreeEnds);
  for (std::size_t i = 1; i + 1 < reaper.size(); ++i)
    CHECK(reaper.kappas[i] == doctest::Approx(std::cos(reaper.points[i].x)).epsilon(1e-3));
  CHECK(reaper.kappas[199] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(reaper.kappas.front() == reaper.kappas[1]);

  // Clockwise traversal flips the sign.
  auto cw = gon.points;
  std::reverse(cw.begin(), cw.end());
  for (double k : estimate_curvature(make_polyline(cw, Boundary::Closed))) CHECK(k == doctest::Approx(-1.0));

  CHECK_THROWS_AS(make_polyline({{0, 0}, {0, 0}, {1, 0}}, Boundary::FreeEnds), DegenerateEdge);
}

TEST_CASE("normal_speed examples and domain") {
  CHECK(normal_speed(SolitonProblem::power_flow(1.0, 1.0, 0.0), 0.5) == 0.5);
  CHECK(normal_speed(SolitonProblem::log_flow(1.0, 0.0), 1.0) == 0.0);
  CHECK(normal_speed(SolitonProblem::power_flow(-1.0, 1.0, 0.0), 0.25) == doctest::Approx(4.0));
  CHECK(normal_speed(SolitonProblem::power_flow(2.0, 2.0, 1.0), -1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(normal_speed(SolitonProblem::log_flow(1.0, 0.0), 0.0), DomainError);
  CHECK_THROWS_AS(normal_speed(SolitonProblem::power_flow(0.5, 1.0, 0.0), -0.1), DomainError);
}

TEST_CASE("single steps") {
  const auto circle = regular_polygon(256, 1.0);
  const auto next = step(circle, SolitonProblem::power_flow(1.0, 1.0, 0.0), 1e-4);
  for (Vec2 p : next.points) CHECK(norm(p) == doctest::Approx(1.0 - 1e-4).epsilon(1e-6));

  const auto line = segment(32);
  for (const auto& problem : {SolitonProblem::power_flow(1.0, 1.0, 0.0), SolitonProblem::power_flow(2.0, 3.0, 0.0),
                              SolitonProblem::power_flow(3.0, -1.0, 0.0)}) {
    const auto moved = step(line, problem, 1e-3);
    for (std::size_t i = 0; i < line.size(); ++i) CHECK(moved.points[i] == line.points[i]);
  }

  const double b = 0.3;
  const auto log_circle = regular_polygon(256, std::exp(b), {0.2, -0.1});
  const auto log_problem = SolitonProblem::log_flow(1.0, b);
  const auto still = step(log_circle, log_problem, 0.9 * stable_step(log_circle, log_problem, 0.25));
  for (std::size_t i = 0; i < still.size(); ++i) CHECK(norm(still.points[i] - log_circle.points[i]) < 1e-12);
}

TEST_CASE("step refuses unstable or ill-posed updates") {
  const auto circle = regular_polygon(64, 1.0);
  const auto problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  const double bound = stable_step(circle, problem, 0.25);
  const double h = norm(circle.points[1] - circle.points[0]);
  CHECK(bound == doctest::Approx(0.25 * h * h));
  try {
    step(circle, problem, 2.0 * bound);
    FAIL("expected StepTooLarge");
  } catch (const StepTooLarge& e) {
    CHECK(e.bound() == doctest::Approx(bound));
  }
  CHECK_THROWS_AS(step(circle, SolitonProblem::power_flow(0.5, -1.0, 0.0), 1e-6), BackwardParabolic);
  CHECK_THROWS_AS(step(circle, SolitonProblem::log_flow(-1.0, 0.0), 1e-6), BackwardParabolic);
  CHECK_NOTHROW(step(circle, SolitonProblem::power_flow(-1.0, -2.0, 0.0), 1e-6));

  // A dented polygon has κ < 0 somewhere.
  auto pts = circle.points;
  pts[10] = 0.8 * pts[10];
  const auto dented = make_polyline(pts, Boundary::Closed);
  CHECK_THROWS_AS(step(dented, SolitonProblem::power_flow(0.5, 1.0, 0.0), 1e-6), DomainError);
}

TEST_CASE("shrinking circles follow the exact radius laws") {
  FlowConfig config;
  config.problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  config.t_end = 0.4;
  config.snapshots = 4;
  config.boundary = Boundary::Closed;
  const auto traj = evolve(regular_polygon(256, 1.0), config);
  REQUIRE(traj.stop == StopReason::Completed);
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    CHECK(mean_radius(traj.states[k]) == doctest::Approx(std::sqrt(1.0 - 2.0 * traj.times[k])).epsilon(1e-2));
  CHECK(mean_radius(traj.states.back()) == doctest::Approx(0.4472).epsilon(1e-2));

  // a = 2 halves the rate: R² = 1 − t.
  config.problem = SolitonProblem::power_flow(1.0, 2.0, 0.0);
  const auto slow = evolve(regular_polygon(128, 1.0), config);
  CHECK(mean_radius(slow.states.back()) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-2));

  // p = 2: dR/dt = −1/R², so R³ = 1 − 3t.
  config.problem = SolitonProblem::power_flow(2.0, 1.0, 0.0);
  config.t_end = 0.1;
  const auto cubic = evolve(regular_polygon(256, 1.0), config);
  for (std::size_t k = 0; k < cubic.times.size(); ++k)
    CHECK(mean_radius(cubic.states[k]) == doctest::Approx(std::cbrt(1.0 - 3.0 * cubic.times[k])).epsilon(1e-2));
}

TEST_CASE("circle radius error shrinks at second order") {
  FlowConfig config;
  config.problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  config.t_end = 0.1;
  config.snapshots = 1;
  config.boundary = Boundary::Closed;
  const double exact = std::sqrt(0.8);
  std::vector<double> errors;
  for (std::size_t n : {32, 64, 128}) {
    // dt ∝ h² through the stability bound, so dt quarters as n doubles.
    const auto traj = evolve(regular_polygon(n, 1.0), config);
    errors.push_back(std::abs(mean_radius(traj.states.back()) - exact));
  }
  CHECK(errors[0] / errors[1] >= 3.5);
  CHECK(errors[1] / errors[2] >= 3.5);
}

TEST_CASE("curve shortening strictly decreases the area of random convex polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::uniform_real_distribution<double> axis(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> angles{0.0};
    for (int i = 0; i < 79; ++i) angles.push_back(angles.back() + gap(rng));
    const double total = angles.back() + gap(rng);
    const double ax = axis(rng), ay = axis(rng);
    std::vector<Vec2> pts;
    for (double a : angles) pts.push_back({ax * std::cos(2 * kPi * a / total), ay * std::sin(2 * kPi * a / total)});
    PlaneCurve state = make_polyline(pts, Boundary::Closed);
    const auto problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
    double area = polygon_area(state.points);
    for (int s = 0; s < 50; ++s) {
      state = step(state, problem, stable_step(state, problem, 0.25));
      const double next = polygon_area(state.points);
      CHECK(next < area);
      area = next;
    }
  }
}

TEST_CASE("log flow keeps the circle of radius e^b") {
  const double b = -0.2;
  FlowConfig config;
  config.problem = SolitonProblem::log_flow(1.0, b);
  config.t_end = 0.1;
  config.snapshots = 5;
  config.boundary = Boundary::Closed;
  const auto traj = evolve(regular_polygon(128, std::exp(b)), config);
  for (const auto& state : traj.states) CHECK(std::abs(mean_radius(state) - std::exp(b)) < 1e-3);
}

TEST_CASE("truncated grim reaper translates with unit speed") {
  FlowConfig config;
  config.problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  config.t_end = 0.5;
  config.snapshots = 10;
  const auto initial = soliton_polyline(CurvatureEnergy::entropy(0.0), 1.0, 5.0, 301);
  const auto traj = evolve(initial, config);
  REQUIRE(traj.stop == StopReason::Completed);
  const auto fit = fit_translation(traj, 0.15);
  CHECK(norm(fit.velocity - Vec2{0.0, 1.0}) < 2e-2);
  CHECK(fit.shape_residual < 1e-2);
  CHECK(norm(fit.offsets.back() - Vec2{0.0, 0.5}) < 1e-2);

  // Tangential reparameterization of the snapshots does not change the fit.
  Trajectory resampled = traj;
  for (auto& state : resampled.states) state = resample_uniform(state, 233);
  const auto refit = fit_translation(resampled, 0.15);
  CHECK(norm(refit.velocity - fit.velocity) < 1e-3);
  CHECK(std::abs(refit.shape_residual - fit.shape_residual) < 1e-3);
  CHECK(std::abs(refit.linearity_residual - fit.linearity_residual) < 1e-3);
}

TEST_CASE("solitons keep their shape under their dual flows") {
  struct Case {
    CurvatureEnergy energy;
    double d;
    double half_span;
  };
  const std::vector<Case> cases = {{CurvatureEnergy::entropy(0.0), 1.0, 5.0},
                                   {CurvatureEnergy::entropy(-0.5), 1.0, 5.0},
                                   // √κ falls linearly and reaches 0 near s = 1.89.
                                   {CurvatureEnergy::power(1.5, 0.0), 1.0, 1.8},
                                   {CurvatureEnergy::power(-1.0, 0.0), 64.0, 3.5}};
  for (const auto& c : cases) {
    FlowConfig config;
    config.problem = flow_from_energy(c.energy, c.d);
    config.t_end = 0.5 / std::abs(config.problem.a);
    config.snapshots = 8;
    const auto traj = evolve(soliton_polyline(c.energy, c.d, c.half_span, 301), config);
    REQUIRE(traj.stop == StopReason::Completed);
    const auto fit = fit_translation(traj, 0.15);
    CHECK(norm(fit.velocity - Vec2{0.0, 1.0}) < 2e-2);
    CHECK(fit.shape_residual < 1e-2);
  }
}

TEST_CASE("fit_translation separates translation from other motion") {
  FlowConfig config;
  config.problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  config.t_end = 0.4;
  config.snapshots = 4;
  config.boundary = Boundary::Closed;
  const auto shrinking = fit_translation(evolve(regular_polygon(128, 1.0), config), 0.15);
  CHECK(shrinking.shape_residual > 0.1);

  config.problem = SolitonProblem::power_flow(2.0, 1.0, 0.0);
  config.boundary = Boundary::FreeEnds;
  const auto line = evolve(segment(50), config);
  for (const auto& state : line.states) CHECK(state.points == line.states.front().points);
  const auto still = fit_translation(line, 0.15);
  CHECK(norm(still.velocity) < 1e-10);
  CHECK(still.shape_residual < 1e-10);
  CHECK(still.linearity_residual < 1e-10);

  // A rigidly translated copy is recovered exactly.
  Trajectory shifted;
  const auto base = regular_polygon(64, 1.0);
  for (int k = 0; k < 4; ++k) {
    std::vector<Vec2> pts;
    for (Vec2 p : base.points) pts.push_back(p + (0.1 * k) * Vec2{0.6, -0.8});
    shifted.times.push_back(0.1 * k);
    shifted.states.push_back(make_polyline(pts, Boundary::Closed));
  }
  const auto exact = fit_translation(shifted, 0.0);
  CHECK(norm(exact.velocity - Vec2{0.6, -0.8}) < 1e-9);
  CHECK(exact.shape_residual < 1e-9);

  Trajectory short_run = shifted;
  short_run.times.resize(2);
  short_run.states.resize(2);
  CHECK_THROWS_AS(fit_translation(short_run, 0.1), InsufficientSnapshots);
  CHECK_THROWS_AS(fit_translation(shifted, 0.5), DomainError);
}

TEST_CASE("evolve records early stops") {
  FlowConfig config;
  config.problem = SolitonProblem::power_flow(1.0, 1.0, 0.0);
  config.t_end = 0.6;
  config.snapshots = 6;
  config.boundary = Boundary::Closed;
  const auto traj = evolve(regular_polygon(32, 1.0), config);
  CHECK(traj.stop == StopReason::ExtinctionReached);
  // Euler on R² gains dt²/R² per step, delaying extinction by the factor
  // 1/(1 − dt/(2R²)) with dt/R² = cfl·(2 sin(π/32))².
  const double lag = 0.25 * std::pow(2.0 * std::sin(kPi / 32.0), 2);
  CHECK(traj.stop_time <= 0.5 / (1.0 - 0.5 * lag) + 1e-3);
  CHECK(traj.stop_time > 0.45);
  CHECK(traj.times.size() == 6);

  config.cfl = 0.6;
  CHECK_THROWS_AS(evolve(regular_polygon(32, 1.0), config), DomainError);
  config.cfl = 0.25;
  config.problem = SolitonProblem::log_flow(1.0, 0.0);
  auto pts = regular_polygon(32, 1.0).points;
  pts[3] = 0.7 * pts[3];
  CHECK_THROWS_AS(evolve(make_polyline(pts, Boundary::Closed), config), DomainError);
}

TEST_CASE("uniform resampling") {
  std::vector<Vec2> pts;
  for (int i = 0; i < 100; ++i) {
    const double t = 2 * kPi * std::pow(i / 100.0, 1.3);
    pts.push_back({std::cos(t), std::sin(t)});
  }
  const auto uneven = make_polyline(pts, Boundary::Closed);
  CHECK(edge_ratio(uneven) > 1.5);
  const auto even = resample_uniform(uneven, 150);
  CHECK(even.size() == 150);
  CHECK(edge_ratio(even) < 1.01);
  for (Vec2 p : even.points) CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(even.points.front() == uneven.points.front());

  const auto reaper = soliton_polyline(CurvatureEnergy::entropy(0.0), 1.0, 3.0, 120);
  CHECK(edge_ratio(reaper) < 1.001);
}
