#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/reference.hpp"
#include "curveflow/soliton.hpp"
#include "oracles.hpp"

using namespace curveflow;

namespace {

std::vector<ReferenceKind> open_kinds() {
  return {ReferenceKind::grim_reaper(1.0, 5.0), ReferenceKind::catenary(1.0, 3.0), ReferenceKind::cycloid(1.0, 3.5),
          ReferenceKind::parabola(0.5, 3.0), ReferenceKind::line(3.0), ReferenceKind::elastica(16.0, 2.0)};
}

double max_estimator_error(const ReferenceCurve& ref) {
  const auto estimate = estimate_curvature(ref.curve);
  const std::size_t skip = ref.curve.closed() ? 0 : 1;
  double worst = 0.0;
  for (std::size_t i = skip; i + skip < estimate.size(); ++i)
    worst = std::max(worst, std::abs(estimate[i] - ref.exact(ref.curve.arc[i]).kappa));
  return worst;
}

std::vector<double> exact_kappa_s(const ReferenceCurve& ref) {
  std::vector<double> out;
  for (double s : ref.curve.arc) out.push_back(ref.exact(s).kappa_s);
  return out;
}

}  // namespace

TEST_CASE("reference examples") {
  const auto reaper = make_reference(ReferenceKind::grim_reaper(1.0, 5.0), 101);
  CHECK(reaper.exact(0.0).kappa == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(reaper.exact(1.0).kappa == doctest::Approx(0.648054273663885).epsilon(1e-12));

  const auto catenary = make_reference(ReferenceKind::catenary(1.0, 3.0), 101);
  CHECK(catenary.exact(0.0).kappa == doctest::Approx(1.0).epsilon(1e-15));
  for (double s : catenary.curve.arc) {
    const auto j = catenary.exact(s);
    CHECK(first_integral(CurvatureEnergy::power(0.5, 0.0), j.kappa, j.kappa_s) ==
          doctest::Approx(0.25).epsilon(1e-12));
  }

  const auto cycloid = make_reference(ReferenceKind::cycloid(1.0, 3.5), 101);
  for (std::size_t i = 1; i + 1 < cycloid.curve.size(); ++i) {
    const auto j = cycloid.exact(cycloid.curve.arc[i]);
    CHECK(first_integral(CurvatureEnergy::power(-1.0, 0.0), j.kappa, j.kappa_s) ==
          doctest::Approx(64.0).epsilon(1e-12));
  }

  const auto circle = make_reference(ReferenceKind::circle(1.0), 64);
  CHECK(circle.curve.closed());
  for (double s : circle.curve.arc) CHECK(circle.exact(s).kappa == 1.0);
  for (double k : circle.curve.kappas) CHECK(k == 1.0);
}

TEST_CASE("closed-form jets agree with hand-differentiated oracles") {
  const auto reaper = make_reference(ReferenceKind::grim_reaper(1.0, 5.0), 64);
  const auto catenary = make_reference(ReferenceKind::catenary(1.0, 3.0), 64);
  const auto cycloid = make_reference(ReferenceKind::cycloid(1.0, 3.5), 64);
  for (double s = -3.0; s <= 3.0; s += 0.125) {
    const auto pairs = {std::pair{reaper.exact(s), oracle::sech_profile(s)},
                        std::pair{catenary.exact(s), oracle::catenary_profile(s)},
                        std::pair{cycloid.exact(s), oracle::cycloid_profile(s)}};
    for (const auto& [got, want] : pairs) {
      CHECK(got.kappa == doctest::Approx(want.k).epsilon(1e-13));
      CHECK(got.kappa_s == doctest::Approx(want.ks).epsilon(1e-13));
      CHECK(got.kappa_ss == doctest::Approx(want.kss).epsilon(1e-13));
    }
  }
  const auto parabola = make_reference(ReferenceKind::parabola(0.5, 3.0), 64);
  for (std::size_t i = 0; i < parabola.curve.size(); ++i) {
    const double x = parabola.curve.points[i].x;
    const auto want = oracle::parabola_profile_x(x);
    const auto got = parabola.exact(parabola.curve.arc[i]);
    CHECK(got.kappa == doctest::Approx(want.k).epsilon(1e-12));
    CHECK(got.kappa_s == doctest::Approx(want.ks).epsilon(1e-10));
    CHECK(got.kappa_ss == doctest::Approx(want.kss).epsilon(1e-10));
  }
}

TEST_CASE("reference positions lie on the named curves") {
  const auto reaper = make_reference(ReferenceKind::grim_reaper(1.0, 5.0), 201);
  for (Vec2 p : reaper.curve.points) CHECK(p.y == doctest::Approx(-std::log(std::cos(p.x))).epsilon(1e-10));

  const auto catenary = make_reference(ReferenceKind::catenary(1.0, 3.0), 201);
  for (Vec2 p : catenary.curve.points) CHECK(p.y == doctest::Approx(std::cosh(p.x)).epsilon(1e-12));

  // Rolling-circle form with the vertex at the origin: x = r(θ + sin θ),
  // y = r(1 − cos θ), s = 4r·sin(θ/2).
  const double r = 0.75;
  const auto cycloid = make_reference(ReferenceKind::cycloid(r, 2.9), 201);
  for (std::size_t i = 0; i < cycloid.curve.size(); ++i) {
    const double theta = 2.0 * std::asin(cycloid.curve.arc[i] / (4.0 * r));
    CHECK(cycloid.curve.points[i].x == doctest::Approx(r * (theta + std::sin(theta))).epsilon(1e-12));
    CHECK(cycloid.curve.points[i].y == doctest::Approx(r * (1.0 - std::cos(theta))).epsilon(1e-12));
  }

  // Parabola arc length from a dense Simpson rule on √(1 + (x/2f)²).
  const double f = 0.5;
  const auto parabola = make_reference(ReferenceKind::parabola(f, 3.0), 33);
  for (std::size_t i = 0; i < parabola.curve.size(); ++i) {
    const Vec2 p = parabola.curve.points[i];
    CHECK(p.y == doctest::Approx(p.x * p.x / (4.0 * f)).epsilon(1e-14));
    const int m = 20000;
    const double h = p.x / m;
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double x = j * h;
      const double w = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      sum += w * std::sqrt(1.0 + x * x / (4.0 * f * f));
    }
    CHECK(sum * h / 3.0 == doctest::Approx(parabola.curve.arc[i]).epsilon(1e-12));
  }
}

TEST_CASE("estimate_curvature reproduces the exact curvature of every reference at 512 samples") {
  for (const auto& kind : open_kinds()) {
    const auto ref = make_reference(kind, 512);
    CHECK(max_estimator_error(ref) < 5e-3);
  }
  CHECK(max_estimator_error(make_reference(ReferenceKind::circle(1.0), 512)) < 5e-3);
  CHECK(max_estimator_error(make_reference(ReferenceKind::circle(0.3), 512)) < 5e-3);
}

TEST_CASE("reference curves are critical for their dictionary energies") {
  for (const auto& kind : open_kinds()) {
    const auto dict = dictionary_energy(kind);
    if (!dict) continue;
    const auto ref = make_reference(kind, 257);
    for (std::size_t i = 1; i + 1 < ref.curve.size(); ++i) {
      const auto j = ref.exact(ref.curve.arc[i]);
      CHECK(std::abs(el_residual(dict->energy, j.kappa, j.kappa_s, j.kappa_ss)) < 1e-10);
      CHECK(first_integral(dict->energy, j.kappa, j.kappa_s) == doctest::Approx(dict->d).epsilon(1e-9));
    }
  }
  CHECK_FALSE(dictionary_energy(ReferenceKind::circle(1.0)));
  CHECK_FALSE(dictionary_energy(ReferenceKind::line(1.0)));
}

TEST_CASE("dictionary first integrals follow the scaling of each family") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double q = scale(rng);
    const std::vector<ReferenceKind> kinds = {ReferenceKind::grim_reaper(q, 2.0), ReferenceKind::catenary(q, 2.0),
                                              ReferenceKind::cycloid(q, 1.1 * q), ReferenceKind::parabola(q, 2.0)};
    for (const auto& kind : kinds) {
      const auto dict = dictionary_energy(kind);
      REQUIRE(dict);
      const auto ref = make_reference(kind, 33);
      for (double s : ref.curve.arc) {
        const auto j = ref.exact(s);
        CHECK(first_integral(dict->energy, j.kappa, j.kappa_s) == doctest::Approx(dict->d).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("reference curves are translating solitons in their own frame") {
  for (const auto& kind : open_kinds()) {
    const auto dict = dictionary_energy(kind);
    if (!dict) continue;
    const auto ref = make_reference(kind, 257);
    const auto ks = exact_kappa_s(ref);
    SolitonProblem problem = flow_from_energy(dict->energy, dict->d);
    problem.V = translation_direction(ref.curve, dict->energy, ks);
    CHECK(soliton_residual(ref.curve, problem) < 1e-6);
  }
  // Catenary and cycloid open upwards and translate downwards with a < 0.
  const auto catenary = make_reference(ReferenceKind::catenary(1.0, 3.0), 129);
  const Vec2 v = translation_direction(catenary.curve, CurvatureEnergy::power(0.5, 0.0), exact_kappa_s(catenary));
  CHECK(v.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.y == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(flow_from_energy(CurvatureEnergy::power(0.5, 0.0), 0.25).a < 0.0);
}

TEST_CASE("reference sampling is uniform in arc length") {
  for (const auto& kind : open_kinds()) {
    const auto ref = make_reference(kind, 400);
    const auto& c = ref.curve;
    CHECK(c.arc.front() == doctest::Approx(-kind.span));
    CHECK(c.arc.back() == doctest::Approx(kind.span));
    for (std::size_t i = 1; i < c.size(); ++i) {
      const double ds = c.arc[i] - c.arc[i - 1];
      const double chord = norm(c.points[i] - c.points[i - 1]);
      const double k = std::max(std::abs(c.kappas[i]), std::abs(c.kappas[i - 1]));
      CHECK(chord <= ds * (1.0 + 1e-10));
      CHECK(chord >= ds * (1.0 - k * k * ds * ds / 20.0) - 1e-10);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(norm(c.tangents[i]) == doctest::Approx(1.0));
      CHECK(dot(c.tangents[i], c.normals[i]) == doctest::Approx(0.0));
    }
  }
  CHECK_FALSE(make_reference(ReferenceKind::elastica(16.0, 2.0), 64).closed_form);
}

TEST_CASE("reference errors") {
  CHECK_THROWS_AS(make_reference(ReferenceKind::cycloid(1.0, 4.0), 64), SpanExceeded);
  CHECK_THROWS_AS(make_reference(ReferenceKind::cycloid(1.0, 5.0), 64), SpanExceeded);
  CHECK_THROWS_AS(make_reference(ReferenceKind::circle(1.0), 15), DomainError);
  CHECK_THROWS_AS(make_reference(ReferenceKind::catenary(0.0, 1.0), 64), DomainError);
  CHECK_THROWS_AS(make_reference(ReferenceKind::grim_reaper(1.0, -1.0), 64), DomainError);
}
