#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/io.hpp"
#include "curveflow/reference.hpp"

using namespace curveflow;
namespace fs = std::filesystem;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / ("curveflow_test_io_" + std::string(name));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("CSV round trip is bit-identical") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 40; ++i)
      pts.push_back({unit(rng) * std::pow(10.0, mag(rng)), unit(rng) * std::pow(10.0, mag(rng) / 30.0)});
    PlaneCurve curve;
    curve.points = pts;
    for (int i = 0; i < 40; ++i) {
      curve.arc.push_back(i * 0.1 + unit(rng) * 1e-3);
      curve.kappas.push_back(unit(rng) * std::pow(10.0, mag(rng)));
    }
    curve.kappas[3] = -0.0;
    const PlaneCurve back = curve_from_csv(curve_to_csv(curve));
    REQUIRE(back.size() == curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      CHECK(bit_equal(back.points[i].x, curve.points[i].x));
      CHECK(bit_equal(back.points[i].y, curve.points[i].y));
      CHECK(bit_equal(back.arc[i], curve.arc[i]));
      CHECK(bit_equal(back.kappas[i], curve.kappas[i]));
    }
    CHECK(curve_to_csv(back) == curve_to_csv(curve));
  }

  const auto reaper = make_reference(ReferenceKind::grim_reaper(1.0, 4.0), 101);
  const PlaneCurve back = curve_from_csv(curve_to_csv(reaper.curve));
  CHECK(back.points == reaper.curve.points);
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(std::abs(norm(back.tangents[i]) - 1.0) < 1e-14);
    CHECK(std::abs(cross(back.tangents[i], back.normals[i]) - 1.0) < 1e-14);
  }
}

TEST_CASE("CSV format details") {
  PlaneCurve c;
  c.points = {{0, 0}, {1, 0}, {2, 0}};
  c.arc = {0, 1, 2};
  c.kappas = {0, 0, 0};
  const std::string text = curve_to_csv(c);
  CHECK(text.rfind("s,x,y,kappa\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  // CRLF and blank lines are tolerated on input.
  const auto crlf = curve_from_csv("s,x,y,kappa\r\n0,0,0,0\r\n\r\n1,1,0,0\r\n2,2,0,0\r\n");
  CHECK(crlf.size() == 3);
  // Missing arc or curvature is kept as NaN.
  const auto nan = curve_from_csv("s,x,y,kappa\nnan,0,0,nan\nnan,1,0,nan\nnan,2,1,nan\n");
  CHECK(std::isnan(nan.arc[0]));
  CHECK(std::isnan(nan.kappas[2]));
}

TEST_CASE("CSV parse errors") {
  CHECK_THROWS_AS(curve_from_csv(""), ParseError);
  CHECK_THROWS_AS(curve_from_csv("x,y\n0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,1,0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,1,0\n2,2,0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,1,0,0,5\n2,2,0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,one,0,0\n2,2,0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,1 ,0,0\n2,2,0,0\n"), ParseError);
  CHECK_THROWS_AS(curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,inf,0,0\n2,2,0,0\n"), ParseError);
  try {
    curve_from_csv("s,x,y,kappa\n0,0,0,0\n1,1,0,0\n2,2,zz,0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(read_curve_csv("/nonexistent/curveflow.csv"), ParseError);
}

TEST_CASE("atomic write replaces the target and leaves no temporary") {
  const fs::path dir = scratch_dir("atomic");
  const fs::path target = dir / "out.csv";
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(read_file(target) == "second\n");
  CHECK_FALSE(fs::exists(dir / "out.csv.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.csv", "x"), DomainError);
  fs::remove_all(dir);
}

TEST_CASE("SVG rendering") {
  const auto reaper = make_reference(ReferenceKind::grim_reaper(1.0, 5.0), 201);
  SvgOptions options;
  options.title = "a<b";
  options.metadata = R"({"k":"v&w"})";
  const std::string svg = render_svg({SvgCurve{reaper.curve.points, false}}, options);
  CHECK(svg == render_svg({SvgCurve{reaper.curve.points, false}}, options));
  CHECK(svg.find("<title>a&lt;b</title>") != std::string::npos);
  CHECK(svg.find("<metadata>{&quot;k&quot;:&quot;v&amp;w&quot;}</metadata>") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("id=\"translation\"") == std::string::npos);

  // viewBox is the bounding box grown by 5% of its extent on every side.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (Vec2 p : reaper.curve.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto pos = svg.find("viewBox=\"") + 9;
  double vb[4];
  std::sscanf(svg.c_str() + pos, "%lf %lf %lf %lf", &vb[0], &vb[1], &vb[2], &vb[3]);
  const double w = xmax - xmin, h = ymax - ymin;
  CHECK(vb[0] == doctest::Approx(xmin - 0.05 * w).epsilon(1e-5));
  CHECK(vb[1] == doctest::Approx(-(ymax + 0.05 * h)).epsilon(1e-5));
  CHECK(vb[2] == doctest::Approx(1.1 * w).epsilon(1e-5));
  CHECK(vb[3] == doctest::Approx(1.1 * h).epsilon(1e-5));

  options.translation_arrow = true;
  const std::string arrow = render_svg({SvgCurve{reaper.curve.points, false}}, options);
  CHECK(arrow.find("id=\"translation\"") != std::string::npos);

  const auto circle = make_reference(ReferenceKind::circle(1.0), 64);
  CHECK(render_svg({SvgCurve{circle.curve.points, true}}, {}).find(" Z\"") != std::string::npos);
}
