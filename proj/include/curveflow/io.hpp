#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curveflow/geometry.hpp"

namespace curveflow {

/// Curve samples as `s,x,y,kappa` lines (17 significant digits, LF endings).
std::string curve_to_csv(const PlaneCurve& curve);

/// Parses the `s,x,y,kappa` format. Points, arc and kappas are taken from the
/// file; tangents and normals are the normalized chord bisectors.
PlaneCurve curve_from_csv(std::string_view text, Boundary boundary = Boundary::FreeEnds);

PlaneCurve read_curve_csv(const std::filesystem::path& path, Boundary boundary = Boundary::FreeEnds);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

struct SvgCurve {
  std::vector<Vec2> points;
  bool closed = false;
};

struct SvgOptions {
  std::string title;
  /// Draw an upward arrow beside the curves marking the direction (0, 1).
  bool translation_arrow = false;
  /// Serialized into a <metadata> element verbatim (XML-escaped).
  std::string metadata;
};

/// Plain-path SVG with y pointing up, viewBox fitted to the bounding box
/// with a 5% margin.
std::string render_svg(const std::vector<SvgCurve>& curves, const SvgOptions& options);

}  // namespace curveflow
