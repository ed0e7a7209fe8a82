#include "curveflow/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "curveflow/errors.hpp"

namespace curveflow {
namespace {

double parse_number(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(fmt::format("line {}: '{}' is not a number", line, field));
  return value;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string curve_to_csv(const PlaneCurve& curve) {
  std::string out = "s,x,y,kappa\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double s = i < curve.arc.size() ? curve.arc[i] : std::numeric_limits<double>::quiet_NaN();
    const double k = i < curve.kappas.size() ? curve.kappas[i] : std::numeric_limits<double>::quiet_NaN();
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s, curve.points[i].x, curve.points[i].y, k);
  }
  return out;
}

PlaneCurve curve_from_csv(std::string_view text, Boundary boundary) {
  PlaneCurve curve;
  curve.boundary = boundary;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != "s,x,y,kappa") throw ParseError(fmt::format("line 1: expected header 's,x,y,kappa', got '{}'", line));
      header = true;
      continue;
    }
    double values[4];
    for (int c = 0; c < 4; ++c) {
      const std::size_t comma = line.find(',');
      if ((c < 3) == (comma == std::string_view::npos))
        throw ParseError(fmt::format("line {}: expected 4 comma-separated fields", line_no));
      values[c] = parse_number(line.substr(0, comma), line_no);
      line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
    }
    if (!std::isfinite(values[1]) || !std::isfinite(values[2]))
      throw ParseError(fmt::format("line {}: coordinates must be finite", line_no));
    curve.arc.push_back(values[0]);
    curve.points.push_back({values[1], values[2]});
    curve.kappas.push_back(values[3]);
  }
  if (!header) throw ParseError("empty curve file");
  if (curve.size() < 3) throw ParseError("curve file needs at least three samples");

  const std::size_t n = curve.size();
  const bool closed = boundary == Boundary::Closed;
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i == 0 && !closed;
    const bool last = i + 1 == n && !closed;
    const Vec2 prev = curve.points[(i + n - 1) % n];
    const Vec2 next = curve.points[(i + 1) % n];
    const Vec2 here = curve.points[i];
    Vec2 t;
    if (first) t = normalized(next - here);
    else if (last) t = normalized(here - prev);
    else t = normalized(normalized(here - prev) + normalized(next - here));
    curve.tangents.push_back(t);
    curve.normals.push_back(rotate_ccw(t));
  }
  return curve;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PlaneCurve read_curve_csv(const std::filesystem::path& path, Boundary boundary) {
  return curve_from_csv(read_file(path), boundary);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DomainError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string render_svg(const std::vector<SvgCurve>& curves, const SvgOptions& options) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : curves)
    for (Vec2 p : c.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  const double w0 = std::max(xmax - xmin, 1e-9);
  const double h0 = std::max(ymax - ymin, 1e-9);
  const double arrow_room = options.translation_arrow ? 0.15 * w0 : 0.0;
  const double mx = 0.05 * (w0 + arrow_room);
  const double my = 0.05 * h0;
  const double vx = xmin - mx;
  const double vy = -(ymax + my);
  const double vw = w0 + arrow_room + 2 * mx;
  const double vh = h0 + 2 * my;
  const double stroke = 0.004 * std::max(vw, vh);

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6f} {:.6f} {:.6f} {:.6f}\" width=\"600\" "
      "height=\"{:.0f}\">\n",
      vx, vy, vw, vh, 600.0 * vh / vw);
  if (!options.title.empty()) out += fmt::format("<title>{}</title>\n", xml_escape(options.title));
  if (!options.metadata.empty()) out += fmt::format("<metadata>{}</metadata>\n", xml_escape(options.metadata));
  for (const auto& c : curves) {
    if (c.points.empty()) continue;
    out += fmt::format("<path fill=\"none\" stroke=\"black\" stroke-width=\"{:.6f}\" d=\"", stroke);
    for (std::size_t i = 0; i < c.points.size(); ++i)
      out += fmt::format("{}{:.6f} {:.6f}", i == 0 ? "M" : " L", c.points[i].x, -c.points[i].y);
    if (c.closed) out += " Z";
    out += "\"/>\n";
  }
  if (options.translation_arrow) {
    const double x = xmax + 0.5 * arrow_room;
    const double y0 = -(ymin + 0.25 * h0);
    const double y1 = -(ymin + 0.75 * h0);
    const double head = 0.04 * std::max(vw, vh);
    out += fmt::format(
        "<g id=\"translation\" stroke=\"red\" fill=\"red\" stroke-width=\"{:.6f}\">"
        "<line x1=\"{:.6f}\" y1=\"{:.6f}\" x2=\"{:.6f}\" y2=\"{:.6f}\"/>"
        "<path d=\"M{:.6f} {:.6f} L{:.6f} {:.6f} L{:.6f} {:.6f} Z\"/></g>\n",
        stroke, x, y0, x, y1 + head, x, y1, x - 0.5 * head, y1 + head, x + 0.5 * head, y1 + head);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace curveflow
