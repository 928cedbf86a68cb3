#include "cantor/io.hpp"

#include <iomanip>
#include <sstream>

#include "cantor/certify.hpp"
#include "cantor/errors.hpp"
#include "cantor/orbit.hpp"

namespace cantor {

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw DomainError("stray quote inside an unquoted CSV field");
        quoted = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r': break;
      case '\n':
        if (field_started || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        field_started = false;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw DomainError("unterminated quoted CSV field");
  if (field_started || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr double kPanel = 400, kMargin = 40, kGapX = 80;
constexpr double kPlaneMax = 6;  // the (k1, k2) panel shows [0, 6]^2

double plane_x(double k1) { return kMargin + k1 * kPanel / kPlaneMax; }
double plane_y(double k2) { return kMargin + kPanel - k2 * kPanel / kPlaneMax; }
double square_x(double u) { return 2 * kMargin + kPanel + kGapX + u * kPanel; }
double square_y(double v) { return kMargin + kPanel - v * kPanel; }

std::string polygon_points(const std::vector<std::pair<Rational, Rational>>& poly) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out << ' ';
    out << plane_x(to_double(poly[i].first)) << ',' << plane_y(to_double(poly[i].second));
  }
  return out.str();
}

}  // namespace

std::string emit_region_svg(int resolution) {
  if (resolution < 16) throw DomainError("SVG resolution must be at least 16");
  const double width = 3 * kMargin + 2 * kPanel + kGapX;
  const double height = 2 * kMargin + kPanel + 20;
  const Interval box{0, kPlaneMax};
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(3);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "  <defs>\n"
         "    <pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">\n"
         "      <line x1=\"3\" y1=\"0\" x2=\"3\" y2=\"6\" stroke=\"#1f4e79\" stroke-width=\"1\"/>\n"
         "    </pattern>\n"
         "  </defs>\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // (k1, k2) panel
  svg << "  <g id=\"plane\">\n";
  svg << "    <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPanel << "\" height=\"" << kPanel
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "    <polygon class=\"slice-conditions\" fill=\"#c9d9ea\" stroke=\"#1f4e79\" points=\""
      << polygon_points(constraint_polygon(slice_condition_constraints(), box, box)) << "\"/>\n";
  svg << "    <polygon class=\"region-D\" fill=\"url(#hatch)\" stroke=\"#1f4e79\" stroke-width=\"1.5\" points=\""
      << polygon_points(constraint_polygon(region_D_constraints(), box, box)) << "\"/>\n";
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      Rational k1 = make_rational(Integer(i) * static_cast<int>(kPlaneMax), resolution);
      Rational k2 = make_rational(Integer(j) * static_cast<int>(kPlaneMax), resolution);
      bool in = k1 > 0 && k2 > 0 && region_D(k1, k2).verdict;
      svg << "    <circle class=\"sample " << (in ? "in" : "out") << "\" cx=\"" << plane_x(to_double(k1)) << "\" cy=\""
          << plane_y(to_double(k2)) << "\" r=\"" << (in ? 1.6 : 0.8) << "\" fill=\"" << (in ? "#b22222" : "#999999")
          << "\" data-k1=\"" << to_string(k1) << "\" data-k2=\"" << to_string(k2) << "\"/>\n";
    }
  }
  for (int t = 0; t <= static_cast<int>(kPlaneMax); ++t) {
    svg << "    <text x=\"" << plane_x(t) << "\" y=\"" << kMargin + kPanel + 15 << "\" font-size=\"10\" text-anchor=\"middle\">"
        << t << "</text>\n";
    svg << "    <text x=\"" << kMargin - 8 << "\" y=\"" << plane_y(t) + 3 << "\" font-size=\"10\" text-anchor=\"end\">" << t
        << "</text>\n";
  }
  svg << "    <text x=\"" << kMargin + kPanel / 2 << "\" y=\"" << height - 5
      << "\" font-size=\"12\" text-anchor=\"middle\">k1 (horizontal), k2 (vertical)</text>\n";
  svg << "  </g>\n";

  // (u, v) panel: cells of the grid whose image box lies in D
  const UVClassifier classify = log_D_classifier();
  svg << "  <g id=\"log-region\">\n";
  svg << "    <rect x=\"" << square_x(0) << "\" y=\"" << kMargin << "\" width=\"" << kPanel << "\" height=\"" << kPanel
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double cell = kPanel / resolution;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      Interval u{make_rational(i, resolution), make_rational(i + 1, resolution)};
      Interval v{make_rational(j, resolution), make_rational(j + 1, resolution)};
      BoxClass c = classify(u, v);
      if (c == BoxClass::outside) continue;
      const bool inside = c == BoxClass::inside;
      svg << "    <rect class=\"log-cell " << to_string(c) << "\" x=\"" << square_x(to_double(u.lo)) << "\" y=\""
          << square_y(to_double(v.hi)) << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
          << (inside ? "#1f4e79" : "#9fb7d0") << "\"/>\n";
    }
  }
  for (int t = 0; t <= 4; ++t) {
    const double s = t / 4.0;
    svg << "    <text x=\"" << square_x(s) << "\" y=\"" << kMargin + kPanel + 15
        << "\" font-size=\"10\" text-anchor=\"middle\">" << s << "</text>\n";
    svg << "    <text x=\"" << square_x(0) - 8 << "\" y=\"" << square_y(s) + 3 << "\" font-size=\"10\" text-anchor=\"end\">"
        << s << "</text>\n";
  }
  svg << "    <text x=\"" << square_x(0.5) << "\" y=\"" << height - 5
      << "\" font-size=\"12\" text-anchor=\"middle\">Log(D): u = {k log3/log4}, v = {k log3/log5}</text>\n";
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace cantor
