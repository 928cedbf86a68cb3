#pragma once

// CSV helpers and the SVG rendering of the region D figures.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted
// and inner quotes doubled.
std::string csv_field(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Two panels: the (k1, k2) plane with the slice conditions shaded, D hatched
// and a resolution x resolution grid of classified sample points; and the
// (u, v) unit square with Log(D) sampled on a resolution x resolution grid.
std::string emit_region_svg(int resolution);

}  // namespace cantor
