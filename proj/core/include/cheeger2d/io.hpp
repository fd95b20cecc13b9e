#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cheeger2d/fields.hpp"
#include "cheeger2d/geometry.hpp"
#include "cheeger2d/result.hpp"

namespace cheeger2d {

/// Domain spec documents:
///   {"type": "polygon", "vertices": [[x,y], ...]}
///   {"type": "regular_ngon", "n": 6, "circumradius": 1.0, "center": [0,0]}
///   {"type": "rectangle", "width": 2.0, "height": 1.0}
/// Rectangles sit at [0,width] x [0,height]; n-gons start at angle 0.
Polygon parse_domain_spec(const std::string& json_text);
Polygon load_domain_file(const std::filesystem::path& path);

/// Field spec documents:
///   {"type": "named", "name": "dilation"|"translation_x"|"translation_y"|
///                             "rotation"|"shear"}
///   {"type": "polynomial", "vx": [[i,j,c], ...], "vy": [[i,j,c], ...]}
PolynomialVectorField parse_field_spec(const std::string& json_text);
PolynomialVectorField load_field_file(const std::filesystem::path& path);

/// Polygon back to a domain spec document. Coordinates carry 17 significant
/// digits, enough to reparse bit-exactly.
std::string emit_domain_spec(const Polygon& p);

/// Shortest fixed formatting used across CSV output (17 significant digits,
/// locale-free, deterministic).
std::string format_full(double v);
/// 12 significant digits, the stdout format for primary values.
std::string format_value(double v);

/// Minimal CSV writer: one header row plus data rows, `\n` line endings.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// 1000x1000 figure of the domain outline (black) and, when present, the
/// Cheeger set boundary (red): exact segment/arc chains for the exact
/// solver, traced contours for the grid solver.
std::string render_set_svg(const Polygon& domain, const CheegerResult* result);
void write_set_svg(const std::filesystem::path& path, const Polygon& domain,
                   const CheegerResult* result);

}  // namespace cheeger2d
