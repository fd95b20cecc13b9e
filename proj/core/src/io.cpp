#include "cheeger2d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cheeger2d/errors.hpp"

namespace cheeger2d {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double require_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

Point2 require_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(what) + " must be an [x, y] pair");
  return {require_number(j[0], what), require_number(j[1], what)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BivariatePoly parse_component(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of [i, j, c] triples");
  std::vector<MonomialTerm> terms;
  terms.reserve(j.size());
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 3)
      throw ParseError(std::string(what) + ": each term must be [i, j, c]");
    if (!t[0].is_number_integer() || !t[1].is_number_integer())
      throw ParseError(std::string(what) + ": exponents must be integers");
    terms.push_back({t[0].get<int>(), t[1].get<int>(), require_number(t[2], what)});
  }
  try {
    return BivariatePoly::from_terms(terms);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Polygon parse_domain_spec(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw ParseError("domain spec must be an object with a \"type\" string");
  const std::string type = doc["type"].get<std::string>();

  try {
    if (type == "polygon") {
      if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw ParseError("polygon spec needs a \"vertices\" array");
      std::vector<Point2> pts;
      pts.reserve(doc["vertices"].size());
      for (const json& v : doc["vertices"]) pts.push_back(require_point(v, "vertex"));
      return Polygon(std::move(pts));
    }
    if (type == "regular_ngon") {
      if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("regular_ngon spec needs an integer \"n\"");
      const int n = doc["n"].get<int>();
      if (n < 3) throw ParseError("regular_ngon: n must be at least 3");
      const double radius = require_number(doc.at("circumradius"), "circumradius");
      if (!(radius > 0.0)) throw ParseError("regular_ngon: circumradius must be positive");
      const Point2 center =
          doc.contains("center") ? require_point(doc["center"], "center") : Point2{0, 0};
      std::vector<Point2> pts;
      pts.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        pts.push_back(center + radius * Vec2{std::cos(a), std::sin(a)});
      }
      return Polygon(std::move(pts));
    }
    if (type == "rectangle") {
      const double w = require_number(doc.at("width"), "width");
      const double h = require_number(doc.at("height"), "height");
      if (!(w > 0.0) || !(h > 0.0))
        throw ParseError("rectangle: width and height must be positive");
      return Polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("domain spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("domain spec: ") + e.what());
  }
  throw ParseError("unknown domain type: " + type);
}

Polygon load_domain_file(const std::filesystem::path& path) {
  return parse_domain_spec(read_file(path));
}

PolynomialVectorField parse_field_spec(const std::string& json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw ParseError("field spec must be an object with a \"type\" string");
  const std::string type = doc["type"].get<std::string>();
  if (type == "named") {
    if (!doc.contains("name") || !doc["name"].is_string())
      throw ParseError("named field spec needs a \"name\" string");
    return PolynomialVectorField::named(doc["name"].get<std::string>());
  }
  if (type == "polynomial") {
    if (!doc.contains("vx") || !doc.contains("vy"))
      throw ParseError("polynomial field spec needs \"vx\" and \"vy\" arrays");
    return {parse_component(doc["vx"], "vx"), parse_component(doc["vy"], "vy")};
  }
  throw ParseError("unknown field type: " + type);
}

PolynomialVectorField load_field_file(const std::filesystem::path& path) {
  return parse_field_spec(read_file(path));
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string emit_domain_spec(const Polygon& p) {
  std::string out = "{\"type\": \"polygon\", \"vertices\": [";
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += "[" + format_full(v[i].x) + ", " + format_full(v[i].y) + "]";
  }
  out += "]}";
  return out;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

namespace {

struct SvgTransform {
  double sx = 1.0, ox = 0.0, oy = 0.0;
  double px(double x) const { return ox + sx * x; }
  double py(double y) const { return oy - sx * y; }  // flip y for SVG
};

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void expand_bbox(double x, double y, double& minx, double& miny, double& maxx,
                 double& maxy) {
  minx = std::min(minx, x);
  maxx = std::max(maxx, x);
  miny = std::min(miny, y);
  maxy = std::max(maxy, y);
}

std::string polygon_path(const Polygon& p, const SvgTransform& t) {
  std::string d;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    d += (i == 0 ? "M " : "L ");
    d += coord(t.px(v[i].x)) + " " + coord(t.py(v[i].y)) + " ";
  }
  d += "Z";
  return d;
}

std::string region_path(const ArcBoundaryRegion& region, const SvgTransform& t) {
  std::string d;
  const auto& pieces = region.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Point2 s = piece_start(pieces[i]);
    if (i == 0) d += "M " + coord(t.px(s.x)) + " " + coord(t.py(s.y)) + " ";
    const Point2 e = piece_end(pieces[i]);
    if (const Arc* arc = std::get_if<Arc>(&pieces[i])) {
      const double sweep = arc->angle_end - arc->angle_start;
      const double r = t.sx * arc->radius;
      // y is flipped, so world-CCW arcs render with sweep flag 0.
      d += "A " + coord(r) + " " + coord(r) + " 0 " +
           (sweep > std::numbers::pi ? "1" : "0") + " 0 " + coord(t.px(e.x)) + " " +
           coord(t.py(e.y)) + " ";
    } else {
      d += "L " + coord(t.px(e.x)) + " " + coord(t.py(e.y)) + " ";
    }
  }
  d += "Z";
  return d;
}

}  // namespace

std::string render_set_svg(const Polygon& domain, const CheegerResult* result) {
  double minx = domain.vertices()[0].x, maxx = minx;
  double miny = domain.vertices()[0].y, maxy = miny;
  for (const Point2& v : domain.vertices())
    expand_bbox(v.x, v.y, minx, miny, maxx, maxy);
  if (result) {
    for (const BoundaryPiece& piece : result->cheeger_set.pieces()) {
      const double len = piece_length(piece);
      for (int q = 0; q <= 16; ++q) {
        const Point2 p = piece_point(piece, len * q / 16.0);
        expand_bbox(p.x, p.y, minx, miny, maxx, maxy);
      }
    }
  }

  constexpr double kSize = 1000.0;
  constexpr double kPad = 50.0;
  const double span = std::max(maxx - minx, maxy - miny);
  SvgTransform t;
  t.sx = (kSize - 2.0 * kPad) / (span > 0.0 ? span : 1.0);
  // Center both dimensions inside the viewport.
  t.ox = 0.5 * (kSize - t.sx * (maxx - minx)) - t.sx * minx;
  t.oy = kSize - (0.5 * (kSize - t.sx * (maxy - miny)) - t.sx * miny);

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
      "viewBox=\"0 0 1000 1000\">\n"
      "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  svg += "<path d=\"" + polygon_path(domain, t) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  if (result) {
    if (result->grid.has_value()) {
      for (const Polygon& contour : result->grid->contours)
        svg += "<path d=\"" + polygon_path(contour, t) +
               "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    } else {
      svg += "<path d=\"" + region_path(result->cheeger_set, t) +
             "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void write_set_svg(const std::filesystem::path& path, const Polygon& domain,
                   const CheegerResult* result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << render_set_svg(domain, result);
}

}  // namespace cheeger2d
