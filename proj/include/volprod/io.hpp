#pragma once

// Body documents (JSON), vertex CSV, number formatting, and SVG output.
//
// Body JSON: {"name": str, "vertices": [[x, y], ...], "centre": [x, y]?}

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "volprod/geometry.hpp"

namespace volprod {

/// Malformed input or an unusable file; the CLI maps it to exit code 2.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BodyDocument {
  std::string name;
  std::vector<Point2> vertices;
  std::optional<Point2> centre;
};

/// 17 significant digits, so every double round-trips.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline Point2 parse_pair(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DocumentError(what + " must be a [x, y] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline BodyDocument parse_body_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw DocumentError("body document must be a JSON object");
  BodyDocument doc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw DocumentError("\"name\" must be a string");
    doc.name = j["name"].get<std::string>();
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw DocumentError("\"vertices\" must be an array");
  for (std::size_t i = 0; i < j["vertices"].size(); ++i)
    doc.vertices.push_back(detail::parse_pair(j["vertices"][i], "vertex " + std::to_string(i)));
  if (j.contains("centre") && !j["centre"].is_null()) doc.centre = detail::parse_pair(j["centre"], "\"centre\"");
  return doc;
}

inline std::string to_json(const BodyDocument& doc) {
  nlohmann::json j;
  j["name"] = doc.name;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : doc.vertices) j["vertices"].push_back({v.x, v.y});
  if (doc.centre) j["centre"] = {doc.centre->x, doc.centre->y};
  return j.dump(2) + "\n";
}

inline BodyDocument make_document(std::string name, const ConvexPolygon& k, std::optional<Point2> centre = {}) {
  return {std::move(name), {k.vertices().begin(), k.vertices().end()}, centre};
}

inline std::string vertex_csv(const ConvexPolygon& k) {
  std::string out = "x,y\n";
  for (const auto& v : k.vertices()) out += format_double(v.x) + "," + format_double(v.y) + "\n";
  return out;
}

inline ConvexPolygon parse_vertex_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Point2> pts;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "x,y") continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DocumentError("CSV row without a comma: " + line);
    try {
      const double x = std::stod(line.substr(0, comma));
      const double y = std::stod(line.substr(comma + 1));
      pts.push_back({x, y});
    } catch (const std::logic_error&) {
      throw DocumentError("CSV row is not numeric: " + line);
    }
  }
  return make_polygon(pts);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw DocumentError("write failed for " + path);
}

/// Minimal SVG scene in world coordinates (y up).
class SvgScene {
 public:
  void polygon(const ConvexPolygon& k, const std::string& stroke, const std::string& fill = "none",
               const std::string& id = "") {
    std::string pts;
    for (const auto& v : k.vertices()) pts += format_point(v) + " ";
    if (!pts.empty()) pts.pop_back();
    add_bounds(k.vertices());
    items_ += "  <polygon" + id_attr(id) + " points=\"" + pts + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
              "\" stroke-width=\"" + stroke_width_token_ + "\"/>\n";
  }
  void polyline(const std::vector<Point2>& pts, const std::string& stroke, const std::string& id = "") {
    std::string s;
    for (const auto& v : pts) s += format_point(v) + " ";
    if (!s.empty()) s.pop_back();
    add_bounds(pts);
    items_ += "  <polyline" + id_attr(id) + " points=\"" + s + "\" fill=\"none\" stroke=\"" + stroke +
              "\" stroke-width=\"" + stroke_width_token_ + "\"/>\n";
  }
  void circle(const Point2& c, double r, const std::string& stroke, const std::string& fill = "none",
              const std::string& id = "") {
    add_bounds(std::vector<Point2>{c - Point2{r, r}, c + Point2{r, r}});
    items_ += "  <circle" + id_attr(id) + " cx=\"" + num(c.x) + "\" cy=\"" + num(-c.y) + "\" r=\"" + num(r) +
              "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + stroke_width_token_ + "\"/>\n";
  }
  void marker(const Point2& c, const std::string& colour, const std::string& id = "") {
    items_ += "  <circle" + id_attr(id) + " cx=\"" + num(c.x) + "\" cy=\"" + num(-c.y) + "\" r=\"" +
              marker_token_ + "\" fill=\"" + colour + "\"/>\n";
  }
  void text(const Point2& at, const std::string& s) {
    items_ += "  <text x=\"" + num(at.x) + "\" y=\"" + num(-at.y) + "\" font-size=\"" + font_token_ + "\">" +
              escape(s) + "</text>\n";
  }

  std::string str() const {
    const double w = hi_.x - lo_.x, h = hi_.y - lo_.y;
    const double pad = 0.05 * std::max(w, h) + 1e-9;
    const double size = std::max(w, h) + 2.0 * pad;
    std::string body = items_;
    replace_all(body, stroke_width_token_, num(size / 400.0));
    replace_all(body, marker_token_, num(size / 150.0));
    replace_all(body, font_token_, num(size / 30.0));
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" +
           num(lo_.x - pad) + " " + num(-hi_.y - pad) + " " + num(size) + " " + num(size) + "\">\n" + body +
           "</svg>\n";
  }

 private:
  static std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
  }
  static std::string format_point(const Point2& p) { return num(p.x) + "," + num(-p.y); }
  static std::string id_attr(const std::string& id) { return id.empty() ? "" : " id=\"" + escape(id) + "\""; }
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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
  static void replace_all(std::string& s, const std::string& from, const std::string& to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
      s.replace(pos, from.size(), to);
  }
  template <class Range>
  void add_bounds(const Range& pts) {
    for (const auto& p : pts) {
      if (empty_) {
        lo_ = hi_ = p;
        empty_ = false;
      }
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
  }

  std::string items_;
  Point2 lo_{-1, -1}, hi_{1, 1};
  bool empty_ = true;
  const std::string stroke_width_token_ = "@SW@";
  const std::string marker_token_ = "@MR@";
  const std::string font_token_ = "@FS@";
};

}  // namespace volprod
