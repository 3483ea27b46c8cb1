#pragma once

// SVG rendering. Layouts grow upward and SVG grows downward, so y is
// negated and shifted: a rect's top edge maps to svg y = (ymax - top) * scale.
// Integer layouts keep integer coordinates; real layouts print 3 decimals.
// Output depends only on the input, byte for byte.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <type_traits>

#include "rectdual/geometry.hpp"

namespace rectdual {

/// Target size in pixels of the larger enclosure side.
inline constexpr int kSvgExtent = 800;

namespace detail {

inline std::string svg_number(Coord v) { return std::to_string(v); }

inline std::string svg_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}

inline std::string xml_escape(const std::string& s) {
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

}  // namespace detail

template <typename T>
std::string render_svg(const BasicLayout<T>& layout) {
  const Box<T> box = bounding_box(layout);
  const T span = std::max(box.width(), box.height());
  T scale;
  if constexpr (std::is_integral_v<T>) {
    scale = span > 0 ? std::max<T>(1, kSvgExtent / span) : 1;
  } else {
    scale = span > 0 ? kSvgExtent / span : 1.0;
  }
  auto num = [](T v) { return detail::svg_number(v); };
  const T width = box.width() * scale;
  const T height = box.height() * scale;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  for (const auto& r : layout.rects) {
    const T x = (r.x - box.x0) * scale;
    const T y = (box.y1 - r.top()) * scale;
    const T w = r.w * scale;
    const T h = r.h * scale;
    os << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
       << "\" height=\"" << num(h) << "\" fill=\"#eef3fb\" stroke=\"#1f3a5f\"/>\n";
  }
  for (const auto& r : layout.rects) {
    const double cx = static_cast<double>(r.x - box.x0) * scale + static_cast<double>(r.w * scale) / 2;
    const double cy = static_cast<double>(box.y1 - r.top()) * scale + static_cast<double>(r.h * scale) / 2;
    os << "  <text x=\"" << detail::svg_number(cx) << "\" y=\"" << detail::svg_number(cy)
       << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << detail::xml_escape(r.id.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rectdual
