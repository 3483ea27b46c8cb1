#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "rectdual/graph.hpp"

namespace rectdual {

using Coord = std::int64_t;

/// Axis-aligned rectangle labelled by the vertex it represents; (x, y) is the
/// bottom-left corner.
template <typename T>
struct BasicRect {
  VertexId id;
  T x{};
  T y{};
  T w{};
  T h{};

  T right() const { return x + w; }
  T top() const { return y + h; }
  T area() const { return w * h; }

  bool operator==(const BasicRect&) const = default;
};

template <typename T>
struct Box {
  T x0{};
  T y0{};
  T x1{};
  T y1{};

  T width() const { return x1 - x0; }
  T height() const { return y1 - y0; }
  bool operator==(const Box&) const = default;
};

/// A set of labelled rectangles; a rectangular dual once it tiles its
/// bounding box without 4-joints.
template <typename T>
struct BasicLayout {
  std::vector<BasicRect<T>> rects;
  std::array<T, 2> origin{};

  const BasicRect<T>* find(const VertexId& id) const {
    for (const auto& r : rects) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  bool operator==(const BasicLayout&) const = default;
};

using Rect = BasicRect<Coord>;
using Layout = BasicLayout<Coord>;

template <typename T>
Box<T> bounding_box(const BasicLayout<T>& layout) {
  if (layout.rects.empty()) return {};
  Box<T> b{layout.rects.front().x, layout.rects.front().y, layout.rects.front().right(),
           layout.rects.front().top()};
  for (const auto& r : layout.rects) {
    b.x0 = std::min(b.x0, r.x);
    b.y0 = std::min(b.y0, r.y);
    b.x1 = std::max(b.x1, r.right());
    b.y1 = std::max(b.y1, r.top());
  }
  return b;
}

/// Side of a rectangle or of the enclosure.
enum class Side { below, left, right, above };

inline constexpr std::array<Side, 4> kAllSides{Side::below, Side::left, Side::right,
                                               Side::above};

inline const char* to_string(Side s) {
  switch (s) {
    case Side::below: return "below";
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::above: return "above";
  }
  return "?";
}

enum class Orientation { horizontal, vertical };

/// Maximal internal line segment. `level` is the fixed coordinate (y for
/// horizontal, x for vertical) and [lo, hi] the covered interval.
struct Segment {
  Orientation orientation{};
  Coord level{};
  Coord lo{};
  Coord hi{};

  Coord length() const { return hi - lo; }
  auto operator<=>(const Segment&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Segment& s) {
  return os << (s.orientation == Orientation::horizontal ? "H" : "V") << "@" << s.level
            << "[" << s.lo << "," << s.hi << "]";
}

/// Segment covering the given side of `r`.
inline Segment side_segment(const Rect& r, Side s) {
  switch (s) {
    case Side::below: return {Orientation::horizontal, r.y, r.x, r.right()};
    case Side::above: return {Orientation::horizontal, r.top(), r.x, r.right()};
    case Side::left: return {Orientation::vertical, r.x, r.y, r.top()};
    case Side::right: return {Orientation::vertical, r.right(), r.y, r.top()};
  }
  return {};
}

}  // namespace rectdual
