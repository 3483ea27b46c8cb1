#pragma once

// Slow, independent reference implementations. Nothing here calls into the
// verifier or detector; they only share the plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"

namespace oracle {

using rectdual::Coord;
using rectdual::Layout;
using rectdual::Orientation;
using rectdual::Rect;
using rectdual::Segment;

/// Internal unit edges, merged along each line into maximal runs.
inline std::vector<Segment> maximal_segments(const Layout& l) {
  Coord x0 = l.rects[0].x, y0 = l.rects[0].y, x1 = l.rects[0].right(), y1 = l.rects[0].top();
  for (const auto& r : l.rects) {
    x0 = std::min(x0, r.x);
    y0 = std::min(y0, r.y);
    x1 = std::max(x1, r.right());
    y1 = std::max(y1, r.top());
  }
  // (orientation, level) -> unit cells t meaning [t, t+1]
  std::map<std::pair<int, Coord>, std::set<Coord>> unit;
  for (const auto& r : l.rects) {
    for (Coord x : {r.x, r.right()}) {
      if (x == x0 || x == x1) continue;
      for (Coord t = r.y; t < r.top(); ++t) unit[{1, x}].insert(t);
    }
    for (Coord y : {r.y, r.top()}) {
      if (y == y0 || y == y1) continue;
      for (Coord t = r.x; t < r.right(); ++t) unit[{0, y}].insert(t);
    }
  }
  std::vector<Segment> out;
  for (const auto& [key, cells] : unit) {
    const Orientation o = key.first ? Orientation::vertical : Orientation::horizontal;
    std::vector<Coord> v(cells.begin(), cells.end());
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
      out.push_back({o, key.second, v[i], v[j] + 1});
      i = j + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every maximal segment equals some whole rectangle side.
inline bool area_universal(const Layout& l) {
  for (const auto& s : maximal_segments(l)) {
    bool found = false;
    for (const auto& r : l.rects) {
      if (s.orientation == Orientation::vertical) {
        found = found || ((r.x == s.level || r.right() == s.level) && r.y == s.lo && r.top() == s.hi);
      } else {
        found = found || ((r.y == s.level || r.top() == s.level) && r.x == s.lo && r.right() == s.hi);
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Pairs (a, b) with a < b whose rects share a border of positive length.
inline std::set<std::pair<std::string, std::string>> contact_pairs(const Layout& l) {
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < l.rects.size(); ++i) {
    for (std::size_t j = i + 1; j < l.rects.size(); ++j) {
      const Rect& a = l.rects[i];
      const Rect& b = l.rects[j];
      const bool vertical = (a.right() == b.x || b.right() == a.x) &&
                            std::min(a.top(), b.top()) > std::max(a.y, b.y);
      const bool horizontal = (a.top() == b.y || b.top() == a.y) &&
                              std::min(a.right(), b.right()) > std::max(a.x, b.x);
      if (vertical || horizontal) {
        out.insert(std::minmax(a.id.name, b.id.name));
      }
    }
  }
  return out;
}

/// Exhaustive search over insertion orders from `path`, memoized on the set
/// of placed vertices. Only for small graphs.
inline bool member_from(const rectdual::PlaneGraph& g, const std::vector<rectdual::VertexIndex>& path) {
  const std::size_t n = g.size();
  std::uint64_t start = 0;
  for (auto v : path) start |= std::uint64_t{1} << v;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::set<std::uint64_t> dead;
  std::function<bool(std::uint64_t)> go = [&](std::uint64_t placed) {
    if (placed == full) return true;
    if (dead.contains(placed)) return false;
    for (rectdual::VertexIndex v = 0; v < n; ++v) {
      if (placed >> v & 1) continue;
      std::size_t inside = 0;
      for (auto w : g.adjacent(v)) inside += placed >> w & 1;
      if (inside == 0 || g.degree_of(v) - inside > 3) continue;
      if (go(placed | std::uint64_t{1} << v)) return true;
    }
    dead.insert(placed);
    return false;
  };
  return go(start);
}

/// All simple paths (as vertex sequences, length >= 2) on degree-4 vertices.
inline std::set<std::vector<rectdual::VertexIndex>> degree4_paths(const rectdual::PlaneGraph& g) {
  std::set<std::vector<rectdual::VertexIndex>> out;
  std::vector<rectdual::VertexIndex> cur;
  std::function<void()> extend = [&] {
    if (cur.size() >= 2) out.insert(cur);
    for (auto w : g.adjacent(cur.back())) {
      if (g.degree_of(w) != 4 || std::find(cur.begin(), cur.end(), w) != cur.end()) continue;
      cur.push_back(w);
      extend();
      cur.pop_back();
    }
  };
  for (rectdual::VertexIndex v = 0; v < g.size(); ++v) {
    if (g.degree_of(v) != 4) continue;
    cur = {v};
    extend();
  }
  return out;
}

/// Random guillotine partition with `n` rects on an integer grid. Cuts that
/// would line up with a cut on the other side of the parent are allowed, so
/// some outputs contain 4-joints; callers filter with validate_partition.
inline Layout guillotine(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Cell {
    Coord x, y, w, h;
  };
  std::vector<Cell> cells{{0, 0, static_cast<Coord>(2 * n), static_cast<Coord>(2 * n)}};
  while (cells.size() < n) {
    std::vector<std::size_t> splittable;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].w > 1 || cells[i].h > 1) splittable.push_back(i);
    }
    if (splittable.empty()) break;
    const std::size_t i = splittable[std::uniform_int_distribution<std::size_t>(0, splittable.size() - 1)(rng)];
    Cell c = cells[i];
    bool vertical = c.w > 1 && (c.h == 1 || rng() % 2);
    if (vertical) {
      const Coord cut = std::uniform_int_distribution<Coord>(1, c.w - 1)(rng);
      cells[i] = {c.x, c.y, cut, c.h};
      cells.push_back({c.x + cut, c.y, c.w - cut, c.h});
    } else {
      const Coord cut = std::uniform_int_distribution<Coord>(1, c.h - 1)(rng);
      cells[i] = {c.x, c.y, c.w, cut};
      cells.push_back({c.x, c.y + cut, c.w, c.h - cut});
    }
  }
  Layout out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.rects.push_back({rectdual::VertexId{"r" + std::to_string(i)}, cells[i].x, cells[i].y,
                         cells[i].w, cells[i].h});
  }
  return out;
}

}  // namespace oracle
