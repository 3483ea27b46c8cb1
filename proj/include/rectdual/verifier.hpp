#pragma once

// Geometric checks on layouts: partition validity, maximal segments,
// area-universality, contact graph and weak equivalence. Nothing here depends
// on how a layout was produced.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rectdual/error.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"

namespace rectdual {

enum class ViolationKind { overlap, gap, four_joint, duplicate_id, nonpositive_extent };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::gap: return "gap";
    case ViolationKind::four_joint: return "four_joint";
    case ViolationKind::duplicate_id: return "duplicate_id";
    case ViolationKind::nonpositive_extent: return "nonpositive_extent";
  }
  return "?";
}

struct Violation {
  ViolationKind kind{};
  std::string location;
  std::vector<VertexId> ids;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
};

namespace detail {

inline std::string point_string(Coord x, Coord y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

struct PointHash {
  std::size_t operator()(const std::pair<Coord, Coord>& p) const noexcept {
    const auto a = static_cast<std::uint64_t>(p.first);
    const auto b = static_cast<std::uint64_t>(p.second);
    return std::hash<std::uint64_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL));
  }
};

// First overlapping pair found by a left-to-right sweep. Active y-intervals
// are disjoint until the first overlap, so checking the two neighbours of an
// inserted interval suffices to detect one.
inline std::vector<std::pair<std::size_t, std::size_t>> find_overlaps(
    const std::vector<Rect>& rects, const std::vector<std::size_t>& live) {
  struct Event {
    Coord x;
    int type;  // 0 = remove, 1 = insert
    std::size_t idx;
  };
  std::vector<Event> events;
  events.reserve(live.size() * 2);
  for (std::size_t i : live) {
    events.push_back({rects[i].x, 1, i});
    events.push_back({rects[i].right(), 0, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.x, a.type, a.idx) < std::tie(b.x, b.type, b.idx);
  });
  std::set<std::pair<Coord, std::size_t>> active;  // (y0, idx)
  std::vector<std::pair<std::size_t, std::size_t>> found;
  for (const auto& e : events) {
    const Rect& r = rects[e.idx];
    if (e.type == 0) {
      active.erase({r.y, e.idx});
      continue;
    }
    auto it = active.lower_bound({r.y, 0});
    if (it != active.end() && it->first < r.top()) found.emplace_back(it->second, e.idx);
    if (it != active.begin()) {
      auto prev = std::prev(it);
      if (rects[prev->second].top() > r.y) found.emplace_back(prev->second, e.idx);
    }
    active.insert({r.y, e.idx});
  }
  return found;
}

/// Edge of a rectangle lying on a line, as an interval along that line.
struct LineEdge {
  Coord level;
  Coord lo;
  Coord hi;
  std::size_t idx;
};

}  // namespace detail

/// Checks that the rectangles tile their bounding box and no point is a
/// corner of four of them.
inline ValidationReport validate_partition(const Layout& layout) {
  if (layout.rects.empty()) throw PreconditionError("layout has no rectangles");
  ValidationReport report;
  auto add = [&report](ViolationKind k, std::string where, std::vector<VertexId> ids) {
    report.ok = false;
    report.violations.push_back({k, std::move(where), std::move(ids)});
  };

  std::unordered_set<std::string> ids;
  for (const auto& r : layout.rects) {
    if (!ids.insert(r.id.name).second) add(ViolationKind::duplicate_id, r.id.name, {r.id});
  }

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    const Rect& r = layout.rects[i];
    if (r.w <= 0 || r.h <= 0) {
      add(ViolationKind::nonpositive_extent, detail::point_string(r.x, r.y), {r.id});
    } else {
      live.push_back(i);
    }
  }

  const auto overlaps = detail::find_overlaps(layout.rects, live);
  for (auto [a, b] : overlaps) {
    add(ViolationKind::overlap, layout.rects[a].id.name + "/" + layout.rects[b].id.name,
        {layout.rects[a].id, layout.rects[b].id});
  }

  const Box<Coord> box = bounding_box(layout);
  Coord covered = 0;
  for (std::size_t i : live) covered += layout.rects[i].area();
  const Coord enclosure = box.width() * box.height();
  if ((overlaps.empty() && covered != enclosure) || covered < enclosure) {
    add(ViolationKind::gap,
        "[" + std::to_string(box.x0) + "," + std::to_string(box.x1) + "]x[" +
            std::to_string(box.y0) + "," + std::to_string(box.y1) + "]",
        {});
  }

  std::unordered_map<std::pair<Coord, Coord>, std::vector<std::size_t>, detail::PointHash>
      corners;
  corners.reserve(live.size() * 4);
  for (std::size_t i : live) {
    const Rect& r = layout.rects[i];
    for (auto p : {std::pair{r.x, r.y}, std::pair{r.right(), r.y}, std::pair{r.x, r.top()},
                   std::pair{r.right(), r.top()}}) {
      corners[p].push_back(i);
    }
  }
  std::vector<std::pair<std::pair<Coord, Coord>, std::vector<std::size_t>>> joints;
  for (auto& [p, members] : corners) {
    if (members.size() >= 4) joints.emplace_back(p, members);
  }
  std::sort(joints.begin(), joints.end());
  for (const auto& [p, members] : joints) {
    std::vector<VertexId> who;
    for (std::size_t i : members) who.push_back(layout.rects[i].id);
    add(ViolationKind::four_joint, detail::point_string(p.first, p.second), std::move(who));
  }
  return report;
}

namespace detail {

inline void require_partition(const Layout& layout, const char* what) {
  const auto report = validate_partition(layout);
  if (!report.ok) {
    throw PreconditionError(std::string(what) + ": layout is not a valid partition (" +
                            to_string(report.violations.front().kind) + " at " +
                            report.violations.front().location + ")");
  }
}

}  // namespace detail

/// Maximal internal segments, sorted by (orientation, level, lo).
inline std::vector<Segment> extract_maximal_segments(const Layout& layout) {
  detail::require_partition(layout, "extract_maximal_segments");
  const Box<Coord> box = bounding_box(layout);
  std::vector<Segment> pieces;
  for (const auto& r : layout.rects) {
    if (r.y != box.y0) pieces.push_back(side_segment(r, Side::below));
    if (r.top() != box.y1) pieces.push_back(side_segment(r, Side::above));
    if (r.x != box.x0) pieces.push_back(side_segment(r, Side::left));
    if (r.right() != box.x1) pieces.push_back(side_segment(r, Side::right));
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<Segment> out;
  for (const auto& p : pieces) {
    if (!out.empty() && out.back().orientation == p.orientation && out.back().level == p.level &&
        p.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

struct UniversalityResult {
  bool universal = true;
  std::optional<Segment> witness;
};

/// One-sidedness test: every maximal segment must be an entire side of some
/// rectangle. The witness is the first failing segment in sorted order.
inline UniversalityResult is_area_universal(const Layout& layout) {
  const auto segments = extract_maximal_segments(layout);
  std::vector<Segment> sides;
  sides.reserve(layout.rects.size() * 4);
  for (const auto& r : layout.rects) {
    for (Side s : kAllSides) sides.push_back(side_segment(r, s));
  }
  std::sort(sides.begin(), sides.end());
  for (const auto& seg : segments) {
    if (!std::binary_search(sides.begin(), sides.end(), seg)) return {false, seg};
  }
  return {true, std::nullopt};
}

/// A positive-length contact. For vertical contacts `low` is left of `high`;
/// for horizontal ones `low` lies below `high`.
struct Contact {
  std::size_t low;
  std::size_t high;
  Orientation line;
};

namespace detail {

inline void sweep_contacts(std::vector<LineEdge> highs, std::vector<LineEdge> lows,
                           Orientation line, std::vector<Contact>& out) {
  auto order = [](const LineEdge& a, const LineEdge& b) {
    return std::tie(a.level, a.lo) < std::tie(b.level, b.lo);
  };
  std::sort(highs.begin(), highs.end(), order);
  std::sort(lows.begin(), lows.end(), order);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < highs.size() && j < lows.size()) {
    if (highs[i].level != lows[j].level) {
      if (highs[i].level < lows[j].level) {
        ++i;
      } else {
        ++j;
      }
      continue;
    }
    const auto& a = highs[i];
    const auto& b = lows[j];
    if (std::min(a.hi, b.hi) > std::max(a.lo, b.lo)) out.push_back({a.idx, b.idx, line});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
}

}  // namespace detail

/// All positive-length contacts between rectangles (indices into layout.rects).
inline std::vector<Contact> contacts(const Layout& layout) {
  detail::require_partition(layout, "contacts");
  std::vector<detail::LineEdge> rights, lefts, tops, bottoms;
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    const Rect& r = layout.rects[i];
    rights.push_back({r.right(), r.y, r.top(), i});
    lefts.push_back({r.x, r.y, r.top(), i});
    tops.push_back({r.top(), r.x, r.right(), i});
    bottoms.push_back({r.y, r.x, r.right(), i});
  }
  std::vector<Contact> out;
  detail::sweep_contacts(std::move(rights), std::move(lefts), Orientation::vertical, out);
  detail::sweep_contacts(std::move(tops), std::move(bottoms), Orientation::horizontal, out);
  return out;
}

/// Dual graph of the layout: one vertex per rectangle, an edge per
/// positive-length contact. Corner-only contact is not adjacency.
inline PlaneGraph contact_graph(const Layout& layout) {
  std::vector<PlaneGraph::Edge> edges;
  for (const auto& c : contacts(layout)) {
    edges.emplace_back(layout.rects[c.low].id, layout.rects[c.high].id);
  }
  std::vector<VertexId> all;
  all.reserve(layout.rects.size());
  for (const auto& r : layout.rects) all.push_back(r.id);
  return PlaneGraph::from_edges(edges, all);
}

/// Same rectangles, same contacts, same contact directions.
inline bool weak_equivalent(const Layout& a, const Layout& b) {
  using Key = std::tuple<std::string, std::string, Orientation>;
  auto keys = [](const Layout& l) {
    std::vector<Key> out;
    for (const auto& c : contacts(l)) {
      out.emplace_back(l.rects[c.low].id.name, l.rects[c.high].id.name, c.line);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto ids = [](const Layout& l) {
    std::vector<std::string> out;
    for (const auto& r : l.rects) out.push_back(r.id.name);
    std::sort(out.begin(), out.end());
    return out;
  };
  if (ids(a) != ids(b)) return false;
  return keys(a) == keys(b);
}

/// Maps a real-coordinate layout onto the integer rank grid of its distinct
/// coordinates. Coordinates closer than `rel_tol` times the larger enclosure
/// side are identified. The result has the same combinatorics as the input,
/// so all exact checks above apply to it.
inline Layout snap_to_grid(const BasicLayout<double>& layout, double rel_tol = 1e-9) {
  const Box<double> box = bounding_box(layout);
  const double tol = rel_tol * std::max({box.width(), box.height(), 1e-300});
  auto ranks = [tol](std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, Coord>> table;
    Coord rank = -1;
    double anchor = 0;
    for (double v : values) {
      if (rank < 0 || v - anchor > tol) {
        ++rank;
        anchor = v;
      }
      table.emplace_back(v, rank);
    }
    return table;
  };
  std::vector<double> xs, ys;
  for (const auto& r : layout.rects) {
    xs.push_back(r.x);
    xs.push_back(r.x + r.w);
    ys.push_back(r.y);
    ys.push_back(r.y + r.h);
  }
  const auto xr = ranks(xs);
  const auto yr = ranks(ys);
  auto lookup = [](const std::vector<std::pair<double, Coord>>& t, double v) {
    auto it = std::lower_bound(t.begin(), t.end(), std::pair{v, Coord{-1}});
    return it->second;
  };
  Layout out;
  for (const auto& r : layout.rects) {
    const Coord x0 = lookup(xr, r.x);
    const Coord x1 = lookup(xr, r.x + r.w);
    const Coord y0 = lookup(yr, r.y);
    const Coord y1 = lookup(yr, r.y + r.h);
    out.rects.push_back({r.id, x0, y0, x1 - x0, y1 - y0});
  }
  return out;
}

}  // namespace rectdual
