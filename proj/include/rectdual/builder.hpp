#pragma once

// Incremental construction of a one-sided rectangular dual: the degree-4 path
// becomes a row of unit squares and every further vertex is added as a strip
// of thickness 1 along the side of the enclosure lined by its placed
// neighbours.

#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rectdual/detector.hpp"
#include "rectdual/error.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"
#include "rectdual/verifier.hpp"

namespace rectdual {

using Origin = std::array<Coord, 2>;

/// k unit squares in a row, left to right in path order, starting at `origin`.
inline Layout init_path_row(const Degree4Path& path, Origin origin) {
  if (path.vertices.size() < 2) {
    throw PreconditionError("initial row needs a path of at least two vertices");
  }
  Layout out;
  out.origin = origin;
  Coord x = origin[0];
  for (const auto& v : path.vertices) {
    out.rects.push_back({v, x, origin[1], 1, 1});
    ++x;
  }
  return out;
}

/// Side picked by the case analysis on the placed neighbours: common bottom
/// edge -> below, common left edge -> left, otherwise right.
inline Side placement_side(std::span<const Rect> placed) {
  if (placed.empty()) throw PreconditionError("placement needs at least one placed neighbour");
  auto same = [&placed](auto key) {
    return std::all_of(placed.begin(), placed.end(),
                       [&](const Rect& r) { return key(r) == key(placed.front()); });
  };
  if (same([](const Rect& r) { return r.y; })) return Side::below;
  if (same([](const Rect& r) { return r.x; })) return Side::left;
  return Side::right;
}

/// Candidate rectangle for `v` on side `s` of the placed neighbours: thickness
/// 1, spanning the summed extent of the neighbours along that side.
inline Rect placement_on(const VertexId& v, std::span<const Rect> placed, Side s) {
  if (placed.empty()) throw PreconditionError("placement needs at least one placed neighbour");
  Coord min_x = placed.front().x, min_y = placed.front().y;
  Coord max_right = placed.front().right(), max_top = placed.front().top();
  Coord sum_w = 0, sum_h = 0;
  for (const auto& r : placed) {
    min_x = std::min(min_x, r.x);
    min_y = std::min(min_y, r.y);
    max_right = std::max(max_right, r.right());
    max_top = std::max(max_top, r.top());
    sum_w += r.w;
    sum_h += r.h;
  }
  switch (s) {
    case Side::below: return {v, min_x, placed.front().y - 1, sum_w, 1};
    case Side::left: return {v, placed.front().x - 1, min_y, 1, sum_h};
    case Side::right: return {v, max_right, min_y, 1, sum_h};
    case Side::above: return {v, min_x, max_top, sum_w, 1};
  }
  return {};
}

inline Rect placement_for(const VertexId& v, std::span<const Rect> placed) {
  return placement_on(v, placed, placement_side(placed));
}

/// Mutable construction state: the layout, its enclosure and, per enclosure
/// side, the rectangles lining it in order (left to right, bottom to top).
/// Holds the invariant that the layout is a rectangular dual of its enclosure.
class DualBuilder {
 public:
  DualBuilder(const Degree4Path& path, Origin origin) : layout_(init_path_row(path, origin)) {
    for (std::size_t i = 0; i < layout_.rects.size(); ++i) {
      index_.emplace(layout_.rects[i].id.name, i);
      line(Side::below).push_back(i);
      line(Side::above).push_back(i);
    }
    line(Side::left).push_back(0);
    line(Side::right).push_back(layout_.rects.size() - 1);
    box_ = {origin[0], origin[1], origin[0] + static_cast<Coord>(layout_.rects.size()),
            origin[1] + 1};
    if (index_.size() != layout_.rects.size()) throw PreconditionError("path repeats a vertex");
    indexed_ = index_.size();
  }

  /// Resumes from an existing rectangular dual.
  explicit DualBuilder(const Layout& layout) : layout_(layout) {
    detail::require_partition(layout_, "DualBuilder");
    box_ = bounding_box(layout_);
    for (std::size_t i = 0; i < layout_.rects.size(); ++i) {
      const Rect& r = layout_.rects[i];
      index_.emplace(r.id.name, i);
      if (r.y == box_.y0) line(Side::below).push_back(i);
      if (r.top() == box_.y1) line(Side::above).push_back(i);
      if (r.x == box_.x0) line(Side::left).push_back(i);
      if (r.right() == box_.x1) line(Side::right).push_back(i);
    }
    indexed_ = layout_.rects.size();
    auto by_x = [this](std::size_t a, std::size_t b) { return layout_.rects[a].x < layout_.rects[b].x; };
    auto by_y = [this](std::size_t a, std::size_t b) { return layout_.rects[a].y < layout_.rects[b].y; };
    std::sort(line(Side::below).begin(), line(Side::below).end(), by_x);
    std::sort(line(Side::above).begin(), line(Side::above).end(), by_x);
    std::sort(line(Side::left).begin(), line(Side::left).end(), by_y);
    std::sort(line(Side::right).begin(), line(Side::right).end(), by_y);
  }

  /// Pre-sizes internal storage for a final layout of `n` rectangles.
  void reserve(std::size_t n) {
    layout_.rects.reserve(n);
    mark_.resize(std::max(mark_.size(), n), 0);
  }

  const Layout& layout() const noexcept { return layout_; }
  Layout take() && { return std::move(layout_); }
  const Box<Coord>& enclosure() const noexcept { return box_; }
  bool contains(const VertexId& v) const {
    sync_index();
    return index_.contains(v.name);
  }

  std::vector<VertexId> side_members(Side s) const {
    std::vector<VertexId> out;
    for (std::size_t i : line(s)) out.push_back(layout_.rects[i].id);
    return out;
  }

  /// Adds `v` next to exactly `placed_neighbors`. The side from the case
  /// analysis is tried first, then below, left, right, above. A side is
  /// accepted only if its strip touches precisely the placed neighbours;
  /// a full-side strip keeps the union rectangular and its corners sit on
  /// enclosure corners, so no 4-joint can arise.
  Side insert(const VertexId& v, const std::vector<VertexId>& placed_neighbors) {
    if (contains(v)) throw PreconditionError("vertex " + v.name + " is already placed");
    if (placed_neighbors.empty()) {
      throw PreconditionError("vertex " + v.name + " has no placed neighbour");
    }
    std::vector<std::size_t> where;
    where.reserve(placed_neighbors.size());
    sync_index();
    for (const auto& u : placed_neighbors) {
      auto it = index_.find(u.name);
      if (it == index_.end()) {
        throw PreconditionError("neighbour " + u.name + " of " + v.name + " is not placed");
      }
      where.push_back(it->second);
    }
    return insert_at(v, where);
  }

  /// As insert, with the placed neighbours given as positions in layout().
  /// The caller guarantees that `v` is new and the positions are distinct.
  Side insert_at(const VertexId& v, std::span<const std::size_t> where) {
    if (where.empty()) throw PreconditionError("vertex " + v.name + " has no placed neighbour");
    scratch_.clear();
    for (std::size_t i : where) scratch_.push_back(layout_.rects.at(i));
    const Side primary = placement_side(scratch_);
    const Rect proposal = placement_on(v, scratch_, primary);
    if (proposal == strip(v, primary) && lines_exactly(primary, where)) {
      append(proposal, primary);
      return primary;
    }
    for (Side s : kAllSides) {
      if (s == primary || !lines_exactly(s, where)) continue;
      append(strip(v, s), s);
      return s;
    }
    throw NoValidPlacement(v.name);
  }

  /// Adds `v` as a strip on side `s` regardless of adjacency; returns the
  /// rectangles it touches (the side's members before insertion).
  std::vector<VertexId> insert_on_side(const VertexId& v, Side s) {
    if (contains(v)) throw PreconditionError("vertex " + v.name + " is already placed");
    auto touched = side_members(s);
    append(strip(v, s), s);
    return touched;
  }

 private:
  std::deque<std::size_t>& line(Side s) { return lines_[static_cast<int>(s)]; }
  const std::deque<std::size_t>& line(Side s) const { return lines_[static_cast<int>(s)]; }

  Rect strip(const VertexId& v, Side s) const {
    switch (s) {
      case Side::below: return {v, box_.x0, box_.y0 - 1, box_.width(), 1};
      case Side::above: return {v, box_.x0, box_.y1, box_.width(), 1};
      case Side::left: return {v, box_.x0 - 1, box_.y0, 1, box_.height()};
      case Side::right: return {v, box_.x1, box_.y0, 1, box_.height()};
    }
    return {};
  }

  bool lines_exactly(Side s, std::span<const std::size_t> members) {
    const auto& l = line(s);
    if (l.size() != members.size()) return false;
    if (mark_.size() < layout_.rects.size()) mark_.resize(layout_.rects.size(), 0);
    ++stamp_;
    for (std::size_t i : l) mark_[i] = stamp_;
    return std::all_of(members.begin(), members.end(),
                       [this](std::size_t i) { return mark_[i] == stamp_; });
  }

  void append(const Rect& r, Side s) {
    const std::size_t i = layout_.rects.size();
    layout_.rects.push_back(r);
    switch (s) {
      case Side::below:
        box_.y0 -= 1;
        line(Side::left).push_front(i);
        line(Side::right).push_front(i);
        break;
      case Side::above:
        box_.y1 += 1;
        line(Side::left).push_back(i);
        line(Side::right).push_back(i);
        break;
      case Side::left:
        box_.x0 -= 1;
        line(Side::below).push_front(i);
        line(Side::above).push_front(i);
        break;
      case Side::right:
        box_.x1 += 1;
        line(Side::below).push_back(i);
        line(Side::above).push_back(i);
        break;
    }
    line(s).assign(1, i);
  }

  Layout layout_;
  // Name lookup is only needed by the name-based entry points, so rects
  // appended through insert_at are indexed on demand.
  void sync_index() const {
    for (; indexed_ < layout_.rects.size(); ++indexed_) {
      index_.emplace(layout_.rects[indexed_].id.name, indexed_);
    }
  }

  mutable std::unordered_map<std::string, std::size_t> index_;
  mutable std::size_t indexed_ = 0;
  std::array<std::deque<std::size_t>, 4> lines_;
  Box<Coord> box_;
  std::vector<std::uint32_t> mark_;
  std::vector<Rect> scratch_;
  std::uint32_t stamp_ = 0;
};

/// Adds vertex `v` of `g` to `layout`, next to its neighbours already there.
inline Layout insert_vertex(const Layout& layout, const VertexId& v, const PlaneGraph& g) {
  DualBuilder b(layout);
  std::vector<VertexId> placed;
  for (const auto& u : neighborhood(g, v)) {
    if (b.contains(u)) placed.push_back(u);
  }
  b.insert(v, placed);
  return std::move(b).take();
}

namespace detail {

/// Lays out a growth order straight from graph indices.
inline Layout replay(const PlaneGraph& g, const GrowthOrder& order, Origin origin) {
  Degree4Path path;
  for (VertexIndex v : order.path) path.vertices.push_back(g.label(v));
  DualBuilder b(path, origin);
  b.reserve(g.size());
  constexpr std::size_t kUnplaced = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(g.size(), kUnplaced);
  std::size_t next = 0;
  for (VertexIndex v : order.path) position[v] = next++;
  std::vector<std::size_t> where;
  for (VertexIndex v : order.order) {
    where.clear();
    for (VertexIndex w : g.adjacent(v)) {
      if (position[w] != kUnplaced) where.push_back(position[w]);
    }
    b.insert_at(g.label(v), where);
    position[v] = next++;
  }
  return std::move(b).take();
}

}  // namespace detail

/// Replays a membership certificate into a rectangular dual.
inline Layout build_dual(const PlaneGraph& g, const MembershipCertificate& cert,
                         Origin origin = {0, 0}) {
  if (auto err = certificate_error(g, cert)) {
    throw PreconditionError("certificate does not fit the graph: " + *err);
  }
  DualBuilder b(cert.path, origin);
  b.reserve(cert.path.vertices.size() + cert.insertions.size());
  for (const auto& ins : cert.insertions) b.insert(ins.vertex, ins.placed_neighbors);
  return std::move(b).take();
}

namespace detail {

inline std::set<std::pair<std::string, std::string>> contact_set(const Layout& l) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : contacts(l)) {
    const auto& a = l.rects[c.low].id.name;
    const auto& b = l.rects[c.high].id.name;
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

inline bool touches(const Rect& a, const Rect& b, Side side_of_a) {
  switch (side_of_a) {
    case Side::below: return b.top() == a.y && std::min(a.right(), b.right()) > std::max(a.x, b.x);
    case Side::above: return b.y == a.top() && std::min(a.right(), b.right()) > std::max(a.x, b.x);
    case Side::left: return b.right() == a.x && std::min(a.top(), b.top()) > std::max(a.y, b.y);
    case Side::right: return b.x == a.right() && std::min(a.top(), b.top()) > std::max(a.y, b.y);
  }
  return false;
}

}  // namespace detail

/// Removes the rectangle of an exterior vertex and closes the hole.
///
/// A rectangle spanning a whole side of the enclosure is simply dropped.
/// Otherwise the neighbours across one of its sides are stretched over it:
/// first a single neighbour whose side coincides with that side, then a row
/// of neighbours that exactly tiles it. A repair is accepted only if the
/// result is a valid, one-sided dual whose contacts are those of the input
/// minus the deleted rectangle.
inline Layout delete_exterior_rect(const Layout& layout, const VertexId& v) {
  detail::require_partition(layout, "delete_exterior_rect");
  auto pos = std::find_if(layout.rects.begin(), layout.rects.end(),
                          [&v](const Rect& r) { return r.id == v; });
  if (pos == layout.rects.end()) throw PreconditionError("unknown rectangle " + v.name);
  if (layout.rects.size() < 2) throw PreconditionError("cannot delete the only rectangle");
  const Rect hole = *pos;
  const std::size_t hole_idx = static_cast<std::size_t>(pos - layout.rects.begin());
  const Box<Coord> box = bounding_box(layout);
  const bool on_bottom = hole.y == box.y0, on_top = hole.top() == box.y1;
  const bool on_left = hole.x == box.x0, on_right = hole.right() == box.x1;
  if (!(on_bottom || on_top || on_left || on_right)) throw NotExterior(v.name);

  auto expected = detail::contact_set(layout);
  std::erase_if(expected, [&v](const auto& e) { return e.first == v.name || e.second == v.name; });

  Layout base = layout;
  base.rects.erase(base.rects.begin() + static_cast<std::ptrdiff_t>(hole_idx));

  auto acceptable = [&expected](const Layout& l) {
    if (!validate_partition(l).ok) return false;
    if (detail::contact_set(l) != expected) return false;
    return is_area_universal(l).universal;
  };

  const bool full_width = on_left && on_right;
  const bool full_height = on_bottom && on_top;
  if ((full_width && (on_bottom || on_top)) || (full_height && (on_left || on_right))) {
    if (acceptable(base)) return base;
  }

  auto stretched = [&](Side s, bool single) -> std::optional<Layout> {
    std::vector<std::size_t> across;
    for (std::size_t i = 0; i < base.rects.size(); ++i) {
      if (detail::touches(hole, base.rects[i], s)) across.push_back(i);
    }
    if (across.empty() || (single != (across.size() == 1))) return std::nullopt;
    Layout out = base;
    for (std::size_t i : across) {
      Rect& r = out.rects[i];
      const bool inside = (s == Side::below || s == Side::above)
                              ? r.x >= hole.x && r.right() <= hole.right()
                              : r.y >= hole.y && r.top() <= hole.top();
      if (!inside) return std::nullopt;
      switch (s) {
        case Side::below: r.h += hole.h; break;
        case Side::above: r.y = hole.y; r.h += hole.h; break;
        case Side::left: r.w += hole.w; break;
        case Side::right: r.x = hole.x; r.w += hole.w; break;
      }
    }
    return out;
  };

  for (bool single : {true, false}) {
    for (Side s : kAllSides) {
      if (auto candidate = stretched(s, single); candidate && acceptable(*candidate)) {
        return *candidate;
      }
    }
  }
  throw NotRepairable(v.name);
}

}  // namespace rectdual
