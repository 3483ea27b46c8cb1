#pragma once

// Area realization on one-sided layouts. The unknowns are the positions of
// the maximal segments; every rectangle side lies on a maximal segment or on
// the fixed enclosure, so moving a segment reshapes exactly the rectangles
// that rest on it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rectdual/error.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/verifier.hpp"

namespace rectdual {

using RealRect = BasicRect<double>;
using RealLayout = BasicLayout<double>;

/// Target area per rectangle id. Values are ratios: they are rescaled to the
/// enclosure area before solving.
struct AreaAssignment {
  std::map<VertexId, double> areas;
};

struct CartogramLayout {
  std::vector<RealRect> rects;
  double achieved_error = 0;  // max relative area deviation
  std::size_t sweeps = 0;

  RealLayout as_layout() const { return {rects, {}}; }
};

struct SolveOptions {
  double rel_tol = 1e-6;
  std::size_t max_iters = 10000;
};

class NotConverged : public Error {
 public:
  NotConverged(std::size_t max_iters, CartogramLayout best)
      : Error("area solver did not converge in " + std::to_string(max_iters) +
              " sweeps (best error " + std::to_string(best.achieved_error) + ")"),
        max_iters_(max_iters),
        best_(std::move(best)) {}

  std::size_t max_iters() const noexcept { return max_iters_; }
  const CartogramLayout& best() const noexcept { return best_; }

 private:
  std::size_t max_iters_;
  CartogramLayout best_;
};

inline std::map<VertexId, double> measure_areas(const CartogramLayout& c) {
  std::map<VertexId, double> out;
  for (const auto& r : c.rects) out[r.id] = r.w * r.h;
  return out;
}

namespace detail {

/// Segment structure of a layout with movable levels.
class SegmentSystem {
 public:
  // Line ids 0..3 are the enclosure: left, right, bottom, top.
  static constexpr std::size_t kLeft = 0, kRight = 1, kBottom = 2, kTop = 3;

  explicit SegmentSystem(const Layout& layout) {
    const Box<Coord> box = bounding_box(layout);
    level_ = {static_cast<double>(box.x0), static_cast<double>(box.x1),
              static_cast<double>(box.y0), static_cast<double>(box.y1)};
    vertical_ = {true, true, false, false};
    span_ = static_cast<double>(std::max(box.width(), box.height()));

    std::map<std::pair<Orientation, Coord>, std::vector<std::pair<Coord, std::size_t>>> by_line;
    for (const auto& s : extract_maximal_segments(layout)) {
      const std::size_t id = level_.size();
      level_.push_back(static_cast<double>(s.level));
      vertical_.push_back(s.orientation == Orientation::vertical);
      by_line[{s.orientation, s.level}].emplace_back(s.lo, id);
    }
    auto line_of = [&](Orientation o, Coord level, Coord lo) -> std::size_t {
      const auto& list = by_line.at({o, level});
      auto it = std::upper_bound(list.begin(), list.end(),
                                 std::pair{lo, std::numeric_limits<std::size_t>::max()});
      return std::prev(it)->second;
    };

    sides_.reserve(layout.rects.size());
    for (const auto& r : layout.rects) {
      RectSides s;
      s.left = r.x == box.x0 ? kLeft : line_of(Orientation::vertical, r.x, r.y);
      s.right = r.right() == box.x1 ? kRight : line_of(Orientation::vertical, r.right(), r.y);
      s.bottom = r.y == box.y0 ? kBottom : line_of(Orientation::horizontal, r.y, r.x);
      s.top = r.top() == box.y1 ? kTop : line_of(Orientation::horizontal, r.top(), r.x);
      sides_.push_back(s);
    }

    const std::size_t lines = level_.size();
    low_side_.resize(lines);
    high_side_.resize(lines);
    std::vector<std::vector<std::size_t>> stops(lines);
    for (std::size_t i = 0; i < sides_.size(); ++i) {
      const auto& s = sides_[i];
      high_side_[s.right].push_back(i);
      low_side_[s.left].push_back(i);
      high_side_[s.top].push_back(i);
      low_side_[s.bottom].push_back(i);
      for (std::size_t on : {s.left, s.right}) {
        stops[on].push_back(s.bottom);
        stops[on].push_back(s.top);
      }
      for (std::size_t on : {s.bottom, s.top}) {
        stops[on].push_back(s.left);
        stops[on].push_back(s.right);
      }
    }
    // Along every line, the perpendicular lines ending on it keep their
    // order; that fixes every contact and its direction.
    occurrences_.resize(lines);
    for (std::size_t l = 0; l < lines; ++l) {
      auto& list = stops[l];
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      std::sort(list.begin(), list.end(),
                [this](std::size_t a, std::size_t b) { return level_[a] < level_[b]; });
      for (std::size_t k = 0; k < list.size(); ++k) occurrences_[list[k]].push_back({l, k});
    }
    stops_ = std::move(stops);
  }

  std::size_t line_count() const { return level_.size(); }
  std::size_t rect_count() const { return sides_.size(); }
  double span() const { return span_; }

  double width(std::size_t i) const { return level_[sides_[i].right] - level_[sides_[i].left]; }
  double height(std::size_t i) const { return level_[sides_[i].top] - level_[sides_[i].bottom]; }
  double area(std::size_t i) const { return width(i) * height(i); }
  double enclosure_area() const {
    return (level_[kRight] - level_[kLeft]) * (level_[kTop] - level_[kBottom]);
  }

  /// Moves internal line `l` so that the rectangles on its two sides reach
  /// the same achieved-to-target ratio, within the ordering bounds.
  void balance(std::size_t l, const std::vector<double>& target, double gap) {
    double weight_low = 0, weight_high = 0, t_low = 0, t_high = 0;
    double moment_low = 0, moment_high = 0;
    // Rects with their high side on l lie below/left of it.
    for (std::size_t i : high_side_[l]) {
      const double ext = vertical_[l] ? height(i) : width(i);
      const double far = vertical_[l] ? level_[sides_[i].left] : level_[sides_[i].bottom];
      weight_low += ext;
      moment_low += ext * far;
      t_low += target[i];
    }
    for (std::size_t i : low_side_[l]) {
      const double ext = vertical_[l] ? height(i) : width(i);
      const double far = vertical_[l] ? level_[sides_[i].right] : level_[sides_[i].top];
      weight_high += ext;
      moment_high += ext * far;
      t_high += target[i];
    }
    double pos = (moment_low / t_low + moment_high / t_high) /
                 (weight_low / t_low + weight_high / t_high);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (auto [on, k] : occurrences_[l]) {
      const auto& list = stops_[on];
      if (k > 0) lo = std::max(lo, level_[list[k - 1]] + gap);
      if (k + 1 < list.size()) hi = std::min(hi, level_[list[k + 1]] - gap);
    }
    if (lo <= hi) pos = std::clamp(pos, lo, hi);
    level_[l] = pos;
  }

  /// True when every line's stops are strictly increasing by at least `gap`.
  bool ordered(double gap) const {
    for (const auto& list : stops_) {
      for (std::size_t k = 1; k < list.size(); ++k) {
        if (level_[list[k]] - level_[list[k - 1]] < gap) return false;
      }
    }
    return true;
  }

  double error(const std::vector<double>& target) const {
    double worst = 0;
    for (std::size_t i = 0; i < target.size(); ++i) {
      worst = std::max(worst, std::abs(area(i) - target[i]) / target[i]);
    }
    return worst;
  }

  /// Least-squares Newton correction of all internal levels on the relative
  /// residuals, with step halving until the order is kept and the error drops.
  /// Returns false when no improving step was found.
  bool newton(const std::vector<double>& target, double gap) {
    const std::size_t n = sides_.size();
    const std::size_t m = level_.size() - 4;
    if (m == 0) return false;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(m));
    Eigen::VectorXd res(static_cast<Eigen::Index>(n));
    auto put = [&](std::size_t row, std::size_t line, double value) {
      if (line >= 4) {
        jac(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(line - 4)) += value;
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = sides_[i];
      const double inv = 1.0 / target[i];
      put(i, s.right, height(i) * inv);
      put(i, s.left, -height(i) * inv);
      put(i, s.top, width(i) * inv);
      put(i, s.bottom, -width(i) * inv);
      res(static_cast<Eigen::Index>(i)) = (area(i) - target[i]) * inv;
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-res);
    if (!step.allFinite()) return false;
    const auto saved = level_;
    const double before = error(target);
    double alpha = 1.0;
    for (int tries = 0; tries < 30; ++tries, alpha *= 0.5) {
      for (std::size_t l = 4; l < level_.size(); ++l) {
        level_[l] = saved[l] + alpha * step(static_cast<Eigen::Index>(l - 4));
      }
      if (ordered(gap) && error(target) < before) return true;
    }
    level_ = saved;
    return false;
  }

  CartogramLayout snapshot(const Layout& source) const {
    CartogramLayout out;
    out.rects.reserve(sides_.size());
    for (std::size_t i = 0; i < sides_.size(); ++i) {
      out.rects.push_back({source.rects[i].id, level_[sides_[i].left], level_[sides_[i].bottom],
                           width(i), height(i)});
    }
    return out;
  }

 private:
  struct RectSides {
    std::size_t left, right, bottom, top;
  };
  struct Occurrence {
    std::size_t line;
    std::size_t pos;
  };

  std::vector<double> level_;
  std::vector<bool> vertical_;
  double span_ = 0;
  std::vector<RectSides> sides_;
  std::vector<std::vector<std::size_t>> low_side_, high_side_;
  std::vector<std::vector<std::size_t>> stops_;
  std::vector<std::vector<Occurrence>> occurrences_;
};

}  // namespace detail

/// Layouts with at most this many lines also get a Newton correction after
/// each balancing sweep; plain balancing crawls when target areas differ by
/// orders of magnitude.
inline constexpr std::size_t kNewtonLineLimit = 400;

/// Realizes `targets` on a one-sided layout inside its fixed enclosure by
/// repeated sweeps that rebalance every maximal segment between its two
/// sides. The result is weakly equivalent to the source.
inline CartogramLayout solve_areas(const Layout& layout, const AreaAssignment& targets,
                                   SolveOptions options = {}) {
  if (!(options.rel_tol > 0)) throw PreconditionError("tolerance must be positive");
  const auto au = is_area_universal(layout);
  if (!au.universal) throw NotAreaUniversal("layout is not area-universal");
  if (targets.areas.size() != layout.rects.size()) {
    throw PreconditionError("area assignment must name every rectangle exactly once");
  }

  detail::SegmentSystem system(layout);
  std::vector<double> target(layout.rects.size());
  double total = 0;
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    auto it = targets.areas.find(layout.rects[i].id);
    if (it == targets.areas.end()) {
      throw PreconditionError("no target area for " + layout.rects[i].id.name);
    }
    if (!(it->second > 0) || !std::isfinite(it->second)) {
      throw PreconditionError("target area for " + layout.rects[i].id.name + " must be positive");
    }
    target[i] = it->second;
    total += it->second;
  }
  const double scale = system.enclosure_area() / total;
  for (double& t : target) t *= scale;

  const double gap = 1e-9 * system.span();
  const bool small = system.line_count() <= kNewtonLineLimit;
  double err = system.error(target);
  std::size_t sweep = 0;
  while (err > options.rel_tol && sweep < options.max_iters) {
    for (std::size_t l = 4; l < system.line_count(); ++l) system.balance(l, target, gap);
    if (small) system.newton(target, gap);
    ++sweep;
    err = system.error(target);
  }
  CartogramLayout out = system.snapshot(layout);
  out.achieved_error = err;
  out.sweeps = sweep;
  if (err > options.rel_tol) throw NotConverged(options.max_iters, std::move(out));
  return out;
}

}  // namespace rectdual
