#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rectdual/error.hpp"

namespace rectdual {

/// Vertex label. Ordering is lexicographic on the raw bytes of the name.
struct VertexId {
  std::string name;

  VertexId() = default;
  explicit VertexId(std::string n) : name(std::move(n)) {}

  auto operator<=>(const VertexId&) const = default;
  bool operator==(const VertexId&) const = default;
};

}  // namespace rectdual

template <>
struct std::hash<rectdual::VertexId> {
  std::size_t operator()(const rectdual::VertexId& v) const noexcept {
    return std::hash<std::string>{}(v.name);
  }
};

namespace rectdual {

using VertexIndex = std::uint32_t;

/// Undirected simple connected graph with labelled vertices.
///
/// Immutable after construction. Vertices keep the order in which they were
/// first introduced; adjacency lists are sorted by vertex index. Equality is
/// on the labelled vertex and edge sets, independent of presentation order.
class PlaneGraph {
 public:
  using Edge = std::pair<VertexId, VertexId>;

  /// Builds and validates a graph. `isolated` may introduce vertices that do
  /// not appear in any edge (only meaningful for the single-vertex graph).
  static PlaneGraph from_edges(const std::vector<Edge>& edges,
                               const std::vector<VertexId>& isolated = {}) {
    PlaneGraph g;
    for (const auto& v : isolated) g.intern(v);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
      if (a == b) {
        throw GraphError(GraphError::Kind::self_loop, "self-loop at " + a.name);
      }
      const VertexIndex u = g.intern(a);
      const VertexIndex v = g.intern(b);
      const std::uint64_t key = pair_key(u, v);
      if (!seen.insert(key).second) {
        throw GraphError(GraphError::Kind::duplicate_edge,
                         "duplicate edge " + a.name + " " + b.name);
      }
      g.edges_.emplace_back(u, v);
    }
    g.finish();
    return g;
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<VertexId>& vertices() const noexcept { return names_; }
  const VertexId& label(VertexIndex i) const { return names_.at(i); }

  /// Edges in construction order, as index pairs.
  const std::vector<std::pair<VertexIndex, VertexIndex>>& edge_indices() const noexcept {
    return edges_;
  }

  std::optional<VertexIndex> find(const VertexId& v) const {
    auto it = index_.find(v.name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexIndex index_of(const VertexId& v) const {
    if (auto i = find(v)) return *i;
    throw GraphError(GraphError::Kind::unknown_vertex, "unknown vertex " + v.name);
  }

  bool contains(const VertexId& v) const { return index_.contains(v.name); }

  std::span<const VertexIndex> adjacent(VertexIndex i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }

  std::size_t degree_of(VertexIndex i) const { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(VertexIndex u, VertexIndex v) const {
    auto nb = adjacent(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Set of labelled edges with endpoints ordered (smaller label first).
  std::set<std::pair<std::string, std::string>> edge_set() const {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [u, v] : edges_) {
      const auto& a = names_[u].name;
      const auto& b = names_[v].name;
      if (a < b) {
        out.emplace(a, b);
      } else {
        out.emplace(b, a);
      }
    }
    return out;
  }

  friend bool operator==(const PlaneGraph& a, const PlaneGraph& b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    for (const auto& v : a.names_) {
      if (!b.contains(v)) return false;
    }
    for (auto [u, v] : a.edges_) {
      auto bu = b.find(a.names_[u]);
      auto bv = b.find(a.names_[v]);
      if (!b.has_edge(*bu, *bv)) return false;
    }
    return true;
  }

 private:
  static std::uint64_t pair_key(VertexIndex u, VertexIndex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  VertexIndex intern(const VertexId& v) {
    if (v.name.empty()) {
      throw GraphError(GraphError::Kind::malformed_line, "empty vertex label");
    }
    auto [it, inserted] = index_.try_emplace(v.name, static_cast<VertexIndex>(names_.size()));
    if (inserted) names_.push_back(v);
    return it->second;
  }

  void finish() {
    const std::size_t n = names_.size();
    if (n == 0) throw GraphError(GraphError::Kind::empty, "graph has no vertices");
    if (n >= 3 && edges_.size() > 3 * n - 6) {
      throw GraphError(GraphError::Kind::too_many_edges,
                       "edge count " + std::to_string(edges_.size()) +
                           " exceeds 3|V|-6 = " + std::to_string(3 * n - 6));
    }
    offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges_) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adj_.assign(offsets_[n], 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges_) {
      adj_[fill[u]++] = v;
      adj_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(adj_.begin() + offsets_[i], adj_.begin() + offsets_[i + 1]);
    }
    // Connectivity by iterative search from vertex 0.
    std::vector<char> seen(n, 0);
    std::vector<VertexIndex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexIndex u = stack.back();
      stack.pop_back();
      for (VertexIndex w : adjacent(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
          throw GraphError(GraphError::Kind::disconnected,
                           "graph is disconnected (" + names_[i].name +
                               " unreachable from " + names_[0].name + ")");
        }
      }
    }
  }

  std::vector<VertexId> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::pair<VertexIndex, VertexIndex>> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexIndex> adj_;
};

/// Parses the edge-list format: blank lines, `#` comments, or `U V` per line.
inline PlaneGraph parse_graph(std::istream& in) {
  std::vector<PlaneGraph::Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string a;
    if (!(tokens >> a) || a.front() == '#') continue;
    std::string b;
    std::string extra;
    if (!(tokens >> b) || (tokens >> extra)) {
      throw GraphError(GraphError::Kind::malformed_line,
                       "line " + std::to_string(lineno) + ": expected two labels");
    }
    edges.emplace_back(VertexId{std::move(a)}, VertexId{std::move(b)});
  }
  return PlaneGraph::from_edges(edges);
}

inline PlaneGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Writes the edges in construction order, one `U V` line each.
inline std::string serialize_graph(const PlaneGraph& g) {
  std::string out;
  for (auto [u, v] : g.edge_indices()) {
    out += g.label(u).name;
    out += ' ';
    out += g.label(v).name;
    out += '\n';
  }
  return out;
}

inline std::size_t degree(const PlaneGraph& g, const VertexId& v) {
  return g.degree_of(g.index_of(v));
}

inline std::set<VertexId> neighborhood(const PlaneGraph& g, const VertexId& v) {
  std::set<VertexId> out;
  for (VertexIndex w : g.adjacent(g.index_of(v))) out.insert(g.label(w));
  return out;
}

/// Subgraph induced by `keep`. Throws GraphError(disconnected) when the
/// result falls apart; callers that expect that can catch and decide.
inline PlaneGraph induced_subgraph(const PlaneGraph& g, const std::set<VertexId>& keep) {
  if (keep.empty()) throw GraphError(GraphError::Kind::empty, "empty vertex set");
  std::vector<char> kept(g.size(), 0);
  for (const auto& v : keep) kept[g.index_of(v)] = 1;
  std::vector<PlaneGraph::Edge> edges;
  for (auto [u, v] : g.edge_indices()) {
    if (kept[u] && kept[v]) edges.emplace_back(g.label(u), g.label(v));
  }
  std::vector<VertexId> isolated;
  for (VertexIndex i = 0; i < g.size(); ++i) {
    if (kept[i]) isolated.push_back(g.label(i));
  }
  return PlaneGraph::from_edges(edges, isolated);
}

/// First cut vertex found by an iterative low-link search, if any.
inline std::optional<VertexIndex> find_cut_vertex(const PlaneGraph& g) {
  const std::size_t n = g.size();
  if (n <= 2) return std::nullopt;
  std::vector<std::uint32_t> disc(n, 0), low(n, 0);
  std::vector<VertexIndex> parent(n, 0);
  struct Frame {
    VertexIndex v;
    std::size_t next;
  };
  std::uint32_t timer = 1;
  std::vector<Frame> stack;
  disc[0] = low[0] = timer++;
  stack.push_back({0, 0});
  std::size_t root_children = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto nb = g.adjacent(f.v);
    if (f.next < nb.size()) {
      const VertexIndex w = nb[f.next++];
      if (disc[w] == 0) {
        parent[w] = f.v;
        disc[w] = low[w] = timer++;
        if (f.v == 0) ++root_children;
        stack.push_back({w, 0});
      } else if (w != parent[f.v]) {
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    const VertexIndex v = f.v;
    stack.pop_back();
    if (stack.empty()) break;
    const VertexIndex p = stack.back().v;
    low[p] = std::min(low[p], low[v]);
    if (p != 0 && low[v] >= disc[p]) return p;
  }
  if (root_children > 1) return VertexIndex{0};
  return std::nullopt;
}

inline bool is_biconnected(const PlaneGraph& g) { return !find_cut_vertex(g).has_value(); }

}  // namespace rectdual
