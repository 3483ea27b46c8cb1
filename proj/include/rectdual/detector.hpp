#pragma once

// Membership test for the class of graphs grown from a path of degree-4
// vertices by adding, one at a time, a vertex that already touches the grown
// set and has at most three neighbours outside it.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "rectdual/error.hpp"
#include "rectdual/graph.hpp"

namespace rectdual {

/// Most neighbours a vertex may still have outside the grown set when added.
inline constexpr std::size_t kMaxOutsideNeighbors = 3;

struct Degree4Path {
  std::vector<VertexId> vertices;

  bool operator==(const Degree4Path&) const = default;
};

struct Insertion {
  VertexId vertex;
  std::vector<VertexId> placed_neighbors;  // sorted by label

  bool operator==(const Insertion&) const = default;
};

/// A degree-4 path plus the order in which the remaining vertices join.
struct MembershipCertificate {
  Degree4Path path;
  std::vector<Insertion> insertions;

  bool operator==(const MembershipCertificate&) const = default;
};

enum class Verdict { member, inconclusive };

struct ClassCResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<MembershipCertificate> certificate;  // set iff member
  std::vector<Degree4Path> tried_paths;
};

namespace detail {

/// rank[i] = position of vertex i in label order.
// Big-endian first eight bytes, so integer order agrees with string order
// up to ties.
inline std::uint64_t label_prefix(const std::string& s) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    key = (key << 8) | (i < s.size() ? static_cast<unsigned char>(s[i]) : 0u);
  }
  return key;
}

inline std::vector<std::uint32_t> label_ranks(const PlaneGraph& g) {
  const auto& names = g.vertices();
  if (std::is_sorted(names.begin(), names.end())) {
    std::vector<std::uint32_t> rank(g.size());
    std::iota(rank.begin(), rank.end(), std::uint32_t{0});
    return rank;
  }
  std::vector<std::pair<std::uint64_t, VertexIndex>> keyed(g.size());
  for (VertexIndex i = 0; i < g.size(); ++i) keyed[i] = {label_prefix(g.label(i).name), i};
  std::sort(keyed.begin(), keyed.end(), [&g](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return g.label(a.second) < g.label(b.second);
  });
  std::vector<std::uint32_t> rank(g.size());
  for (std::uint32_t r = 0; r < keyed.size(); ++r) rank[keyed[r].second] = r;
  return rank;
}

inline std::vector<VertexIndex> path_indices(const PlaneGraph& g, const Degree4Path& path) {
  if (path.vertices.size() < 2) {
    throw PreconditionError("degree-4 path needs at least two vertices");
  }
  std::vector<VertexIndex> idx;
  std::set<VertexIndex> distinct;
  for (const auto& v : path.vertices) {
    auto i = g.find(v);
    if (!i) throw PreconditionError("path vertex " + v.name + " is not in the graph");
    if (g.degree_of(*i) != 4) {
      throw PreconditionError("path vertex " + v.name + " has degree " +
                              std::to_string(g.degree_of(*i)) + ", expected 4");
    }
    if (!distinct.insert(*i).second) {
      throw PreconditionError("path repeats vertex " + v.name);
    }
    if (!idx.empty() && !g.has_edge(idx.back(), *i)) {
      throw PreconditionError("path vertices " + g.label(idx.back()).name + " and " + v.name +
                              " are not adjacent");
    }
    idx.push_back(*i);
  }
  return idx;
}

/// Path plus the order in which the other vertices joined, as graph indices.
struct GrowthOrder {
  std::vector<VertexIndex> path;
  std::vector<VertexIndex> order;
};

inline std::optional<GrowthOrder> grow_order(const PlaneGraph& g,
                                             const std::vector<VertexIndex>& path,
                                             const std::vector<std::uint32_t>& rank) {
  const std::size_t n = g.size();
  std::vector<char> placed(n, 0);
  std::vector<char> queued(n, 0);
  std::vector<std::uint32_t> inside(n, 0);
  std::vector<VertexIndex> by_rank(n);
  for (VertexIndex i = 0; i < n; ++i) by_rank[rank[i]] = i;

  // Eligibility only ever turns on as the grown set gets bigger, so
  // simulating "repeat label-ordered passes until nothing changes" needs two
  // queues: vertices still ahead of the scan pointer and those behind it.
  using MinQueue =
      std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>>;
  MinQueue this_pass;
  MinQueue next_pass;
  std::int64_t pointer = -1;

  auto eligible = [&](VertexIndex v) {
    return !placed[v] && inside[v] > 0 && g.degree_of(v) - inside[v] <= kMaxOutsideNeighbors;
  };
  auto place = [&](VertexIndex v) {
    placed[v] = 1;
    for (VertexIndex w : g.adjacent(v)) {
      if (placed[w]) continue;
      ++inside[w];
      if (!queued[w] && eligible(w)) {
        queued[w] = 1;
        if (static_cast<std::int64_t>(rank[w]) > pointer) {
          this_pass.push(rank[w]);
        } else {
          next_pass.push(rank[w]);
        }
      }
    }
  };

  GrowthOrder out{path, {}};
  out.order.reserve(n - path.size());
  for (VertexIndex v : path) placed[v] = 1;
  for (VertexIndex v : path) {
    placed[v] = 0;
    place(v);
  }

  while (true) {
    if (this_pass.empty()) {
      if (next_pass.empty()) break;
      std::swap(this_pass, next_pass);
      pointer = -1;
    }
    const std::uint32_t r = this_pass.top();
    this_pass.pop();
    pointer = r;
    const VertexIndex v = by_rank[r];
    out.order.push_back(v);
    place(v);
  }
  if (path.size() + out.order.size() != n) return std::nullopt;
  return out;
}

inline MembershipCertificate to_certificate(const PlaneGraph& g, const GrowthOrder& growth) {
  MembershipCertificate cert;
  std::vector<char> placed(g.size(), 0);
  for (VertexIndex v : growth.path) {
    cert.path.vertices.push_back(g.label(v));
    placed[v] = 1;
  }
  cert.insertions.reserve(growth.order.size());
  for (VertexIndex v : growth.order) {
    Insertion ins{g.label(v), {}};
    const auto nb = g.adjacent(v);
    ins.placed_neighbors.reserve(
        std::count_if(nb.begin(), nb.end(), [&placed](VertexIndex w) { return placed[w] != 0; }));
    for (VertexIndex w : nb) {
      if (placed[w]) ins.placed_neighbors.push_back(g.label(w));
    }
    std::sort(ins.placed_neighbors.begin(), ins.placed_neighbors.end());
    cert.insertions.push_back(std::move(ins));
    placed[v] = 1;
  }
  return cert;
}

inline std::optional<MembershipCertificate> grow_from_path(
    const PlaneGraph& g, const std::vector<VertexIndex>& path,
    const std::vector<std::uint32_t>& rank) {
  auto growth = grow_order(g, path, rank);
  if (!growth) return std::nullopt;
  return to_certificate(g, *growth);
}

}  // namespace detail

/// Calls `visit` with each greedy degree-4 chain in discovery order until it
/// returns false. From every degree-4 start (in label order) the chain is
/// extended forward, then backward, always to the smallest-labelled unvisited
/// degree-4 neighbour. Chains shorter than two and repeats (up to reversal)
/// are skipped.
inline void for_each_degree4_path(const PlaneGraph& g, const std::vector<std::uint32_t>& rank,
                                  const std::function<bool(const Degree4Path&)>& visit) {
  const std::size_t n = g.size();
  // Starts are popped lazily; the first chain usually certifies.
  auto later = [&rank](VertexIndex a, VertexIndex b) { return rank[a] > rank[b]; };
  std::vector<VertexIndex> starts;
  for (VertexIndex i = 0; i < n; ++i) {
    if (g.degree_of(i) == 4) starts.push_back(i);
  }
  std::make_heap(starts.begin(), starts.end(), later);

  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t run = 0;
  std::set<std::vector<VertexIndex>> emitted;

  auto extend = [&](VertexIndex from, std::vector<VertexIndex>& chain) {
    VertexIndex cur = from;
    while (true) {
      std::optional<VertexIndex> best;
      for (VertexIndex w : g.adjacent(cur)) {
        if (g.degree_of(w) != 4 || stamp[w] == run) continue;
        if (!best || rank[w] < rank[*best]) best = w;
      }
      if (!best) return;
      stamp[*best] = run;
      chain.push_back(*best);
      cur = *best;
    }
  };

  while (!starts.empty()) {
    std::pop_heap(starts.begin(), starts.end(), later);
    const VertexIndex s = starts.back();
    starts.pop_back();
    ++run;
    stamp[s] = run;
    std::vector<VertexIndex> forward{s};
    extend(s, forward);
    std::vector<VertexIndex> backward;
    extend(s, backward);
    std::vector<VertexIndex> chain(backward.rbegin(), backward.rend());
    chain.insert(chain.end(), forward.begin(), forward.end());
    if (chain.size() < 2) continue;
    std::vector<VertexIndex> reversed(chain.rbegin(), chain.rend());
    if (!emitted.insert(std::min(chain, reversed)).second) continue;
    Degree4Path path;
    for (VertexIndex v : chain) path.vertices.push_back(g.label(v));
    if (!visit(path)) return;
  }
}

inline void for_each_degree4_path(const PlaneGraph& g,
                                  const std::function<bool(const Degree4Path&)>& visit) {
  for_each_degree4_path(g, detail::label_ranks(g), visit);
}

inline std::vector<Degree4Path> enumerate_degree4_paths(const PlaneGraph& g) {
  std::vector<Degree4Path> out;
  for_each_degree4_path(g, [&out](const Degree4Path& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

/// Grows the set from `path`; returns the insertion order when every vertex
/// joins. Throws PreconditionError for an invalid path and
/// NotBiconnectedError when the graph has a cut vertex.
inline std::optional<MembershipCertificate> check_membership(const PlaneGraph& g,
                                                             const Degree4Path& path) {
  const auto idx = detail::path_indices(g, path);
  if (auto cut = find_cut_vertex(g)) throw NotBiconnectedError(g.label(*cut).name);
  return detail::grow_from_path(g, idx, detail::label_ranks(g));
}

/// Tries each degree-4 path in discovery order and stops at the first that
/// certifies membership. Every negative outcome is reported as inconclusive.
inline ClassCResult classify(const PlaneGraph& g) {
  ClassCResult result;
  const auto rank = detail::label_ranks(g);
  bool checked = false;
  for_each_degree4_path(g, rank, [&](const Degree4Path& path) {
    if (!checked) {
      if (auto cut = find_cut_vertex(g)) throw NotBiconnectedError(g.label(*cut).name);
      checked = true;
    }
    result.tried_paths.push_back(path);
    auto cert = detail::grow_from_path(g, detail::path_indices(g, path), rank);
    if (!cert) return true;
    result.verdict = Verdict::member;
    result.certificate = std::move(cert);
    return false;
  });
  return result;
}

/// Outside-neighbour count of each inserted vertex at the moment it joined.
inline std::vector<std::size_t> certificate_deficits(const PlaneGraph& g,
                                                     const MembershipCertificate& cert) {
  std::vector<std::size_t> out;
  out.reserve(cert.insertions.size());
  for (const auto& ins : cert.insertions) {
    out.push_back(degree(g, ins.vertex) - ins.placed_neighbors.size());
  }
  return out;
}

/// Replays a certificate against `g`. Returns a description of the first
/// broken condition, or nullopt when the certificate is sound.
inline std::optional<std::string> certificate_error(const PlaneGraph& g,
                                                    const MembershipCertificate& cert) {
  std::vector<VertexIndex> path;
  try {
    path = detail::path_indices(g, cert.path);
  } catch (const PreconditionError& e) {
    return std::string(e.what());
  }
  std::vector<char> placed(g.size(), 0);
  for (VertexIndex v : path) placed[v] = 1;
  std::size_t count = path.size();
  for (const auto& ins : cert.insertions) {
    auto v = g.find(ins.vertex);
    if (!v) return "unknown vertex " + ins.vertex.name;
    if (placed[*v]) return "vertex " + ins.vertex.name + " inserted twice";
    std::vector<VertexId> expect;
    for (VertexIndex w : g.adjacent(*v)) {
      if (placed[w]) expect.push_back(g.label(w));
    }
    std::sort(expect.begin(), expect.end());
    auto given = ins.placed_neighbors;
    std::sort(given.begin(), given.end());
    if (given != expect) return "placed neighbours of " + ins.vertex.name + " do not match";
    if (expect.empty()) return "vertex " + ins.vertex.name + " has no placed neighbour";
    if (g.degree_of(*v) - expect.size() > kMaxOutsideNeighbors) {
      return "vertex " + ins.vertex.name + " has too many outside neighbours";
    }
    placed[*v] = 1;
    ++count;
  }
  if (count != g.size()) return "certificate does not cover every vertex";
  return std::nullopt;
}

}  // namespace rectdual
