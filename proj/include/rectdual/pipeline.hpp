#pragma once

// Graph in, layout out. The first chain that certifies membership does not
// always lay out: a bent chain can certify a graph whose row is elsewhere.
// The other chains and their contiguous pieces are tried before giving up.

#include <cstdint>
#include <optional>
#include <vector>

#include "rectdual/builder.hpp"
#include "rectdual/detector.hpp"
#include "rectdual/error.hpp"
#include "rectdual/graph.hpp"

namespace rectdual {

/// Result of build_from_graph. Certificates are kept as index orders and
/// only spelled out with labels on request.
struct BuildOutcome {
  Verdict verdict = Verdict::inconclusive;
  std::vector<Degree4Path> tried_paths;
  std::optional<detail::GrowthOrder> growth;    // first certifying order
  std::optional<detail::GrowthOrder> fallback;  // set when another path laid out
  std::optional<Layout> layout;                 // empty iff inconclusive
  std::size_t attempts = 0;

  ClassCResult classification(const PlaneGraph& g) const {
    ClassCResult r{verdict, std::nullopt, tried_paths};
    if (growth) r.certificate = detail::to_certificate(g, *growth);
    return r;
  }

  /// Certificate the layout was built from.
  std::optional<MembershipCertificate> used(const PlaneGraph& g) const {
    if (!layout) return std::nullopt;
    return detail::to_certificate(g, fallback ? *fallback : *growth);
  }
};

namespace detail {

/// Contiguous sub-paths of length >= 2, longest first, then left to right.
inline std::vector<Degree4Path> sub_paths(const Degree4Path& p) {
  std::vector<Degree4Path> out;
  const std::size_t n = p.vertices.size();
  for (std::size_t len = n - 1; len >= 2; --len) {
    for (std::size_t start = 0; start + len <= n; ++start) {
      out.push_back({{p.vertices.begin() + static_cast<std::ptrdiff_t>(start),
                      p.vertices.begin() + static_cast<std::ptrdiff_t>(start + len)}});
    }
  }
  return out;
}

}  // namespace detail

/// Classifies like classify() and lays out the first certificate that
/// builds. Throws NotBiconnectedError like classify, and NoValidPlacement
/// when the graph is a member but no candidate certificate lays out.
inline BuildOutcome build_from_graph(const PlaneGraph& g, Origin origin = {0, 0}) {
  BuildOutcome out;
  const auto rank = detail::label_ranks(g);
  bool checked = false;
  std::optional<detail::GrowthOrder> first;
  for_each_degree4_path(g, rank, [&](const Degree4Path& path) {
    if (!checked) {
      if (auto cut = find_cut_vertex(g)) throw NotBiconnectedError(g.label(*cut).name);
      checked = true;
    }
    out.tried_paths.push_back(path);
    first = detail::grow_order(g, detail::path_indices(g, path), rank);
    return !first;
  });
  if (!first) return out;
  out.verdict = Verdict::member;
  out.growth = std::move(first);

  std::optional<NoValidPlacement> first_failure;
  auto attempt = [&](const detail::GrowthOrder& growth) {
    ++out.attempts;
    try {
      out.layout = detail::replay(g, growth, origin);
      return true;
    } catch (const NoValidPlacement& e) {
      if (!first_failure) first_failure = e;
      return false;
    }
  };

  if (attempt(*out.growth)) return out;
  auto try_path = [&](const std::vector<VertexIndex>& p) {
    auto growth = detail::grow_order(g, p, rank);
    if (!growth || !attempt(*growth)) return false;
    out.fallback = std::move(growth);
    return true;
  };
  const auto chains = enumerate_degree4_paths(g);
  for (const auto& chain : chains) {
    const auto idx = detail::path_indices(g, chain);
    if (idx == out.growth->path) continue;
    if (try_path(idx)) return out;
  }
  for (const auto& chain : chains) {
    for (const auto& piece : detail::sub_paths(chain)) {
      if (try_path(detail::path_indices(g, piece))) return out;
    }
  }
  throw *first_failure;
}

}  // namespace rectdual
