#pragma once

// Random instances of the class, grown geometrically: a row of unit squares
// followed by full-side strips on random sides. The graph is read back from
// the finished layout's contacts, so membership holds by construction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rectdual/builder.hpp"
#include "rectdual/detector.hpp"
#include "rectdual/error.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"
#include "rectdual/verifier.hpp"

namespace rectdual {

struct GeneratedInstance {
  PlaneGraph graph;
  MembershipCertificate certificate;  // creation order
  Layout layout;
  std::vector<Side> sides;            // side of each strip, in creation order
};

/// Smallest instance the generator can produce: two row squares plus one
/// strip per side so that both row vertices reach degree 4.
inline constexpr std::size_t kMinGeneratedSize = 6;

/// Labels are "g" followed by the zero-padded creation index, so label order
/// is creation order. Sizes below kMinGeneratedSize are raised to it.
inline GeneratedInstance generate_instance(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("instance size must be at least 2");
  n = std::max(n, kMinGeneratedSize);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  const std::size_t row = uniform(2, std::clamp<std::size_t>(n - 4, 2, 6));
  const std::size_t strips = n - row;
  const std::size_t width = std::to_string(n - 1).size();
  auto label = [width](std::size_t i) {
    std::string digits = std::to_string(i);
    return VertexId{"g" + std::string(width - digits.size(), '0') + digits};
  };

  // A strip whose only contact is the previous strip on its side becomes a
  // leaf, which breaks biconnectivity; such draws are rejected.
  while (true) {
    std::vector<Side> sides(strips);
    for (auto& s : sides) s = kAllSides[uniform(0, 3)];
    for (Side need : kAllSides) {
      if (std::find(sides.begin(), sides.end(), need) != sides.end()) continue;
      std::array<std::size_t, 4> count{};
      for (Side s : sides) ++count[static_cast<int>(s)];
      std::vector<std::size_t> spare;
      for (std::size_t i = 0; i < strips; ++i) {
        if (count[static_cast<int>(sides[i])] > 1) spare.push_back(i);
      }
      sides[spare[uniform(0, spare.size() - 1)]] = need;
    }

    GeneratedInstance out;
    for (std::size_t i = 0; i < row; ++i) out.certificate.path.vertices.push_back(label(i));
    DualBuilder builder(out.certificate.path, {0, 0});
    for (std::size_t j = 0; j < strips; ++j) {
      Insertion ins{label(row + j), builder.insert_on_side(label(row + j), sides[j])};
      std::sort(ins.placed_neighbors.begin(), ins.placed_neighbors.end());
      out.certificate.insertions.push_back(std::move(ins));
    }
    out.layout = std::move(builder).take();
    out.graph = contact_graph(out.layout);
    if (!is_biconnected(out.graph)) continue;
    out.sides = std::move(sides);
    return out;
  }
}

}  // namespace rectdual
