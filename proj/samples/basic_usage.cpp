// Graph text in, cartogram out.

#include <iostream>

#include "rectdual.hpp"

int main() try {
  using namespace rectdual;
  const PlaneGraph g = parse_graph(
      "v1 v2\nv1 v4\nv1 v6\nv10 v7\nv10 v8\nv10 v9\nv2 v3\nv2 v4\nv2 v6\nv3 v4\nv3 v5\n"
      "v3 v6\nv4 v5\nv4 v8\nv5 v6\nv5 v7\nv5 v8\nv6 v7\nv6 v9\nv7 v8\nv7 v9\n");

  const BuildOutcome out = build_from_graph(g);
  if (!out.layout) {
    std::cout << "inconclusive\n";
    return 1;
  }
  std::cout << serialize_layout(*out.layout);

  const auto au = is_area_universal(*out.layout);
  std::cout << "area-universal: " << (au.universal ? "yes" : "no") << "\n";

  AreaAssignment targets;
  double w = 1;
  for (const auto& r : out.layout->rects) targets.areas[r.id] = w++;
  const CartogramLayout c = solve_areas(*out.layout, targets);
  std::cout << serialize_cartogram(c, true);
  return 0;
} catch (const std::exception& e) {
  std::cerr << e.what() << "\n";
  return 2;
}
