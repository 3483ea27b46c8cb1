// rectdual command line: check, build, verify, solve, render, generate.
// JSON goes to stdout, diagnostics to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rectdual.hpp"

namespace {

using namespace rectdual;

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kInternal = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PlaneGraph read_graph(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_graph(in);
}

/// Integer layout, or the rank-grid image of a real one.
Layout read_any_layout(const std::string& text) {
  if (is_integer_layout(text)) return parse_layout(text);
  return snap_to_grid(parse_real_layout(text));
}

int cmd_check(const std::string& file) {
  const PlaneGraph g = read_graph(file);
  const ClassCResult r = classify(g);
  std::cout << to_json(r, g).dump(2) << "\n";
  if (r.verdict != Verdict::member) {
    std::cerr << "inconclusive: no degree-4 path grows to the whole graph\n";
    return kNegative;
  }
  return kOk;
}

int cmd_build(const std::string& file, const std::string& origin_text) {
  Origin origin{0, 0};
  {
    std::istringstream in(origin_text);
    char comma = 0;
    if (!(in >> origin[0] >> comma >> origin[1]) || comma != ',' || !(in >> std::ws).eof()) {
      std::cerr << "--origin expects X,Y\n";
      return kInput;
    }
  }
  const PlaneGraph g = read_graph(file);
  const BuildOutcome out = build_from_graph(g, origin);
  if (!out.layout) {
    std::cerr << "inconclusive: no layout\n";
    std::cout << to_json(out.classification(g), g).dump(2) << "\n";
    return kNegative;
  }
  std::cout << serialize_layout(*out.layout);
  return kOk;
}

int cmd_verify(const std::string& file) {
  const std::string text = read_file(file);
  const Layout l = read_any_layout(text);
  const ValidationReport report = validate_partition(l);
  std::optional<UniversalityResult> au;
  if (report.ok) au = is_area_universal(l);
  std::cout << to_json(report, au).dump(2) << "\n";
  if (!report.ok) {
    std::cerr << "invalid partition\n";
    return kInput;
  }
  if (!au->universal) {
    std::cerr << "not area-universal\n";
    return kNegative;
  }
  return kOk;
}

int cmd_solve(const std::string& layout_file, const std::string& areas_file, double tol,
              std::size_t max_iters) {
  const std::string text = read_file(layout_file);
  if (!is_integer_layout(text)) {
    std::cerr << "solve needs an integer layout\n";
    return kInput;
  }
  const Layout l = parse_layout(text);
  detail::require_partition(l, "solve");
  const AreaAssignment targets = parse_areas(read_file(areas_file));
  try {
    const CartogramLayout c = solve_areas(l, targets, {tol, max_iters});
    std::cout << serialize_cartogram(c, true);
    return kOk;
  } catch (const NotConverged& e) {
    std::cerr << e.what() << "\n";
    std::cout << serialize_cartogram(e.best(), false);
    return kNegative;
  }
}

int cmd_render(const std::string& file, const std::string& out_path) {
  const std::string text = read_file(file);
  std::string svg;
  if (is_integer_layout(text)) {
    const Layout l = parse_layout(text);
    detail::require_partition(l, "render");
    svg = render_svg(l);
  } else {
    const RealLayout l = parse_real_layout(text);
    detail::require_partition(snap_to_grid(l), "render");
    svg = render_svg(l);
  }
  if (out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << svg)) throw Error("cannot write " + out_path);
  }
  return kOk;
}

int cmd_generate(long long size, std::uint64_t seed) {
  if (size < 2) {
    std::cerr << "--size must be at least 2\n";
    return kInput;
  }
  const GeneratedInstance inst = generate_instance(static_cast<std::size_t>(size), seed);
  if (inst.graph.size() != static_cast<std::size_t>(size)) {
    std::cerr << "size raised to " << inst.graph.size()
              << ": the path vertices need degree 4\n";
  }
  Json out = {{"graph", edge_list_json(inst.graph)},
              {"certificate", to_json(inst.certificate)},
              {"layout", Json::parse(serialize_layout(inst.layout))}};
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangular duals: class membership, area-universal layouts, cartograms"};
  app.require_subcommand(1);

  std::string graph_file, layout_file, areas_file, out_path, origin = "0,0";
  double tol = SolveOptions{}.rel_tol;
  std::size_t max_iters = SolveOptions{}.max_iters;
  long long size = 0;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "Decide membership and print the certificate");
  check->add_option("graph", graph_file, "Edge list file")->required();
  auto* build = app.add_subcommand("build", "Build an area-universal layout");
  build->add_option("graph", graph_file, "Edge list file")->required();
  build->add_option("--origin", origin, "Bottom-left corner of the first row square, X,Y");
  auto* verify = app.add_subcommand("verify", "Validate a layout and test area-universality");
  verify->add_option("layout", layout_file, "Layout JSON")->required();
  auto* solve = app.add_subcommand("solve", "Realize target areas on a layout");
  solve->add_option("layout", layout_file, "Layout JSON")->required();
  solve->add_option("areas", areas_file, "Areas JSON")->required();
  solve->add_option("--tol", tol, "Max relative area error")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", max_iters, "Sweep limit");
  auto* render = app.add_subcommand("render", "Draw a layout as SVG");
  render->add_option("layout", layout_file, "Layout JSON")->required();
  render->add_option("--out", out_path, "Output file (default stdout)");
  auto* generate = app.add_subcommand("generate", "Emit a random member instance");
  generate->add_option("--size", size, "Number of vertices")->required();
  generate->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*check) return cmd_check(graph_file);
    if (*build) return cmd_build(graph_file, origin);
    if (*verify) return cmd_verify(layout_file);
    if (*solve) return cmd_solve(layout_file, areas_file, tol, max_iters);
    if (*render) return cmd_render(layout_file, out_path);
    if (*generate) return cmd_generate(size, seed);
  } catch (const NoValidPlacement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
