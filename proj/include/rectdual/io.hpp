#pragma once

// JSON forms of layouts, certificates, reports and area assignments.
// Writers are canonical (fixed key order, one rectangle per line), so a
// parsed canonical document serializes back to the same bytes.

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rectdual/detector.hpp"
#include "rectdual/error.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"
#include "rectdual/solver.hpp"
#include "rectdual/verifier.hpp"

namespace rectdual {

using Json = nlohmann::ordered_json;

/// Input document is not valid JSON or lacks a required field.
class FormatError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T number(const Json& j, const char* key) {
  const Json& v = field(j, key, "rect");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) {
      throw FormatError(std::string("rect: \"") + key + "\" must be an integer");
    }
    return v.get<T>();
  } else {
    if (!v.is_number()) throw FormatError(std::string("rect: \"") + key + "\" must be a number");
    return v.get<T>();
  }
}

inline std::vector<VertexId> ids(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<VertexId> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw FormatError(std::string(what) + " entries must be strings");
    out.emplace_back(v.get<std::string>());
  }
  return out;
}

inline Json names(const std::vector<VertexId>& v) {
  Json out = Json::array();
  for (const auto& id : v) out.push_back(id.name);
  return out;
}

template <typename T>
BasicLayout<T> layout_from(const Json& j) {
  BasicLayout<T> out;
  const Json& rects = field(j, "rects", "layout");
  if (!rects.is_array()) throw FormatError("layout: \"rects\" must be an array");
  for (const auto& r : rects) {
    const Json& id = field(r, "id", "rect");
    if (!id.is_string()) throw FormatError("rect: \"id\" must be a string");
    out.rects.push_back({VertexId{id.get<std::string>()}, number<T>(r, "x"), number<T>(r, "y"),
                         number<T>(r, "w"), number<T>(r, "h")});
  }
  if (j.contains("origin")) {
    const Json& o = j.at("origin");
    if (!o.is_array() || o.size() != 2 || !o[0].is_number() || !o[1].is_number()) {
      throw FormatError("layout: \"origin\" must be a pair of numbers");
    }
    if constexpr (std::is_integral_v<T>) {
      if (!o[0].is_number_integer() || !o[1].is_number_integer()) {
        throw FormatError("layout: \"origin\" must be integers");
      }
    }
    out.origin = {o[0].get<T>(), o[1].get<T>()};
  }
  return out;
}

template <typename T>
std::string layout_text(const BasicLayout<T>& l, const Json& extra) {
  std::ostringstream os;
  os << "{\n  \"origin\": " << Json::array({l.origin[0], l.origin[1]}).dump() << ",\n";
  os << "  \"rects\": [";
  for (std::size_t i = 0; i < l.rects.size(); ++i) {
    const auto& r = l.rects[i];
    Json rj = {{"id", r.id.name}, {"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
    os << (i ? ",\n    " : "\n    ") << rj.dump();
  }
  os << (l.rects.empty() ? "]" : "\n  ]");
  for (const auto& [key, value] : extra.items()) {
    os << ",\n  " << Json(key).dump() << ": " << value.dump();
  }
  os << "\n}\n";
  return os.str();
}

}  // namespace detail

// ---- layouts ---------------------------------------------------------------

/// Integer layout. Missing "origin" reads as (0, 0).
inline Layout parse_layout(std::string_view text) {
  return detail::layout_from<Coord>(detail::parse_json(text, "layout"));
}

/// Layout with real coordinates; also accepts integer documents.
inline RealLayout parse_real_layout(std::string_view text) {
  return detail::layout_from<double>(detail::parse_json(text, "layout"));
}

/// True when every coordinate in the document is an integer literal.
inline bool is_integer_layout(std::string_view text) {
  const Json j = detail::parse_json(text, "layout");
  const Json& rects = detail::field(j, "rects", "layout");
  if (!rects.is_array()) throw FormatError("layout: \"rects\" must be an array");
  for (const auto& r : rects) {
    for (const char* k : {"x", "y", "w", "h"}) {
      if (!detail::field(r, k, "rect").is_number_integer()) return false;
    }
  }
  return true;
}

inline std::string serialize_layout(const Layout& l) { return detail::layout_text(l, Json::object()); }

inline std::string serialize_real_layout(const RealLayout& l) {
  return detail::layout_text(l, Json::object());
}

// ---- certificates and classification --------------------------------------

inline Json to_json(const MembershipCertificate& c) {
  Json ins = Json::array();
  for (const auto& i : c.insertions) {
    ins.push_back({{"vertex", i.vertex.name}, {"placed_neighbors", detail::names(i.placed_neighbors)}});
  }
  return {{"path", detail::names(c.path.vertices)}, {"insertions", std::move(ins)}};
}

inline MembershipCertificate certificate_from_json(const Json& j) {
  MembershipCertificate c;
  c.path.vertices = detail::ids(detail::field(j, "path", "certificate"), "path");
  const Json& ins = detail::field(j, "insertions", "certificate");
  if (!ins.is_array()) throw FormatError("certificate: \"insertions\" must be an array");
  for (const auto& i : ins) {
    const Json& v = detail::field(i, "vertex", "insertion");
    if (!v.is_string()) throw FormatError("insertion: \"vertex\" must be a string");
    c.insertions.push_back(
        {VertexId{v.get<std::string>()},
         detail::ids(detail::field(i, "placed_neighbors", "insertion"), "placed_neighbors")});
  }
  return c;
}

inline MembershipCertificate parse_certificate(std::string_view text) {
  return certificate_from_json(detail::parse_json(text, "certificate"));
}

/// ClassCResult plus the outside-neighbour count of each insertion.
inline Json to_json(const ClassCResult& r, const PlaneGraph& g) {
  Json tried = Json::array();
  for (const auto& p : r.tried_paths) tried.push_back(detail::names(p.vertices));
  Json out = {{"verdict", r.verdict == Verdict::member ? "member" : "inconclusive"},
              {"certificate", nullptr},
              {"tried_paths", std::move(tried)},
              {"deficits", nullptr}};
  if (r.certificate) {
    out["certificate"] = to_json(*r.certificate);
    out["deficits"] = certificate_deficits(g, *r.certificate);
  }
  return out;
}

// ---- verification ----------------------------------------------------------

inline Json to_json(const Segment& s) {
  return {{"orientation", s.orientation == Orientation::vertical ? "vertical" : "horizontal"},
          {"level", s.level},
          {"lo", s.lo},
          {"hi", s.hi}};
}

/// `au` is left out when the partition is invalid.
inline Json to_json(const ValidationReport& report, const std::optional<UniversalityResult>& au) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"kind", to_string(v.kind)}, {"location", v.location}, {"ids", detail::names(v.ids)}});
  }
  Json out = {{"ok", report.ok},
              {"violations", std::move(violations)},
              {"area_universal", nullptr},
              {"witness", nullptr}};
  if (au) {
    out["area_universal"] = au->universal;
    if (au->witness) out["witness"] = to_json(*au->witness);
  }
  return out;
}

// ---- areas and cartograms --------------------------------------------------

inline AreaAssignment parse_areas(std::string_view text) {
  const Json j = detail::parse_json(text, "areas");
  const Json& areas = detail::field(j, "areas", "areas");
  if (!areas.is_object()) throw FormatError("areas: \"areas\" must be an object");
  AreaAssignment out;
  for (const auto& [k, v] : areas.items()) {
    if (!v.is_number()) throw FormatError("areas: value for " + k + " must be a number");
    out.areas[VertexId{k}] = v.get<double>();
  }
  return out;
}

inline std::string serialize_areas(const AreaAssignment& a) {
  Json areas = Json::object();
  for (const auto& [k, v] : a.areas) areas[k.name] = v;
  return Json{{"areas", std::move(areas)}}.dump(2) + "\n";
}

/// Real coordinates are written in shortest round-trip form, which keeps
/// every significant digit of the double.
inline std::string serialize_cartogram(const CartogramLayout& c, bool converged) {
  return detail::layout_text(
      c.as_layout(),
      Json{{"achieved_error", c.achieved_error}, {"sweeps", c.sweeps}, {"converged", converged}});
}

// ---- generated instances ---------------------------------------------------

inline Json edge_list_json(const PlaneGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edge_indices()) edges.push_back({g.label(u).name, g.label(v).name});
  return edges;
}

}  // namespace rectdual
