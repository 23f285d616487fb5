#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plconvex/fan.hpp"
#include "plconvex/surface.hpp"

namespace plconvex {

enum class Format { OFF, PLPOSET };

namespace detail {

inline Rat json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return rat_of(j.get<long>());
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  throw ParseError("expected a rational literal, got " + j.dump());
}

// Whitespace tokens with '#' comments stripped to end of line.
inline std::vector<std::string> off_tokens(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

inline long off_int(const std::vector<std::string>& toks, size_t& pos,
                    const char* what) {
  if (pos >= toks.size())
    throw ParseError(std::string("truncated OFF stream, expected ") + what);
  const std::string& t = toks[pos++];
  try {
    size_t used = 0;
    long v = std::stol(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + t + "' for " + what);
  }
}

inline Rat off_rational(const std::vector<std::string>& toks, size_t& pos,
                        const char* what) {
  if (pos >= toks.size())
    throw ParseError(std::string("truncated OFF stream, expected ") + what);
  try {
    return parse_rational(toks[pos++]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace detail

/// ASCII OFF, ambient dimension 3. Edges and their incidences are derived
/// from consecutive vertex pairs of each face, deduplicated.
inline PLSurface parse_off(std::istream& in) {
  auto toks = detail::off_tokens(in);
  size_t pos = 0;
  if (pos >= toks.size() || toks[pos] != "OFF")
    throw ParseError("missing OFF header");
  ++pos;
  long nv = detail::off_int(toks, pos, "vertex count");
  long nf = detail::off_int(toks, pos, "face count");
  (void)detail::off_int(toks, pos, "edge count");  // commonly 0 in the wild
  if (nv <= 0 || nf <= 0) throw ParseError("empty OFF complex");

  std::vector<VecN> coords(nv);
  for (long i = 0; i < nv; ++i) {
    VecN p(3);
    for (int c = 0; c < 3; ++c)
      p[c] = detail::off_rational(toks, pos, "vertex coordinate");
    coords[i] = std::move(p);
  }
  std::vector<std::vector<int>> faces;
  for (long f = 0; f < nf; ++f) {
    long k = detail::off_int(toks, pos, "face arity");
    if (k < 3) throw ParseError("face with fewer than 3 vertices");
    std::vector<int> verts;
    for (long j = 0; j < k; ++j) {
      long v = detail::off_int(toks, pos, "face vertex index");
      if (v < 0 || v >= nv)
        throw MissingLinkError("face references unknown vertex " +
                               std::to_string(v));
      verts.push_back(static_cast<int>(v));
    }
    faces.push_back(std::move(verts));
  }
  if (pos != toks.size()) throw ParseError("trailing data after OFF faces");
  return surface_from_polygons3(std::move(coords), faces);
}

inline void emit_off(const PLSurface& s, std::ostream& out) {
  if (s.ambient != 3)
    throw DimensionError("OFF output requires ambient dimension 3");
  if (!s.has_vertex_coords())
    throw DimensionError("OFF output requires vertex coordinates");
  out << "OFF\n"
      << s.vertex_count << " " << s.num_facets() << " " << s.num_ridges()
      << "\n";
  for (const auto& v : s.vertex_coords)
    out << rat_to_point_string(v[0]) << " " << rat_to_point_string(v[1]) << " "
        << rat_to_point_string(v[2]) << "\n";
  for (const auto& f : s.facet_vertices) {
    out << f.size();
    for (int v : f) out << " " << v;
    out << "\n";
  }
}

/// UTF-8 JSON poset of dimensions 0, n-3, n-2, n-1 with rational-string
/// coordinates and optional facet equations.
inline PLSurface parse_plposet(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad PLPOSET JSON: ") + e.what());
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key))
      throw ParseError(std::string("PLPOSET missing field '") + key + "'");
    return j.at(key);
  };
  if (!j.is_object()) throw ParseError("PLPOSET root must be an object");
  int n = 0;
  try {
    n = require("dimension").get<int>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("PLPOSET 'dimension' must be an integer");
  }
  if (n < 3) throw DimensionError("PLPOSET dimension must be >= 3");

  PLSurface s;
  s.ambient = n;
  bool vertex_mode = j.contains("vertices");
  if (vertex_mode) {
    const auto& verts = j.at("vertices");
    if (!verts.is_array()) throw ParseError("'vertices' must be an array");
    for (const auto& row : verts) {
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ParseError("each vertex needs exactly n coordinates");
      VecN p;
      for (const auto& x : row) p.push_back(detail::json_rational(x));
      s.vertex_coords.push_back(std::move(p));
    }
    s.vertex_count = static_cast<int>(s.vertex_coords.size());
  }

  const auto& faces = require("faces");
  if (!faces.is_object()) throw ParseError("'faces' must be an object");

  struct Rec {
    std::vector<int> vertices;
    std::vector<int> contains;
  };
  auto read_class = [&](int dim, bool required,
                        bool need_contains) -> std::vector<Rec> {
    std::string key = std::to_string(dim);
    if (!faces.contains(key)) {
      if (required)
        throw ParseError("PLPOSET missing face class '" + key + "'");
      return {};
    }
    const auto& arr = faces.at(key);
    if (!arr.is_array()) throw ParseError("face class must be an array");
    std::vector<Rec> recs(arr.size());
    std::vector<char> seen(arr.size(), 0);
    for (const auto& rj : arr) {
      if (!rj.is_object() || !rj.contains("id"))
        throw ParseError("face record needs an 'id'");
      long id = rj.at("id").get<long>();
      if (id < 0 || id >= static_cast<long>(arr.size()) || seen[id])
        throw ParseError("face ids must be dense and unique per class");
      seen[id] = 1;
      Rec rec;
      if (rj.contains("vertices"))
        for (const auto& v : rj.at("vertices")) rec.vertices.push_back(v.get<int>());
      if (vertex_mode && rec.vertices.empty())
        throw MissingLinkError("face record without explicit vertex list");
      if (rj.contains("contains"))
        for (const auto& c : rj.at("contains")) rec.contains.push_back(c.get<int>());
      if (need_contains && rec.contains.empty())
        throw MissingLinkError("face record without 'contains' links");
      recs[id] = std::move(rec);
    }
    return recs;
  };

  const int cdim = n - 3;
  auto centers = read_class(cdim, true, false);
  auto ridges = read_class(n - 2, true, true);
  auto facets = read_class(n - 1, true, true);

  for (auto& r : centers) s.center_vertices.push_back(std::move(r.vertices));
  for (auto& r : ridges) {
    s.ridge_vertices.push_back(std::move(r.vertices));
    s.ridge_centers.push_back(std::move(r.contains));
  }
  for (auto& r : facets) {
    s.facet_vertices.push_back(std::move(r.vertices));
    s.facet_ridges.push_back(std::move(r.contains));
  }
  if (!vertex_mode) {
    if (!j.contains("facet_equations"))
      throw ParseError("PLPOSET without vertex coordinates requires facet_equations");
    // Combinatorial dim-0 faces still exist for n == 3 (they are the
    // centers); give them implicit singleton vertex lists.
    int maxv = -1;
    for (const auto& l : s.center_vertices)
      for (int v : l) maxv = std::max(maxv, v);
    if (n == 3) {
      s.vertex_count =
          std::max(maxv + 1, static_cast<int>(s.center_vertices.size()));
      for (size_t i = 0; i < s.center_vertices.size(); ++i)
        if (s.center_vertices[i].empty())
          s.center_vertices[i] = {static_cast<int>(i)};
    } else {
      s.vertex_count = maxv + 1;
    }
  }

  if (j.contains("facet_equations")) {
    const auto& eqs = j.at("facet_equations");
    if (!eqs.is_array()) throw ParseError("'facet_equations' must be an array");
    s.facet_eqs.resize(eqs.size());
    std::vector<char> seen(eqs.size(), 0);
    for (const auto& ej : eqs) {
      if (!ej.is_object() || !ej.contains("id") || !ej.contains("normal") ||
          !ej.contains("offset"))
        throw ParseError("facet equation needs id, normal, offset");
      long id = ej.at("id").get<long>();
      if (id < 0 || id >= static_cast<long>(eqs.size()) || seen[id])
        throw ParseError("facet equation ids must be dense and unique");
      seen[id] = 1;
      FacetEquation eq;
      for (const auto& x : ej.at("normal"))
        eq.normal.push_back(detail::json_rational(x));
      eq.offset = detail::json_rational(ej.at("offset"));
      s.facet_eqs[id] = std::move(eq);
    }
  }

  s.finalize();
  return s;
}

inline void emit_plposet(const PLSurface& s, std::ostream& out) {
  nlohmann::ordered_json j;
  j["dimension"] = s.ambient;
  if (s.has_vertex_coords()) {
    auto& verts = j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : s.vertex_coords) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& x : v) row.push_back(rat_to_string(x));
      verts.push_back(std::move(row));
    }
  }
  auto& faces = j["faces"] = nlohmann::ordered_json::object();
  auto emit_class = [&](int dim, const std::vector<std::vector<int>>& vlists,
                        const std::vector<std::vector<int>>* contains) {
    auto& arr = faces[std::to_string(dim)] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < vlists.size(); ++i) {
      nlohmann::ordered_json rec;
      rec["id"] = i;
      if (!vlists[i].empty()) rec["vertices"] = vlists[i];
      if (contains) rec["contains"] = (*contains)[i];
      arr.push_back(std::move(rec));
    }
  };
  if (s.ambient > 3 && s.has_vertex_coords()) {
    // Dimension-0 class: one face per vertex.
    auto& arr = faces["0"] = nlohmann::ordered_json::array();
    for (int i = 0; i < s.vertex_count; ++i) {
      nlohmann::ordered_json rec;
      rec["id"] = i;
      rec["vertices"] = std::vector<int>{i};
      arr.push_back(std::move(rec));
    }
  }
  emit_class(s.center_dim(), s.center_vertices, nullptr);
  emit_class(s.ambient - 2, s.ridge_vertices, &s.ridge_centers);
  emit_class(s.ambient - 1, s.facet_vertices, &s.facet_ridges);
  if (s.has_facet_equations()) {
    auto& eqs = j["facet_equations"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < s.facet_eqs.size(); ++i) {
      nlohmann::ordered_json rec;
      rec["id"] = i;
      nlohmann::ordered_json normal = nlohmann::ordered_json::array();
      for (const auto& x : s.facet_eqs[i].normal)
        normal.push_back(rat_to_string(x));
      rec["normal"] = std::move(normal);
      rec["offset"] = rat_to_string(s.facet_eqs[i].offset);
      eqs.push_back(std::move(rec));
    }
  }
  out << j.dump(2) << "\n";
}

inline PLSurface parse_surface(std::istream& in, Format f) {
  return f == Format::OFF ? parse_off(in) : parse_plposet(in);
}

inline void emit_surface(const PLSurface& s, Format f, std::ostream& out) {
  if (f == Format::OFF)
    emit_off(s, out);
  else
    emit_plposet(s, out);
}

/// Content sniffing: JSON starts with '{', otherwise expect an OFF header.
inline Format detect_format(std::istream& in) {
  int c;
  while ((c = in.peek()) != EOF && std::isspace(c)) in.get();
  return in.peek() == '{' ? Format::PLPOSET : Format::OFF;
}

/// Fan fixtures share the rational-string grammar: {"rays": [[x,y,z], ...]}.
inline Fan3 parse_fan(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad fan JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rays"))
    throw ParseError("fan fixture needs a 'rays' array");
  Fan3 fan;
  for (const auto& row : j.at("rays")) {
    if (!row.is_array() || row.size() != 3)
      throw ParseError("each ray needs exactly 3 coordinates");
    fan.rays.push_back({detail::json_rational(row[0]),
                        detail::json_rational(row[1]),
                        detail::json_rational(row[2])});
  }
  return fan;
}

inline void emit_fan(const Fan3& fan, std::ostream& out) {
  nlohmann::ordered_json j;
  auto& rays = j["rays"] = nlohmann::ordered_json::array();
  for (const auto& r : fan.rays)
    rays.push_back({rat_to_string(r[0]), rat_to_string(r[1]),
                    rat_to_string(r[2])});
  out << j.dump(2) << "\n";
}

}  // namespace plconvex
