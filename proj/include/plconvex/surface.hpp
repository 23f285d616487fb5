#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plconvex/vec.hpp"

namespace plconvex {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingLinkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Index within one dimension class of the poset.
struct FaceId {
  int dim = 0;
  int index = -1;
  bool operator==(const FaceId&) const = default;
};

struct FacetEquation {
  VecN normal;  // nonzero
  Rat offset;   // hyperplane normal·x = offset
};

/// Immutable face poset of dimensions 0, n-3, n-2, n-1 plus its geometric
/// realization (vertex coordinates, facet equations, or both). For n == 3 the
/// center class (dimension n-3) is the vertex class itself. Queries are
/// read-only and safe to call concurrently; construction is single-threaded.
class PLSurface {
 public:
  int ambient = 3;

  // Combinatorics. "Centers" are the (n-3)-faces, "ridges" the (n-2)-faces,
  // "facets" the (n-1)-faces.
  int vertex_count = 0;
  std::vector<std::vector<int>> center_vertices;  // empty lists in equation mode
  std::vector<std::vector<int>> ridge_vertices;
  std::vector<std::vector<int>> facet_vertices;
  std::vector<std::vector<int>> ridge_centers;  // (n-3)-faces on each ridge
  std::vector<std::vector<int>> facet_ridges;   // (n-2)-faces on each facet

  // Derived inverse incidences.
  std::vector<std::vector<int>> center_ridges;
  std::vector<std::vector<int>> ridge_facets;

  // Realization.
  std::vector<VecN> vertex_coords;       // empty in equation-only mode
  std::vector<FacetEquation> facet_eqs;  // empty in vertex-only mode

  bool has_vertex_coords() const { return !vertex_coords.empty(); }
  bool has_facet_equations() const { return !facet_eqs.empty(); }
  int center_dim() const { return ambient - 3; }
  int num_centers() const { return static_cast<int>(center_vertices.size()); }
  int num_ridges() const { return static_cast<int>(ridge_vertices.size()); }
  int num_facets() const { return static_cast<int>(facet_vertices.size()); }

  struct Counts {
    long f0 = 0, f_center = 0, f_ridge = 0, f_facet = 0;
    long center_ridge = 0;  // f_{n-3,n-2}
    long center_facet = 0;  // f_{n-3,n-1}
    long ridge_facet = 0;   // f_{n-2,n-1}
  };

  Counts counts() const {
    Counts c;
    c.f0 = vertex_count;
    c.f_center = num_centers();
    c.f_ridge = num_ridges();
    c.f_facet = num_facets();
    for (const auto& r : center_ridges) c.center_ridge += r.size();
    for (const auto& r : ridge_facets) c.ridge_facet += r.size();
    std::vector<int> scratch;
    for (const auto& ridges : facet_ridges) {
      scratch.clear();
      for (int g : ridges)
        for (int f : ridge_centers[g]) scratch.push_back(f);
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      c.center_facet += scratch.size();
    }
    return c;
  }

  /// Fill derived incidences and check referential integrity. Throws
  /// DimensionError/MissingLinkError on malformed input.
  void finalize() {
    if (ambient < 3) throw DimensionError("ambient dimension must be >= 3");
    auto check_ids = [&](const std::vector<std::vector<int>>& lists, int bound,
                         const char* what) {
      for (const auto& l : lists) {
        std::set<int> seen;
        for (int id : l) {
          if (id < 0 || id >= bound)
            throw MissingLinkError(std::string("incidence references unknown ") +
                                   what + ": " + std::to_string(id));
          if (!seen.insert(id).second)
            throw MissingLinkError(std::string("duplicate ") + what +
                                   " in incidence list: " + std::to_string(id));
        }
      }
    };
    check_ids(center_vertices, vertex_count, "vertex");
    check_ids(ridge_vertices, vertex_count, "vertex");
    check_ids(facet_vertices, vertex_count, "vertex");
    check_ids(ridge_centers, num_centers(), "center face");
    check_ids(facet_ridges, num_ridges(), "ridge face");

    if (has_vertex_coords()) {
      if (static_cast<int>(vertex_coords.size()) != vertex_count)
        throw MissingLinkError("vertex coordinate count mismatch");
      for (const auto& v : vertex_coords)
        if (static_cast<int>(v.size()) != ambient)
          throw DimensionError("vertex coordinate arity mismatch");
      // Explicit vertex lists are required for every provided face.
      for (const auto& l : center_vertices)
        if (l.empty()) throw MissingLinkError("center face without vertex list");
      for (const auto& l : ridge_vertices)
        if (l.empty()) throw MissingLinkError("ridge face without vertex list");
      for (const auto& l : facet_vertices)
        if (l.empty()) throw MissingLinkError("facet without vertex list");
      // Boundary face vertex sets must be contained in the coface's set.
      auto subset = [](const std::vector<int>& small,
                       const std::vector<int>& big) {
        std::set<int> b(big.begin(), big.end());
        for (int x : small)
          if (!b.count(x)) return false;
        return true;
      };
      for (int g = 0; g < num_ridges(); ++g)
        for (int c : ridge_centers[g])
          if (!subset(center_vertices[c], ridge_vertices[g]))
            throw MissingLinkError("center " + std::to_string(c) +
                                   " not a vertex-subset of ridge " +
                                   std::to_string(g));
      for (int t = 0; t < num_facets(); ++t)
        for (int g : facet_ridges[t])
          if (!subset(ridge_vertices[g], facet_vertices[t]))
            throw MissingLinkError("ridge " + std::to_string(g) +
                                   " not a vertex-subset of facet " +
                                   std::to_string(t));
    }
    if (has_facet_equations()) {
      if (static_cast<int>(facet_eqs.size()) != num_facets())
        throw MissingLinkError("facet equation count mismatch");
      for (const auto& e : facet_eqs)
        if (static_cast<int>(e.normal.size()) != ambient)
          throw DimensionError("facet normal arity mismatch");
    }
    if (!has_vertex_coords() && !has_facet_equations())
      throw MissingLinkError("no realization data (vertices or facet equations)");

    center_ridges.assign(num_centers(), {});
    for (int g = 0; g < num_ridges(); ++g)
      for (int c : ridge_centers[g]) center_ridges[c].push_back(g);
    ridge_facets.assign(num_ridges(), {});
    for (int t = 0; t < num_facets(); ++t)
      for (int g : facet_ridges[t]) ridge_facets[g].push_back(t);
  }
};

/// Ambient-3 surface from cyclically ordered polygon faces; edges and their
/// incidences are derived from consecutive vertex pairs, deduplicated.
inline PLSurface surface_from_polygons3(std::vector<VecN> coords,
                                        const std::vector<std::vector<int>>& faces) {
  PLSurface s;
  s.ambient = 3;
  s.vertex_count = static_cast<int>(coords.size());
  s.vertex_coords = std::move(coords);
  s.center_vertices.resize(s.vertex_count);
  for (int i = 0; i < s.vertex_count; ++i) s.center_vertices[i] = {i};
  std::map<std::pair<int, int>, int> edge_ids;
  for (const auto& verts : faces) {
    if (verts.size() < 3) throw ParseError("face with fewer than 3 vertices");
    std::vector<int> ridge_list;
    const int k = static_cast<int>(verts.size());
    for (int j = 0; j < k; ++j) {
      int a = verts[j], b = verts[(j + 1) % k];
      if (a == b) throw ParseError("face repeats a vertex consecutively");
      if (a < 0 || a >= s.vertex_count || b < 0 || b >= s.vertex_count)
        throw MissingLinkError("face references unknown vertex");
      auto key = std::minmax(a, b);
      auto [it, fresh] =
          edge_ids.try_emplace(key, static_cast<int>(edge_ids.size()));
      if (fresh) {
        s.ridge_vertices.push_back({key.first, key.second});
        s.ridge_centers.push_back({key.first, key.second});
      }
      ridge_list.push_back(it->second);
    }
    s.facet_vertices.push_back(verts);
    s.facet_ridges.push_back(std::move(ridge_list));
  }
  s.finalize();
  return s;
}

}  // namespace plconvex
