#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "plconvex/seidel.hpp"
#include "plconvex/surface.hpp"
#include "plconvex/vec.hpp"

namespace plconvex {

struct NonPlanarFacet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleVerdict {
  bool convex = true;
  std::optional<FaceId> failing_facet;
  std::optional<FaceId> strictly_outside_vertex;
};

/// Exact hyperplane through a facet's vertices. Throws NonPlanarFacet when
/// the vertices do not span an (n-1)-flat.
inline FacetEquation facet_hyperplane(const PLSurface& s, int facet) {
  const int n = s.ambient;
  std::vector<VecN> pts;
  for (int v : s.facet_vertices[facet]) pts.push_back(s.vertex_coords[v]);
  auto hull = affine_hull(pts);
  if (hull.dim != n - 1)
    throw NonPlanarFacet("facet " + std::to_string(facet) + " spans dimension " +
                         std::to_string(hull.dim));
  auto basis = nullspace(hull.basis, n);
  if (basis.size() != 1)
    throw NonPlanarFacet("facet " + std::to_string(facet) +
                         " has no unique normal");
  FacetEquation eq;
  eq.normal = std::move(basis[0]);
  eq.offset = dot(eq.normal, pts[0]);
  return eq;
}

/// Desk-scale differential oracle: the surface bounds a convex polyhedron iff
/// every facet hyperplane weakly supports the whole vertex set. Sound and
/// complete for embedded closed surfaces with planar facets.
inline OracleVerdict supporting_hyperplane_oracle(const PLSurface& s) {
  if (!s.has_vertex_coords())
    throw std::invalid_argument("oracle requires vertex coordinates");
  OracleVerdict out;
  for (int t = 0; t < s.num_facets(); ++t) {
    FacetEquation eq = facet_hyperplane(s, t);
    int side = 0;
    for (int v = 0; v < s.vertex_count; ++v) {
      Rat val = dot(eq.normal, s.vertex_coords[v]) - eq.offset;
      int sg = sign_of(val);
      if (sg == 0) continue;
      if (side == 0) side = sg;
      if (sg != side) {
        out.convex = false;
        out.failing_facet = FaceId{s.ambient - 1, t};
        out.strictly_outside_vertex = FaceId{0, v};
        return out;
      }
    }
  }
  return out;
}

/// Indices of the points that are not convex combinations of the others,
/// decided by exact rational linear feasibility (strict separation).
inline std::vector<int> extreme_point_oracle(const std::vector<VecN>& points,
                                             uint64_t seed = 0) {
  if (points.size() > 200)
    throw std::invalid_argument("extreme_point_oracle is desk-scale (<= 200 points)");
  std::vector<int> extreme;
  if (points.empty()) return extreme;
  const int n = static_cast<int>(points[0].size());
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<HalfSpace> rows;
    bool duplicate = false;
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      HalfSpace h;
      h.a = vsub(points[i], points[j]);
      bool zero = true;
      for (const auto& x : h.a)
        if (sign_of(x) != 0) zero = false;
      if (zero) {
        duplicate = true;
        break;
      }
      h.b = Rat(1);
      rows.push_back(std::move(h));
    }
    if (duplicate) continue;
    if (feasible_point(rows, n, mix_seed(seed, i)).has_value())
      extreme.push_back(static_cast<int>(i));
  }
  return extreme;
}

}  // namespace plconvex
