#pragma once

#include <array>
#include <string>
#include <vector>

#include "plconvex/audit.hpp"
#include "plconvex/star.hpp"
#include "plconvex/surface.hpp"

namespace plconvex {

struct ValidationReport {
  bool ok = true;
  std::string reason;
  FaceId face;
  /// Facet pairs sharing a ridge whose hyperplanes coincide (allowed, the
  /// surface is locally flat there).
  std::vector<std::array<int, 2>> flat_pairs;
  /// Float-mode only: the failing decision leaned on a tolerance-flushed zero.
  bool uncertain = false;
};

/// Closed-manifold conditions on the poset alone: every ridge borders exactly
/// two facets, every center link is one cycle of length >= 3, and the facet
/// adjacency graph is connected.
inline ValidationReport validate_poset(const PLSurface& s) {
  ValidationReport r;
  auto fail = [&](std::string why, FaceId f) {
    r.ok = false;
    r.reason = std::move(why);
    r.face = f;
    return r;
  };
  if (s.num_facets() == 0 || s.num_ridges() == 0 || s.num_centers() == 0)
    return fail("empty_complex", {s.ambient - 1, 0});
  for (int g = 0; g < s.num_ridges(); ++g)
    if (s.ridge_facets[g].size() != 2)
      return fail("ridge_facet_count", {s.ambient - 2, g});
  for (int c = 0; c < s.num_centers(); ++c) {
    auto st = extract_star(s, c);
    if (!st.ok) return fail("not_manifold_at_face", {s.center_dim(), c});
  }
  std::vector<char> seen(s.num_facets(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int g : s.facet_ridges[t])
      for (int u : s.ridge_facets[g])
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
  }
  for (int t = 0; t < s.num_facets(); ++t)
    if (!seen[t]) return fail("facet_graph_disconnected", {s.ambient - 1, t});
  return r;
}

namespace detail {

template <class S, class Ctx>
int face_affine_rank(const std::vector<std::vector<S>>& coords,
                     const std::vector<int>& verts, const Ctx& ctx) {
  Matrix<S> rows;
  for (size_t i = 1; i < verts.size(); ++i) {
    std::vector<S> d(coords[verts[0]].size());
    for (size_t j = 0; j < d.size(); ++j)
      d[j] = coords[verts[i]][j] - coords[verts[0]][j];
    rows.push_back(std::move(d));
  }
  if (rows.empty()) return 0;
  return matrix_rank(std::move(rows), ctx);
}

template <class S, class Ctx>
ValidationReport validate_realization_impl(
    const PLSurface& s, const std::vector<std::vector<S>>& coords,
    const Ctx& base_ctx, PredicateAudit* audit) {
  ValidationReport r;
  auto fail = [&](std::string why, FaceId f, bool uncertain) {
    r.ok = false;
    r.reason = std::move(why);
    r.face = f;
    r.uncertain = uncertain;
    return r;
  };

  if (!coords.empty()) {
    auto check_class = [&](const std::vector<std::vector<int>>& faces, int dim,
                           int face_dim) -> ValidationReport* {
      for (size_t i = 0; i < faces.size(); ++i) {
        Ctx ctx = base_ctx;
        if (audit)
          audit->record(Pred::Rank, std::min(dim + 1, s.ambient));
        int got = face_affine_rank(coords, faces[i], ctx);
        if (got != dim) {
          fail("affine_dimension_mismatch", {face_dim, static_cast<int>(i)},
               ctx.tolerant_zero_used_flag());
          return &r;
        }
      }
      return nullptr;
    };
    if (auto* bad = check_class(s.center_vertices, s.center_dim(), s.center_dim()))
      return *bad;
    if (auto* bad = check_class(s.ridge_vertices, s.ambient - 2, s.ambient - 2))
      return *bad;
    if (auto* bad = check_class(s.facet_vertices, s.ambient - 1, s.ambient - 1))
      return *bad;
  }

  if (s.has_facet_equations()) {
    for (int t = 0; t < s.num_facets(); ++t) {
      bool zero = true;
      for (const auto& x : s.facet_eqs[t].normal)
        if (!exactly_zero(x)) zero = false;
      if (zero) return fail("zero_normal", {s.ambient - 1, t}, false);
    }
    for (int g = 0; g < s.num_ridges(); ++g) {
      if (s.ridge_facets[g].size() != 2) continue;  // poset validation reports it
      int t0 = s.ridge_facets[g][0], t1 = s.ridge_facets[g][1];
      Matrix<Rat> normals = {s.facet_eqs[t0].normal, s.facet_eqs[t1].normal};
      if (matrix_rank(normals) == 2) continue;
      Matrix<Rat> aug = normals;
      aug[0].push_back(s.facet_eqs[t0].offset);
      aug[1].push_back(s.facet_eqs[t1].offset);
      if (matrix_rank(aug) == 1)
        r.flat_pairs.push_back({t0, t1});  // identical hyperplane, flagged flat
      else
        return fail("ridge_parallel_facets", {s.ambient - 2, g}, false);
    }
  }
  return r;
}

struct ExactCtxFlag : ExactCtx {
  bool tolerant_zero_used_flag() const { return false; }
};
struct FloatCtxFlag : FloatCtx {
  bool tolerant_zero_used_flag() const { return tolerant_zero_used; }
};

}  // namespace detail

/// Exact-rank check that each provided face spans an affine subspace of
/// exactly its labelled dimension (vertex mode), and that facet equations are
/// nondegenerate (equation mode).
inline ValidationReport validate_realization(const PLSurface& s,
                                             PredicateAudit* audit = nullptr) {
  return detail::validate_realization_impl(s, s.vertex_coords,
                                           detail::ExactCtxFlag{}, audit);
}

/// Tolerant variant over double coordinates for float mode.
inline ValidationReport validate_realization_float(const PLSurface& s,
                                                   double eps,
                                                   PredicateAudit* audit = nullptr) {
  std::vector<std::vector<double>> coords;
  coords.reserve(s.vertex_coords.size());
  for (const auto& v : s.vertex_coords) coords.push_back(to_double_vec(v));
  detail::FloatCtxFlag ctx;
  ctx.eps = eps;
  return detail::validate_realization_impl(s, coords, ctx, audit);
}

}  // namespace plconvex
