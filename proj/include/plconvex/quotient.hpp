#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "plconvex/audit.hpp"
#include "plconvex/kernel.hpp"
#include "plconvex/surface.hpp"
#include "plconvex/vec.hpp"

namespace plconvex {

enum class QuotientMode { CoordinateSubspace, GeneralSolve };
enum class QuotientPolicy { FastPathAllowed, ForceGeneralSolve };

/// Projection of R^n along lin(F) onto a complementary 3-space, for an
/// (n-3)-face F. The image frame is a coordinate 3-subspace chosen by a fixed
/// lexicographic scan (the first complementary one), or, when forced, a basis
/// extension computed by Gaussian elimination.
template <class S>
struct QuotientMapT {
  QuotientMode mode = QuotientMode::CoordinateSubspace;
  bool axis_aligned = false;  // elimination degenerates to coordinate selection
  std::vector<S> center_point;
  Matrix<S> direction_basis;   // n-3 rows spanning lin(F)
  std::array<int, 3> frame_axes{0, 1, 2};
  std::vector<int> rest_axes;  // complementary coordinates (CoordinateSubspace)
};

using QuotientMap = QuotientMapT<Rat>;

/// Scalar-typed view of the realization, shared by the exact and float paths.
template <class S>
struct RealizationView {
  int ambient = 3;
  std::vector<std::vector<S>> coords;  // empty in equation mode
  Matrix<S> normals;                   // empty in vertex mode
  std::vector<S> offsets;
};

template <class S>
RealizationView<S> make_view(const PLSurface& s) {
  RealizationView<S> v;
  v.ambient = s.ambient;
  for (const auto& p : s.vertex_coords) {
    std::vector<S> row(p.size());
    for (size_t i = 0; i < p.size(); ++i) row[i] = S(p[i]);
    v.coords.push_back(std::move(row));
  }
  for (const auto& eq : s.facet_eqs) {
    std::vector<S> row(eq.normal.size());
    for (size_t i = 0; i < eq.normal.size(); ++i) row[i] = S(eq.normal[i]);
    v.normals.push_back(std::move(row));
    v.offsets.push_back(S(eq.offset));
  }
  return v;
}

template <>
inline RealizationView<double> make_view<double>(const PLSurface& s) {
  RealizationView<double> v;
  v.ambient = s.ambient;
  for (const auto& p : s.vertex_coords) v.coords.push_back(to_double_vec(p));
  for (const auto& eq : s.facet_eqs) {
    v.normals.push_back(to_double_vec(eq.normal));
    v.offsets.push_back(to_double(eq.offset));
  }
  return v;
}

template <class S>
struct QuotientBuild {
  bool ok = false;
  QuotientMapT<S> map;
  std::string reason;
};

namespace detail {

template <class S, class Ctx>
bool spans_expected(const Matrix<S>& rows, int expect, const Ctx& ctx) {
  Matrix<S> copy = rows;
  return matrix_rank(std::move(copy), ctx) == expect;
}

// Facets incident to a center, via its ridges, ascending and deduplicated.
inline std::vector<int> facets_of_center(const PLSurface& s, int center) {
  std::vector<int> out;
  for (int g : s.center_ridges[center])
    for (int t : s.ridge_facets[g]) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Affine hull of the center face: from its vertex coordinates, or from the
// equations of the >= 3 facets through it.
template <class S, class Ctx>
bool center_hull(const PLSurface& s, const RealizationView<S>& view, int center,
                 const Ctx& ctx, std::vector<S>* point, Matrix<S>* dirs,
                 std::string* why) {
  const int n = view.ambient;
  if (!view.coords.empty()) {
    const auto& verts = s.center_vertices[center];
    if (verts.empty()) {
      *why = "center face has no vertex data";
      return false;
    }
    *point = view.coords[verts[0]];
    dirs->clear();
    Matrix<S> reduced;
    for (size_t i = 1; i < verts.size(); ++i) {
      std::vector<S> d(n);
      for (int j = 0; j < n; ++j)
        d[j] = view.coords[verts[i]][j] - view.coords[verts[0]][j];
      Matrix<S> trial = reduced;
      trial.push_back(d);
      if (matrix_rank(trial, ctx) > static_cast<int>(reduced.size())) {
        reduced.push_back(d);
        dirs->push_back(std::move(d));
      }
    }
    if (static_cast<int>(dirs->size()) != n - 3) {
      *why = "center face spans dimension " + std::to_string(dirs->size()) +
             ", expected " + std::to_string(n - 3);
      return false;
    }
    return true;
  }
  auto facets = facets_of_center(s, center);
  if (facets.size() < 3) {
    *why = "fewer than 3 facet equations through the center face";
    return false;
  }
  Matrix<S> lhs;
  std::vector<S> rhs;
  for (int t : facets) {
    lhs.push_back(view.normals[t]);
    rhs.push_back(view.offsets[t]);
  }
  auto sol = solve_affine(lhs, rhs, n, ctx);
  if (!sol) {
    *why = "facet equations through the center face are inconsistent";
    return false;
  }
  if (static_cast<int>(sol->second.size()) != n - 3) {
    *why = "facet equations pin dimension " +
           std::to_string(sol->second.size()) + ", expected " +
           std::to_string(n - 3);
    return false;
  }
  *point = std::move(sol->first);
  *dirs = std::move(sol->second);
  return true;
}

}  // namespace detail

template <class S, class Ctx>
QuotientBuild<S> build_quotient_map_impl(const PLSurface& s,
                                         const RealizationView<S>& view,
                                         int center, const Ctx& ctx,
                                         QuotientPolicy policy,
                                         PredicateAudit* audit) {
  const int n = view.ambient;
  QuotientBuild<S> out;
  std::vector<S> point;
  Matrix<S> dirs;
  if (!detail::center_hull(s, view, center, ctx, &point, &dirs, &out.reason))
    return out;

  QuotientMapT<S>& q = out.map;
  q.center_point = std::move(point);
  q.direction_basis = std::move(dirs);

  if (policy == QuotientPolicy::FastPathAllowed) {
    // Lexicographic scan of coordinate 3-subspaces; L is complementary to
    // lin(F) iff the direction basis restricted to the other coordinates is
    // nonsingular.
    std::vector<int> axes(n);
    for (int i = 0; i < n; ++i) axes[i] = i;
    for (int a = 0; a < n - 2; ++a)
      for (int b = a + 1; b < n - 1; ++b)
        for (int c = b + 1; c < n; ++c) {
          std::vector<int> rest;
          for (int m = 0; m < n; ++m)
            if (m != a && m != b && m != c) rest.push_back(m);
          Matrix<S> sub;
          for (const auto& d : q.direction_basis) {
            std::vector<S> row;
            for (int m : rest) row.push_back(d[m]);
            sub.push_back(std::move(row));
          }
          if (audit) audit->record(Pred::DetN, std::max(n - 3, 1));
          bool complementary = sub.empty() || !ctx.is_zero(det_value(sub, ctx),
                                                           matrix_scale(sub));
          if (!complementary) continue;
          q.mode = QuotientMode::CoordinateSubspace;
          q.frame_axes = {a, b, c};
          q.rest_axes = rest;
          q.axis_aligned = true;
          for (const auto& d : q.direction_basis)
            for (int m : {a, b, c})
              if (!exactly_zero(d[m])) q.axis_aligned = false;
          out.ok = true;
          return out;
        }
  }

  // Forced or fallback path: extend the direction basis to a full basis by
  // Gaussian elimination over the coordinate axes.
  q.mode = QuotientMode::GeneralSolve;
  q.axis_aligned = false;
  Matrix<S> rows = q.direction_basis;
  std::vector<int> chosen;
  for (int m = 0; m < n && static_cast<int>(chosen.size()) < 3; ++m) {
    std::vector<S> axis(n, S());
    axis[m] = S(1);
    Matrix<S> trial = rows;
    trial.push_back(axis);
    if (audit) audit->record(Pred::DetN, std::max(n - 3, 1));
    if (matrix_rank(trial, ctx) > static_cast<int>(rows.size())) {
      rows.push_back(std::move(axis));
      chosen.push_back(m);
    }
  }
  if (chosen.size() != 3) {
    out.reason = "could not extend the direction basis to a full basis";
    return out;
  }
  q.frame_axes = {chosen[0], chosen[1], chosen[2]};
  q.rest_axes.clear();
  for (int m = 0; m < n; ++m)
    if (std::find(chosen.begin(), chosen.end(), m) == chosen.end())
      q.rest_axes.push_back(m);
  out.ok = true;
  return out;
}

/// Image of p - center modulo span(direction_basis), in frame coordinates.
/// Exactly linear in p.
template <class S, class Ctx>
Vec3<S> quotient_project_impl(const QuotientMapT<S>& q, const std::vector<S>& p,
                              const Ctx& ctx) {
  const int n = static_cast<int>(q.center_point.size());
  std::vector<S> diff(n);
  for (int i = 0; i < n; ++i) diff[i] = p[i] - q.center_point[i];
  const int k = static_cast<int>(q.direction_basis.size());
  if (k == 0 || q.axis_aligned)
    return {diff[q.frame_axes[0]], diff[q.frame_axes[1]], diff[q.frame_axes[2]]};

  if (q.mode == QuotientMode::CoordinateSubspace) {
    Matrix<S> a(k, std::vector<S>(k));
    std::vector<S> b(k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] = q.direction_basis[c][q.rest_axes[r]];
      b[r] = diff[q.rest_axes[r]];
    }
    auto alpha = solve_square(a, b, ctx);
    if (!alpha) throw std::logic_error("quotient map lost complementarity");
    Vec3<S> img;
    for (int t = 0; t < 3; ++t) {
      S acc = diff[q.frame_axes[t]];
      for (int m = 0; m < k; ++m)
        acc -= (*alpha)[m] * q.direction_basis[m][q.frame_axes[t]];
      img[t] = acc;
    }
    return img;
  }

  // GeneralSolve: full n x n system over [directions | frame axes].
  Matrix<S> a(n, std::vector<S>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < k; ++c) a[r][c] = q.direction_basis[c][r];
    for (int t = 0; t < 3; ++t)
      a[r][k + t] = r == q.frame_axes[t] ? S(1) : S();
  }
  auto beta = solve_square(a, diff, ctx);
  if (!beta) throw std::logic_error("quotient map basis is singular");
  return {(*beta)[k], (*beta)[k + 1], (*beta)[k + 2]};
}

struct RayResult {
  bool ok = false;
  std::string reason;
};

/// Ray of ridge g in the fan at the quotient map's center. Vertex mode picks
/// the first ridge vertex with a nonzero image; equation mode anchors at the
/// other (n-3)-faces of the ridge, solving their facet systems.
template <class S, class Ctx>
RayResult ray_of_face_impl(const PLSurface& s, const RealizationView<S>& view,
                           const QuotientMapT<S>& q, int center, int ridge,
                           const Ctx& ctx, Vec3<S>* out) {
  RayResult res;
  auto nonzero = [&](const Vec3<S>& v) {
    S scale = abs_val(v[0]);
    if (abs_val(v[1]) > scale) scale = abs_val(v[1]);
    if (abs_val(v[2]) > scale) scale = abs_val(v[2]);
    for (int i = 0; i < 3; ++i)
      if (!ctx.is_zero(v[i], scale)) return true;
    return false;
  };
  if (!view.coords.empty()) {
    for (int v : s.ridge_vertices[ridge]) {
      Vec3<S> img = quotient_project_impl(q, view.coords[v], ctx);
      if (nonzero(img)) {
        *out = img;
        res.ok = true;
        return res;
      }
    }
    res.reason = "ridge " + std::to_string(ridge) +
                 " has no vertex with a nonzero image";
    return res;
  }
  // Equation mode: anchor at the mean of the ridge's recoverable boundary
  // points -- the zero-dimensional boundary flats plus all pairwise
  // intersections of boundary flats. For a convex ridge cell this mean lies
  // in the cell, which fixes the ray's sign.
  const auto& boundary = s.ridge_centers[ridge];
  std::vector<Matrix<S>> lhs(boundary.size());
  std::vector<std::vector<S>> rhs(boundary.size());
  for (size_t i = 0; i < boundary.size(); ++i) {
    for (int t : detail::facets_of_center(s, boundary[i])) {
      lhs[i].push_back(view.normals[t]);
      rhs[i].push_back(view.offsets[t]);
    }
  }
  std::vector<std::vector<S>> anchors;
  for (size_t i = 0; i < boundary.size(); ++i) {
    auto sol = solve_affine(lhs[i], rhs[i], view.ambient, ctx);
    if (sol && sol->second.empty()) anchors.push_back(sol->first);
  }
  for (size_t i = 0; i < boundary.size(); ++i)
    for (size_t j = i + 1; j < boundary.size(); ++j) {
      Matrix<S> both = lhs[i];
      std::vector<S> rhs2 = rhs[i];
      both.insert(both.end(), lhs[j].begin(), lhs[j].end());
      rhs2.insert(rhs2.end(), rhs[j].begin(), rhs[j].end());
      auto sol = solve_affine(both, rhs2, view.ambient, ctx);
      if (sol && sol->second.empty()) anchors.push_back(sol->first);
    }
  if (!anchors.empty()) {
    std::vector<S> mean(view.ambient, S());
    for (const auto& p : anchors)
      for (int c = 0; c < view.ambient; ++c) mean[c] += p[c];
    for (auto& x : mean) x = x / S(static_cast<int>(anchors.size()));
    Vec3<S> img = quotient_project_impl(q, mean, ctx);
    if (nonzero(img)) {
      *out = img;
      res.ok = true;
      return res;
    }
  }
  res.reason = "ridge " + std::to_string(ridge) +
               " has no anchor point with a nonzero image";
  return res;
}

/// Exact public entry points.
inline QuotientBuild<Rat> build_quotient_map(
    const PLSurface& s, int center,
    QuotientPolicy policy = QuotientPolicy::FastPathAllowed,
    PredicateAudit* audit = nullptr) {
  auto view = make_view<Rat>(s);
  return build_quotient_map_impl(s, view, center, ExactCtx{}, policy, audit);
}

inline Vec3R quotient_project(const QuotientMap& q, const VecN& p) {
  return quotient_project_impl(q, p, ExactCtx{});
}

inline std::optional<Vec3R> ray_of_face(const PLSurface& s,
                                        const QuotientMap& q, int center,
                                        int ridge) {
  auto view = make_view<Rat>(s);
  Vec3R out;
  auto r = ray_of_face_impl(s, view, q, center, ridge, ExactCtx{}, &out);
  if (!r.ok) return std::nullopt;
  return out;
}

}  // namespace plconvex
