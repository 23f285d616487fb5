#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "plconvex/fan.hpp"
#include "plconvex/hull3.hpp"
#include "plconvex/oracle.hpp"
#include "plconvex/quotient.hpp"
#include "plconvex/rng.hpp"
#include "plconvex/star.hpp"
#include "plconvex/surface.hpp"
#include "plconvex/validate.hpp"

namespace plconvex {

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  enum class Family {
    RandomHull,
    Cube,
    Simplex,
    CrossPolytope,
    Hypercube,
    Dented,
    WoundFan,
  };
  Family family = Family::RandomHull;
  int ambient_dim = 3;
  int num_points = 50;
  uint64_t seed = 0;
  Rat dent_depth = Rat(2, 5);          // Dented: fraction of the way to the centroid
  std::shared_ptr<GenSpec> base;       // Dented: base instance
  int wound_k = 7;                     // WoundFan: ray count (odd, >= 5)
};

/// Simplicial boundary complex: facets are n-vertex simplices; ridges and
/// centers are their (n-1)- and (n-2)-subsets, interned in sorted key order.
inline PLSurface simplicial_surface(int n, std::vector<VecN> coords,
                                    const std::vector<std::vector<int>>& facets) {
  PLSurface s;
  s.ambient = n;
  s.vertex_count = static_cast<int>(coords.size());
  s.vertex_coords = std::move(coords);

  std::map<std::vector<int>, int> ridge_ids, center_ids;
  std::vector<std::vector<int>> facet_sets;
  for (const auto& f : facets) {
    std::vector<int> fs = f;
    std::sort(fs.begin(), fs.end());
    for (size_t drop = 0; drop < fs.size(); ++drop) {
      std::vector<int> ridge;
      for (size_t i = 0; i < fs.size(); ++i)
        if (i != drop) ridge.push_back(fs[i]);
      ridge_ids.emplace(ridge, 0);
      for (size_t drop2 = 0; drop2 < ridge.size(); ++drop2) {
        std::vector<int> center;
        for (size_t i = 0; i < ridge.size(); ++i)
          if (i != drop2) center.push_back(ridge[i]);
        center_ids.emplace(center, 0);
      }
    }
    facet_sets.push_back(std::move(fs));
  }
  int next = 0;
  for (auto& [key, id] : center_ids) {
    id = next++;
    s.center_vertices.push_back(key);
  }
  next = 0;
  for (auto& [key, id] : ridge_ids) {
    id = next++;
    s.ridge_vertices.push_back(key);
    std::vector<int> centers;
    for (size_t drop = 0; drop < key.size(); ++drop) {
      std::vector<int> center;
      for (size_t i = 0; i < key.size(); ++i)
        if (i != drop) center.push_back(key[i]);
      centers.push_back(center_ids.at(center));
    }
    s.ridge_centers.push_back(std::move(centers));
  }
  for (const auto& fs : facet_sets) {
    std::vector<int> ridges;
    for (size_t drop = 0; drop < fs.size(); ++drop) {
      std::vector<int> ridge;
      for (size_t i = 0; i < fs.size(); ++i)
        if (i != drop) ridge.push_back(fs[i]);
      ridges.push_back(ridge_ids.at(ridge));
    }
    s.facet_vertices.push_back(fs);
    s.facet_ridges.push_back(std::move(ridges));
  }
  s.finalize();
  return s;
}

inline PLSurface cube_surface() {
  std::vector<VecN> coords(8, VecN(3));
  for (int i = 0; i < 8; ++i)
    coords[i] = {Rat(i & 1), Rat((i >> 1) & 1), Rat((i >> 2) & 1)};
  std::vector<std::vector<int>> faces = {
      {0, 1, 3, 2}, {4, 6, 7, 5}, {0, 4, 5, 1},
      {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 5, 7, 3},
  };
  return surface_from_polygons3(std::move(coords), faces);
}

/// Boundary of the simplex conv{0, e_1, ..., e_n}.
inline PLSurface simplex_surface(int n) {
  std::vector<VecN> coords;
  coords.push_back(VecN(n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    VecN e(n, Rat(0));
    e[i] = Rat(1);
    coords.push_back(std::move(e));
  }
  std::vector<std::vector<int>> facets;
  for (int drop = 0; drop <= n; ++drop) {
    std::vector<int> f;
    for (int i = 0; i <= n; ++i)
      if (i != drop) f.push_back(i);
    facets.push_back(std::move(f));
  }
  return simplicial_surface(n, std::move(coords), facets);
}

/// Boundary of conv{±e_i}; vertex 2i is +e_i, vertex 2i+1 is -e_i.
inline PLSurface cross_polytope_surface(int n) {
  std::vector<VecN> coords;
  for (int i = 0; i < n; ++i) {
    VecN p(n, Rat(0)), q(n, Rat(0));
    p[i] = Rat(1);
    q[i] = Rat(-1);
    coords.push_back(std::move(p));
    coords.push_back(std::move(q));
  }
  std::vector<std::vector<int>> facets;
  for (int signs = 0; signs < (1 << n); ++signs) {
    std::vector<int> f;
    for (int i = 0; i < n; ++i) f.push_back(2 * i + ((signs >> i) & 1));
    facets.push_back(std::move(f));
  }
  return simplicial_surface(n, std::move(coords), facets);
}

/// Boundary of [0,1]^4 with its full poset (vertices, edges, squares, cubes).
inline PLSurface hypercube_surface() {
  const int n = 4;
  PLSurface s;
  s.ambient = n;
  s.vertex_count = 16;
  for (int v = 0; v < 16; ++v) {
    VecN p(4);
    for (int i = 0; i < 4; ++i) p[i] = Rat((v >> i) & 1);
    s.vertex_coords.push_back(std::move(p));
  }
  std::map<std::vector<int>, int> edge_ids, square_ids;
  auto face_vertices = [&](int free_mask, int base) {
    std::vector<int> verts;
    for (int sub = 0;; sub = (sub - free_mask) & free_mask) {
      verts.push_back(base | sub);
      if (sub == free_mask) break;
    }
    std::sort(verts.begin(), verts.end());
    return verts;
  };
  for (int i = 0; i < 4; ++i) {
    int fm = 1 << i;
    for (int base = 0; base < 16; ++base)
      if (!(base & fm)) edge_ids.emplace(face_vertices(fm, base), 0);
  }
  int next = 0;
  for (auto& [key, id] : edge_ids) {
    id = next++;
    s.center_vertices.push_back(key);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int fm = (1 << i) | (1 << j);
      for (int base = 0; base < 16; ++base) {
        if (base & fm) continue;
        auto key = face_vertices(fm, base);
        square_ids.emplace(key, 0);
      }
    }
  next = 0;
  for (auto& [key, id] : square_ids) {
    id = next++;
    s.ridge_vertices.push_back(key);
    // Edges of the square: vertex pairs differing in one free bit.
    std::vector<int> edges;
    for (size_t a = 0; a < key.size(); ++a)
      for (size_t b = a + 1; b < key.size(); ++b) {
        int diff = key[a] ^ key[b];
        if ((diff & (diff - 1)) == 0)
          edges.push_back(edge_ids.at({std::min(key[a], key[b]),
                                       std::max(key[a], key[b])}));
      }
    std::sort(edges.begin(), edges.end());
    s.ridge_centers.push_back(std::move(edges));
  }
  for (int i = 0; i < 4; ++i) {
    for (int side = 0; side < 2; ++side) {
      int fm = 15 ^ (1 << i);
      int base = side << i;
      auto verts = face_vertices(fm, base);
      std::vector<int> squares;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          if (a == i || b == i) continue;
          int sfm = (1 << a) | (1 << b);
          // The remaining free axis of the cube takes both values.
          for (int c = 0; c < 4; ++c) {
            if (c == i || c == a || c == b) continue;
            for (int bit = 0; bit < 2; ++bit)
              squares.push_back(
                  square_ids.at(face_vertices(sfm, base | (bit << c))));
          }
        }
      std::sort(squares.begin(), squares.end());
      s.facet_vertices.push_back(verts);
      s.facet_ridges.push_back(std::move(squares));
    }
  }
  s.finalize();
  return s;
}

/// Boundary of [0,1]^4 triangulated by the Kuhn/Freudenthal simplices of each
/// cube facet; facet-compatible across shared squares.
inline PLSurface kuhn_hypercube_surface() {
  std::vector<VecN> coords;
  for (int v = 0; v < 16; ++v) {
    VecN p(4);
    for (int i = 0; i < 4; ++i) p[i] = Rat((v >> i) & 1);
    coords.push_back(std::move(p));
  }
  std::vector<std::vector<int>> tets;
  for (int axis = 0; axis < 4; ++axis) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> free;
      for (int i = 0; i < 4; ++i)
        if (i != axis) free.push_back(i);
      std::sort(free.begin(), free.end());
      do {
        int v = side << axis;
        std::vector<int> tet = {v};
        for (int step : free) {
          v |= 1 << step;
          tet.push_back(v);
        }
        tets.push_back(tet);
      } while (std::next_permutation(free.begin(), free.end()));
    }
  }
  return simplicial_surface(4, std::move(coords), tets);
}

/// Exact rational point on the unit circle near angle turns * 2*pi (tangent
/// half-angle rounding).
inline Vec2R rational_circle_point(double turns) {
  const double pi = 3.14159265358979323846;
  double theta = turns * 2.0 * pi;
  while (theta > pi) theta -= 2 * pi;
  while (theta < -pi) theta += 2 * pi;
  double t = std::tan(theta / 2.0);
  if (!std::isfinite(t) || std::abs(t) > 1e12) t = std::copysign(1e12, t);
  Rat tr(static_cast<long>(std::llround(t * 65536.0)), 65536L);
  tr.canonicalize();
  Rat denom = Rat(1) + tr * tr;
  return {(Rat(1) - tr * tr) / denom, Rat(2) * tr / denom};
}

/// Fan whose projected polygon is the {k/2} star polygon: locally convex but
/// winding twice. k must be odd and >= 5.
inline Fan3 wound_fan(int k) {
  if (k < 5 || k % 2 == 0)
    throw GenError("wound fan needs an odd ray count >= 5");
  Fan3 fan;
  for (int i = 0; i < k; ++i) {
    Vec2R p = rational_circle_point(2.0 * i / k);
    fan.rays.push_back({p[0], p[1], Rat(1)});
  }
  return fan;
}

inline std::vector<IPoint3> sample_sphere_points(Rng& rng, int count) {
  const int64_t scale = int64_t{1} << 20;
  std::vector<IPoint3> pts;
  while (static_cast<int>(pts.size()) < count) {
    double x = rng.gaussian(), y = rng.gaussian(), z = rng.gaussian();
    double n = std::sqrt(x * x + y * y + z * z);
    if (n < 1e-6) continue;
    IPoint3 p = {static_cast<int64_t>(std::llround(x / n * scale)),
                 static_cast<int64_t>(std::llround(y / n * scale)),
                 static_cast<int64_t>(std::llround(z / n * scale))};
    if (p[0] == 0 && p[1] == 0 && p[2] == 0) continue;
    pts.push_back(p);
  }
  return pts;
}

/// Exact hull of integer points as a simplicial PLSurface (hull vertices are
/// reindexed densely in input order).
inline PLSurface hull_surface(const std::vector<IPoint3>& pts) {
  auto tris = convex_hull3(pts);
  if (!tris) throw GenError("degenerate point sample for convex hull");
  std::vector<int> used;
  for (const auto& t : *tris)
    for (int v : t) used.push_back(v);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> dense(pts.size(), -1);
  std::vector<VecN> coords;
  for (size_t i = 0; i < used.size(); ++i) {
    dense[used[i]] = static_cast<int>(i);
    coords.push_back({rat_of(pts[used[i]][0]), rat_of(pts[used[i]][1]),
                      rat_of(pts[used[i]][2])});
  }
  std::vector<std::vector<int>> facets;
  for (const auto& t : *tris)
    facets.push_back({dense[t[0]], dense[t[1]], dense[t[2]]});
  return simplicial_surface(3, std::move(coords), facets);
}

inline Matrix<Rat> random_invertible_matrix(int n, Rng& rng) {
  for (;;) {
    Matrix<Rat> m(n, VecN(n));
    for (auto& row : m)
      for (auto& x : row) x = Rat(rng.in_range(-4, 4));
    if (sign_of(det_value(m)) != 0) return m;
  }
}

/// Apply x -> M x + t to all vertex coordinates (vertex mode only).
inline PLSurface apply_affine(const PLSurface& s, const Matrix<Rat>& m,
                              const VecN& t) {
  if (!s.has_vertex_coords())
    throw std::invalid_argument("apply_affine requires vertex coordinates");
  PLSurface out = s;
  out.facet_eqs.clear();
  for (auto& p : out.vertex_coords) {
    VecN q(t);
    for (size_t r = 0; r < q.size(); ++r) q[r] = q[r] + dot(m[r], p);
    p = std::move(q);
  }
  return out;
}

/// Compute each facet's hyperplane from its vertices and attach it.
inline PLSurface attach_facet_equations(const PLSurface& s) {
  PLSurface out = s;
  out.facet_eqs.clear();
  for (int t = 0; t < s.num_facets(); ++t)
    out.facet_eqs.push_back(facet_hyperplane(s, t));
  return out;
}

/// Drop coordinates, keeping the poset and facet equations only.
inline PLSurface equations_only(const PLSurface& s) {
  PLSurface out = s.has_facet_equations() ? s : attach_facet_equations(s);
  out.vertex_coords.clear();
  return out;
}

namespace detail {

// Vertex cycle of an ambient-3 facet, reconstructed from its edge set.
inline std::vector<int> facet_cycle3(const PLSurface& s, int t) {
  std::map<int, std::vector<int>> next;
  for (int g : s.facet_ridges[t]) {
    int a = s.ridge_vertices[g][0], b = s.ridge_vertices[g][1];
    next[a].push_back(b);
    next[b].push_back(a);
  }
  std::vector<int> cycle;
  int start = next.begin()->first;
  int prev = -1, cur = start;
  for (;;) {
    cycle.push_back(cur);
    auto& nb = next[cur];
    if (nb.size() != 2) throw GenError("facet boundary is not a cycle");
    int nxt = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
    if (cur == start) break;
    if (cycle.size() > next.size()) throw GenError("facet boundary is not a cycle");
  }
  return cycle;
}

// Fan-triangulate every non-triangle facet containing vertex v (ambient 3).
inline PLSurface triangulate_at_vertex3(const PLSurface& s, int v) {
  std::vector<std::vector<int>> faces;
  for (int t = 0; t < s.num_facets(); ++t) {
    auto cycle = facet_cycle3(s, t);
    auto at = std::find(cycle.begin(), cycle.end(), v);
    if (cycle.size() == 3 || at == cycle.end()) {
      faces.push_back(cycle);
      continue;
    }
    std::rotate(cycle.begin(), at, cycle.end());
    for (size_t i = 1; i + 1 < cycle.size(); ++i)
      faces.push_back({v, cycle[i], cycle[i + 1]});
  }
  return surface_from_polygons3(s.vertex_coords, faces);
}

// Exact star convexity probe at one center face.
inline bool star_fails(const PLSurface& s, int center) {
  auto st = extract_star(s, center);
  if (!st.ok) return true;
  auto view = make_view<Rat>(s);
  auto qb = build_quotient_map_impl(s, view, center, ExactCtx{},
                                    QuotientPolicy::FastPathAllowed, nullptr);
  if (!qb.ok) return true;
  std::vector<Vec3R> rays;
  for (int g : st.star.ridges) {
    Vec3R ray;
    auto rr = ray_of_face_impl(s, view, qb.map, center, g, ExactCtx{}, &ray);
    if (!rr.ok) return true;
    rays.push_back(ray);
  }
  ExactKernel k(nullptr, 0);
  return c_check_impl(rays, k).status != FanStatus::Convex;
}

}  // namespace detail

/// Move one vertex toward the centroid and re-triangulate the facets around
/// it so every facet stays planar. Tries seed-ordered vertices until the
/// star of the moved vertex demonstrably fails the convexity check; pointed
/// stars that stay convex at this depth are skipped.
inline PLSurface generate_dented(const PLSurface& base, const Rat& depth,
                                 uint64_t seed, int* dented_vertex = nullptr) {
  if (sign_of(depth) <= 0 || depth >= Rat(1))
    throw GenError("dent_depth must lie in (0,1)");
  if (!base.has_vertex_coords())
    throw GenError("dents require vertex coordinates");
  if (base.ambient != 3) {
    for (const auto& f : base.facet_vertices)
      if (static_cast<int>(f.size()) != base.ambient)
        throw GenError("dents above ambient 3 need a simplicial base");
  }

  VecN centroid(base.ambient, Rat(0));
  for (const auto& p : base.vertex_coords) centroid = vadd(centroid, p);
  for (auto& x : centroid) x /= Rat(base.vertex_count);

  std::vector<int> order(base.vertex_count);
  for (int i = 0; i < base.vertex_count; ++i) order[i] = i;
  Rng rng(mix_seed(seed, 0xDE17));
  rng.shuffle(order);

  for (int v : order) {
    PLSurface cand = base.ambient == 3 ? detail::triangulate_at_vertex3(base, v)
                                       : base;
    VecN moved = vadd(vscale(Rat(Rat(1) - depth), base.vertex_coords[v]),
                      vscale(depth, centroid));
    cand.vertex_coords[v] = std::move(moved);
    if (!validate_realization(cand).ok) continue;
    // Centers whose star geometry involves v.
    std::vector<char> affected(cand.num_centers(), 0);
    for (int c = 0; c < cand.num_centers(); ++c)
      for (int u : cand.center_vertices[c])
        if (u == v) affected[c] = 1;
    for (int g = 0; g < cand.num_ridges(); ++g)
      if (std::find(cand.ridge_vertices[g].begin(), cand.ridge_vertices[g].end(),
                    v) != cand.ridge_vertices[g].end())
        for (int c : cand.ridge_centers[g]) affected[c] = 1;
    for (int t = 0; t < cand.num_facets(); ++t)
      if (std::find(cand.facet_vertices[t].begin(), cand.facet_vertices[t].end(),
                    v) != cand.facet_vertices[t].end())
        for (int g : cand.facet_ridges[t])
          for (int c : cand.ridge_centers[g]) affected[c] = 1;
    for (int c = 0; c < cand.num_centers(); ++c)
      if (affected[c] && detail::star_fails(cand, c)) {
        if (dented_vertex) *dented_vertex = v;
        return cand;
      }
  }
  throw GenError("no vertex admits a dent at this depth");
}

inline PLSurface generate(const GenSpec& spec) {
  using F = GenSpec::Family;
  switch (spec.family) {
    case F::Cube:
      if (spec.ambient_dim != 3) throw GenError("cube family is ambient 3");
      return cube_surface();
    case F::Simplex:
      return simplex_surface(spec.ambient_dim);
    case F::CrossPolytope:
      return cross_polytope_surface(spec.ambient_dim);
    case F::Hypercube:
      if (spec.ambient_dim != 4) throw GenError("hypercube family is ambient 4");
      return hypercube_surface();
    case F::RandomHull: {
      if (spec.ambient_dim == 3) {
        if (spec.num_points < 4)
          throw GenError("random hull needs at least n+1 points");
        for (int attempt = 0; attempt < 8; ++attempt) {
          Rng rng(mix_seed(spec.seed, attempt));
          auto pts = sample_sphere_points(rng, spec.num_points);
          try {
            return hull_surface(pts);
          } catch (const GenError&) {
            continue;
          }
        }
        throw GenError("degenerate samples in every hull attempt");
      }
      if (spec.ambient_dim == 4) {
        // Canonical 4-polytopes in random invertible linear images.
        Rng rng(mix_seed(spec.seed, 0x4D));
        PLSurface base;
        switch (rng.below(3)) {
          case 0: base = simplex_surface(4); break;
          case 1: base = cross_polytope_surface(4); break;
          default: base = kuhn_hypercube_surface(); break;
        }
        auto m = random_invertible_matrix(4, rng);
        VecN t(4);
        for (auto& x : t) x = Rat(rng.in_range(-3, 3));
        return apply_affine(base, m, t);
      }
      throw GenError("random hulls are ambient 3 or 4");
    }
    case F::Dented: {
      GenSpec base_spec = spec.base ? *spec.base : GenSpec{F::Cube, 3};
      PLSurface base = base_spec.family == F::Hypercube
                           ? kuhn_hypercube_surface()
                           : generate(base_spec);
      return generate_dented(base, spec.dent_depth, spec.seed);
    }
    case F::WoundFan:
      throw GenError("wound fans are fan fixtures; use generate_fan");
  }
  throw GenError("unknown family");
}

inline Fan3 generate_fan(const GenSpec& spec) {
  if (spec.family != GenSpec::Family::WoundFan)
    throw GenError("generate_fan handles the WoundFan family only");
  return wound_fan(spec.wound_k);
}

}  // namespace plconvex
