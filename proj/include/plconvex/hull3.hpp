#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace plconvex {

using IPoint3 = std::array<int64_t, 3>;

/// Exact orientation of d against the plane of (a,b,c); coordinates must stay
/// below 2^30 in magnitude so the 3x3 difference determinant fits in __int128.
inline int orient3d_int(const IPoint3& a, const IPoint3& b, const IPoint3& c,
                        const IPoint3& d) {
  using W = __int128;
  W ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  W vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  W wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  W det = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) +
          uz * (vx * wy - vy * wx);
  return det > 0 ? 1 : det < 0 ? -1 : 0;
}

inline bool collinear_int(const IPoint3& a, const IPoint3& b, const IPoint3& c) {
  using W = __int128;
  W ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  W vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  return uy * vz - uz * vy == 0 && uz * vx - ux * vz == 0 &&
         ux * vy - uy * vx == 0;
}

/// Incremental convex hull with conflict lists; expected O(n log n) for
/// randomly ordered input. Returns outward-oriented triangles over the input
/// indices, or nullopt when the input is degenerate (flat input, or a horizon
/// pinch from exactly coplanar samples -- callers resample and retry).
inline std::optional<std::vector<std::array<int, 3>>> convex_hull3(
    const std::vector<IPoint3>& pts) {
  const int m = static_cast<int>(pts.size());
  if (m < 4) return std::nullopt;
  for (const auto& p : pts)
    for (int64_t x : p)
      if (x > (int64_t{1} << 30) || x < -(int64_t{1} << 30)) return std::nullopt;

  int i1 = -1, i2 = -1, i3 = -1;
  for (int j = 1; j < m && i1 < 0; ++j)
    if (pts[j] != pts[0]) i1 = j;
  if (i1 < 0) return std::nullopt;
  for (int j = i1 + 1; j < m && i2 < 0; ++j)
    if (!collinear_int(pts[0], pts[i1], pts[j])) i2 = j;
  if (i2 < 0) return std::nullopt;
  for (int j = i2 + 1; j < m && i3 < 0; ++j)
    if (orient3d_int(pts[0], pts[i1], pts[i2], pts[j]) != 0) i3 = j;
  if (i3 < 0) return std::nullopt;

  struct Face {
    std::array<int, 3> v;
    std::array<int, 3> adj;  // neighbor across edge (v[i], v[i+1])
    std::vector<int> pts;    // conflicting points
    bool alive = true;
  };
  std::vector<Face> faces;
  auto face_sees = [&](const Face& f, int p) {
    return orient3d_int(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[p]) > 0;
  };

  {
    std::array<int, 4> t = {0, i1, i2, i3};
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> tri;
      int k = 0;
      for (int j = 0; j < 4; ++j)
        if (j != skip) tri[k++] = t[j];
      if (orient3d_int(pts[tri[0]], pts[tri[1]], pts[tri[2]], pts[t[skip]]) > 0)
        std::swap(tri[1], tri[2]);
      faces.push_back({tri, {-1, -1, -1}, {}, true});
    }
    std::map<std::pair<int, int>, std::pair<int, int>> half;  // (a,b) -> (face, slot)
    for (int f = 0; f < 4; ++f)
      for (int e = 0; e < 3; ++e)
        half[{faces[f].v[e], faces[f].v[(e + 1) % 3]}] = {f, e};
    for (int f = 0; f < 4; ++f)
      for (int e = 0; e < 3; ++e)
        faces[f].adj[e] = half[{faces[f].v[(e + 1) % 3], faces[f].v[e]}].first;
  }

  std::vector<int> pt_face(m, -1);
  for (int p = 0; p < m; ++p) {
    if (p == 0 || p == i1 || p == i2 || p == i3) continue;
    for (int f = 0; f < 4; ++f)
      if (face_sees(faces[f], p)) {
        faces[f].pts.push_back(p);
        pt_face[p] = f;
        break;
      }
  }

  std::vector<int> visible, stack;
  std::vector<char> mark;
  for (int p = 0; p < m; ++p) {
    int f0 = pt_face[p];
    if (f0 < 0) continue;
    if (!faces[f0].alive || !face_sees(faces[f0], p))
      return std::nullopt;  // conflict links lost coherence; caller resamples
    visible.clear();
    stack.assign(1, f0);
    mark.assign(faces.size(), 0);
    mark[f0] = 1;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      visible.push_back(f);
      for (int e = 0; e < 3; ++e) {
        int g = faces[f].adj[e];
        if (!mark[g] && face_sees(faces[g], p)) {
          mark[g] = 1;
          stack.push_back(g);
        }
      }
    }
    // Horizon: directed edges of visible faces whose neighbor is invisible.
    struct HEdge {
      int a, b, outside, slot;
    };
    std::map<int, HEdge> ring;  // keyed by source vertex a
    bool pinched = false;
    for (int f : visible)
      for (int e = 0; e < 3; ++e) {
        int g = faces[f].adj[e];
        if (mark[g]) continue;
        int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        int slot = -1;
        for (int ge = 0; ge < 3; ++ge)
          if (faces[g].adj[ge] == f && faces[g].v[ge] == b) slot = ge;
        if (slot < 0 || ring.count(a)) pinched = true;
        ring[a] = {a, b, g, slot};
      }
    if (pinched || ring.empty()) return std::nullopt;
    std::vector<HEdge> loop;
    int start = ring.begin()->first;
    for (int a = start;;) {
      auto it = ring.find(a);
      if (it == ring.end()) return std::nullopt;
      loop.push_back(it->second);
      a = it->second.b;
      if (a == start) break;
      if (loop.size() > ring.size()) return std::nullopt;
    }
    if (loop.size() != ring.size()) return std::nullopt;  // pinched horizon
    for (const auto& he : loop)
      if (collinear_int(pts[he.a], pts[he.b], pts[p])) return std::nullopt;

    int base = static_cast<int>(faces.size());
    const int k = static_cast<int>(loop.size());
    for (int e = 0; e < k; ++e) {
      Face nf;
      nf.v = {loop[e].a, loop[e].b, p};
      nf.adj[0] = loop[e].outside;
      nf.adj[1] = base + (e + 1) % k;
      nf.adj[2] = base + (e - 1 + k) % k;
      faces.push_back(std::move(nf));
      faces[loop[e].outside].adj[loop[e].slot] = base + e;
    }
    for (int f : visible) {
      faces[f].alive = false;
      for (int q : faces[f].pts) {
        if (q == p || pt_face[q] != f) continue;
        pt_face[q] = -1;
        for (int e = 0; e < k; ++e)
          if (face_sees(faces[base + e], q)) {
            faces[base + e].pts.push_back(q);
            pt_face[q] = base + e;
            break;
          }
      }
      faces[f].pts.clear();
    }
    pt_face[p] = -1;
  }

  std::vector<std::array<int, 3>> tris;
  for (const auto& f : faces)
    if (f.alive) tris.push_back(f.v);
  return tris;
}

}  // namespace plconvex
