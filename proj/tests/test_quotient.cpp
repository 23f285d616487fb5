#include <catch2/catch_amalgamated.hpp>

#include "plconvex/generator.hpp"
#include "plconvex/quotient.hpp"
#include "plconvex/rng.hpp"

using namespace plconvex;

namespace {

// Center face whose vertex set is exactly `verts`.
int center_of(const PLSurface& s, std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  for (int c = 0; c < s.num_centers(); ++c) {
    std::vector<int> have = s.center_vertices[c];
    std::sort(have.begin(), have.end());
    if (have == verts) return c;
  }
  return -1;
}

// Ridge whose vertex set is exactly `verts`.
int ridge_of(const PLSurface& s, std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  for (int g = 0; g < s.num_ridges(); ++g) {
    std::vector<int> have = s.ridge_vertices[g];
    std::sort(have.begin(), have.end());
    if (have == verts) return g;
  }
  return -1;
}

Rat laplace4(const Matrix<Rat>& m) {
  Rat acc;
  int sgn = 1;
  for (int c = 0; c < 4; ++c) {
    Matrix<Rat> minor;
    for (int i = 1; i < 4; ++i) {
      VecN row;
      for (int j = 0; j < 4; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    Rat d = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
            minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
            minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    acc += Rat(sgn) * m[0][c] * d;
    sgn = -sgn;
  }
  return acc;
}

bool same_direction(const Vec3R& a, const Vec3R& b) {
  return plconvex::sign_of(dot3(a, b)) > 0 &&
         plconvex::sign_of(cross3(a, b)[0]) == 0 &&
         plconvex::sign_of(cross3(a, b)[1]) == 0 &&
         plconvex::sign_of(cross3(a, b)[2]) == 0;
}

}  // namespace

TEST_CASE("ambient 3: the quotient at a vertex is the identity") {
  PLSurface cube = cube_surface();
  auto qb = build_quotient_map(cube, 0);
  REQUIRE(qb.ok);
  CHECK(qb.map.mode == QuotientMode::CoordinateSubspace);
  CHECK(qb.map.axis_aligned);
  CHECK(qb.map.frame_axes == std::array<int, 3>{0, 1, 2});
  CHECK(qb.map.direction_basis.empty());
  Vec3R img = quotient_project(qb.map, {Rat(2), Rat(3), Rat(5)});
  CHECK(img == Vec3R{Rat(2), Rat(3), Rat(5)});  // center is the origin
}

TEST_CASE("ambient 4: an edge along e4 gets the (e1,e2,e3) frame") {
  PLSurface hc = hypercube_surface();
  int c = center_of(hc, {0, 8});  // vertices 0000 and 1000 (bit 3 = e4)
  REQUIRE(c >= 0);
  auto qb = build_quotient_map(hc, c);
  REQUIRE(qb.ok);
  CHECK(qb.map.mode == QuotientMode::CoordinateSubspace);
  CHECK(qb.map.axis_aligned);
  CHECK(qb.map.frame_axes == std::array<int, 3>{0, 1, 2});

  // Projection kills the center and its direction space.
  Vec3R z = quotient_project(qb.map, qb.map.center_point);
  CHECK(z == Vec3R{Rat(0), Rat(0), Rat(0)});
  VecN shifted = vadd(qb.map.center_point, qb.map.direction_basis[0]);
  CHECK(quotient_project(qb.map, shifted) == Vec3R{Rat(0), Rat(0), Rat(0)});
  VecN frame1 = qb.map.center_point;
  frame1[1] += 1;
  CHECK(quotient_project(qb.map, frame1) == Vec3R{Rat(0), Rat(1), Rat(0)});
}

TEST_CASE("ambient 4: an edge along (1,1,1,1) keeps the first frame") {
  // Map e1 -> (1,1,1,1) on the 4-simplex so edge {0, e1} gets that direction.
  PLSurface base = simplex_surface(4);
  Matrix<Rat> m = {{Rat(1), Rat(0), Rat(0), Rat(0)},
                   {Rat(1), Rat(1), Rat(0), Rat(0)},
                   {Rat(1), Rat(0), Rat(1), Rat(0)},
                   {Rat(1), Rat(0), Rat(0), Rat(1)}};
  PLSurface s = apply_affine(base, m, VecN(4, Rat(0)));
  int c = center_of(s, {0, 1});
  REQUIRE(c >= 0);
  auto qb = build_quotient_map(s, c);
  REQUIRE(qb.ok);
  CHECK(qb.map.mode == QuotientMode::CoordinateSubspace);
  CHECK(!qb.map.axis_aligned);
  CHECK(qb.map.frame_axes == std::array<int, 3>{0, 1, 2});
  // Derived check: complementarity via the 4x4 determinant.
  Matrix<Rat> cols = {qb.map.direction_basis[0],
                      {Rat(1), Rat(0), Rat(0), Rat(0)},
                      {Rat(0), Rat(1), Rat(0), Rat(0)},
                      {Rat(0), Rat(0), Rat(1), Rat(0)}};
  CHECK(plconvex::sign_of(laplace4(cols)) != 0);
}

TEST_CASE("forced GeneralSolve agrees with the fast path") {
  PLSurface hc = hypercube_surface();
  Rng rng(7);
  for (int c : {0, 5, 11, 17, 23, 29}) {
    auto fast = build_quotient_map(hc, c % hc.num_centers());
    auto slow = build_quotient_map(hc, c % hc.num_centers(),
                                   QuotientPolicy::ForceGeneralSolve);
    REQUIRE(fast.ok);
    REQUIRE(slow.ok);
    CHECK(slow.map.mode == QuotientMode::GeneralSolve);
    // Both projections kill lin(F) and are complementary; they agree up to a
    // linear change of 3D frame, so zero sets must match.
    for (int t = 0; t < 10; ++t) {
      VecN p(4);
      for (auto& x : p) x = Rat(rng.in_range(-9, 9), rng.in_range(1, 5)), x.canonicalize();
      Vec3R a = quotient_project(fast.map, p);
      Vec3R b = quotient_project(slow.map, p);
      bool a_zero = sign_of(a[0]) == 0 && sign_of(a[1]) == 0 && sign_of(a[2]) == 0;
      bool b_zero = sign_of(b[0]) == 0 && sign_of(b[1]) == 0 && sign_of(b[2]) == 0;
      CHECK(a_zero == b_zero);
    }
  }
}

TEST_CASE("the underlying linear map of the projection is exactly linear") {
  PLSurface base = simplex_surface(4);
  Rng rng(99);
  auto m = random_invertible_matrix(4, rng);
  PLSurface s = apply_affine(base, m, VecN(4, Rat(0)));
  for (int c : {0, 3, 7}) {
    auto qb = build_quotient_map(s, c % s.num_centers());
    REQUIRE(qb.ok);
    const auto& q = qb.map;
    auto lin = [&](const VecN& u) {
      return quotient_project(q, vadd(q.center_point, u));
    };
    for (int t = 0; t < 25; ++t) {
      VecN u(4), v(4);
      for (auto& x : u) x = Rat(rng.in_range(-9, 9), rng.in_range(1, 7)), x.canonicalize();
      for (auto& x : v) x = Rat(rng.in_range(-9, 9), rng.in_range(1, 7)), x.canonicalize();
      Rat alpha(rng.in_range(-6, 6), rng.in_range(1, 5));
      alpha.canonicalize();
      Rat beta(rng.in_range(-6, 6), rng.in_range(1, 5));
      beta.canonicalize();
      VecN combo = vadd(vscale(alpha, u), vscale(beta, v));
      Vec3R lhs = lin(combo);
      Vec3R a = lin(u), b = lin(v);
      Vec3R rhs = {alpha * a[0] + beta * b[0], alpha * a[1] + beta * b[1],
                   alpha * a[2] + beta * b[2]};
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("rays at a cube vertex and an octahedron vertex") {
  PLSurface cube = cube_surface();
  auto qb = build_quotient_map(cube, 0);
  REQUIRE(qb.ok);
  int g = ridge_of(cube, {0, 1});  // edge to (1,0,0)
  REQUIRE(g >= 0);
  auto ray = ray_of_face(cube, qb.map, 0, g);
  REQUIRE(ray.has_value());
  CHECK(same_direction(*ray, {Rat(1), Rat(0), Rat(0)}));

  PLSurface octa = cross_polytope_surface(3);
  // Vertex 4 is +e3 = (0,0,1); vertex 0 is +e1 = (1,0,0).
  auto qo = build_quotient_map(octa, 4);
  REQUIRE(qo.ok);
  int ge = ridge_of(octa, {0, 4});
  REQUIRE(ge >= 0);
  auto r2 = ray_of_face(octa, qo.map, 4, ge);
  REQUIRE(r2.has_value());
  CHECK(same_direction(*r2, {Rat(1), Rat(0), Rat(-1)}));
}

TEST_CASE("4-cube square rays are nonzero and span outside lin(F)") {
  PLSurface hc = hypercube_surface();
  int c = center_of(hc, {0, 8});
  REQUIRE(c >= 0);
  auto qb = build_quotient_map(hc, c);
  REQUIRE(qb.ok);
  for (int g : hc.center_ridges[c]) {
    auto ray = ray_of_face(hc, qb.map, c, g);
    REQUIRE(ray.has_value());
    // Derived: the ridge's affine hull strictly exceeds the edge's.
    std::vector<VecN> edge_pts, ridge_pts;
    for (int v : hc.center_vertices[c]) edge_pts.push_back(hc.vertex_coords[v]);
    ridge_pts = edge_pts;
    for (int v : hc.ridge_vertices[g]) ridge_pts.push_back(hc.vertex_coords[v]);
    CHECK(affine_hull(ridge_pts).dim == affine_hull(edge_pts).dim + 1);
  }
}

TEST_CASE("every qualifying ridge vertex gives the same ray direction") {
  for (PLSurface s : {cube_surface(), cross_polytope_surface(3),
                      hypercube_surface(), simplex_surface(4)}) {
    auto view = make_view<Rat>(s);
    for (int c = 0; c < s.num_centers(); ++c) {
      auto qb = build_quotient_map(s, c);
      REQUIRE(qb.ok);
      for (int g : s.center_ridges[c]) {
        std::vector<Vec3R> images;
        for (int v : s.ridge_vertices[g]) {
          Vec3R img = quotient_project(qb.map, s.vertex_coords[v]);
          if (sign_of(img[0]) != 0 || sign_of(img[1]) != 0 ||
              sign_of(img[2]) != 0)
            images.push_back(img);
        }
        REQUIRE(!images.empty());
        for (size_t i = 1; i < images.size(); ++i)
          CHECK(same_direction(images[0], images[i]));
      }
    }
  }
}

TEST_CASE("equation-mode rays match vertex-mode rays up to positive scale") {
  for (PLSurface vm :
       {cube_surface(), cross_polytope_surface(3), simplex_surface(4)}) {
    PLSurface em = equations_only(vm);
    auto vview = make_view<Rat>(vm);
    auto eview = make_view<Rat>(em);
    for (int c = 0; c < vm.num_centers(); ++c) {
      auto qv = build_quotient_map_impl(vm, vview, c, ExactCtx{},
                                        QuotientPolicy::FastPathAllowed, nullptr);
      auto qe = build_quotient_map_impl(em, eview, c, ExactCtx{},
                                        QuotientPolicy::FastPathAllowed, nullptr);
      REQUIRE(qv.ok);
      REQUIRE(qe.ok);
      // Same affine hull of the center: the equation-mode point must project
      // to zero under the vertex-mode map.
      Vec3R z = quotient_project(qv.map, qe.map.center_point);
      CHECK((sign_of(z[0]) == 0 && sign_of(z[1]) == 0 && sign_of(z[2]) == 0));
      for (int g : vm.center_ridges[c]) {
        Vec3R rv, re;
        auto okv = ray_of_face_impl(vm, vview, qv.map, c, g, ExactCtx{}, &rv);
        auto oke = ray_of_face_impl(em, eview, qe.map, c, g, ExactCtx{}, &re);
        REQUIRE(okv.ok);
        REQUIRE(oke.ok);
        // Frames agree (same lexicographic rule and same lin(F)), so the
        // directions must match exactly up to positive scale.
        CHECK(same_direction(rv, re));
      }
    }
  }
}
