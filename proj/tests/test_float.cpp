#include <catch2/catch_amalgamated.hpp>

#include "plconvex/generator.hpp"
#include "plconvex/verifier.hpp"

using namespace plconvex;

TEST_CASE("float_sign thresholds") {
  CHECK(float_sign(1.0, 1e-9) == SignClass::Positive);
  CHECK(float_sign(-1.0, 1e-9) == SignClass::Negative);
  CHECK(float_sign(0.0, 1e-9) == SignClass::Zero);
  // x = 5e-10 with kappa = 1 and eps = 1e-9 sits inside the zero band.
  CHECK(float_sign(5e-10, 1e-9, 1.0) == SignClass::Zero);
  CHECK(float_sign(2e-9, 1e-9, 1.0) == SignClass::Positive);
  // The band is relative to the term-magnitude scale kappa.
  CHECK(float_sign(0.5, 1e-9, 1e9) == SignClass::Zero);
  CHECK(float_sign(1e-12, 1e-9, 1e-6) == SignClass::Positive);
  // eps = 0 reduces to the exact sign of the double.
  CHECK(float_sign(1e-300, 0.0) == SignClass::Positive);
  CHECK(float_sign(0.0, 0.0) == SignClass::Zero);
}

TEST_CASE("float mode matches exact mode on dyadic fixtures with eps = 0") {
  // All coordinates and intermediate predicate values are exact in doubles.
  std::vector<PLSurface> fixtures = {cube_surface(), cross_polytope_surface(3),
                                     simplex_surface(4), hypercube_surface()};
  // A dyadic dent: corner to (3/4, 3/4, 3/4).
  {
    PLSurface cube = cube_surface();
    int dented = -1;
    fixtures.push_back(generate_dented(cube, Rat(1, 2), 4, &dented));
  }
  for (const auto& s : fixtures) {
    Report exact = check_convexity(s, Mode::exact());
    Report fl = check_convexity(s, Mode::floating(0.0));
    CHECK(verdict_name(fl.verdict) == verdict_name(exact.verdict));
    if (exact.witness_face)
      CHECK(fl.witness_face->index == exact.witness_face->index);
  }
}

TEST_CASE("float mode verdicts at eps = 1e-9 on the standard fixtures") {
  CHECK(check_convexity(cube_surface(), Mode::floating(1e-9)).verdict ==
        Verdict::Convex);
  CHECK(check_convexity(generate({GenSpec::Family::RandomHull, 3, 80, 5}),
                        Mode::floating(1e-9))
            .verdict == Verdict::Convex);
  PLSurface dent = generate_dented(
      generate({GenSpec::Family::RandomHull, 3, 60, 6}), Rat(2, 5), 6);
  CHECK(check_convexity(dent, Mode::floating(1e-9)).verdict ==
        Verdict::NotConvex);
}

TEST_CASE("tolerance absorbs sub-threshold facet warp") {
  // Perturb one cube corner by 2^-44 in z: the quad facets are no longer
  // planar, so exact mode must reject the realization, while float mode at
  // eps = 1e-9 treats the surface as convex within tolerance.
  PLSurface s = cube_surface();
  s.vertex_coords[7][2] += Rat(1, mpz_class(1) << 44);
  CHECK(check_convexity(s, Mode::exact()).verdict == Verdict::Invalid);
  Report fl = check_convexity(s, Mode::floating(1e-9));
  CHECK(fl.verdict == Verdict::Convex);
}

TEST_CASE("tiny dents below tolerance read as convex in float mode") {
  // A cube dent of dyadic depth 2^-44 folds the quad diagonals immediately:
  // exactly NotConvex, but far inside the approximate-convexity tolerance,
  // so float mode must not report NotConvex.
  PLSurface s = generate_dented(cube_surface(), Rat(1, mpz_class(1) << 44), 9);
  CHECK(check_convexity(s, Mode::exact()).verdict == Verdict::NotConvex);
  Report fl = check_convexity(s, Mode::floating(1e-9));
  CHECK(fl.verdict != Verdict::NotConvex);
  CHECK(fl.verdict != Verdict::Invalid);
}

TEST_CASE("float mode stays deterministic under parallelism") {
  PLSurface dent = generate_dented(
      generate({GenSpec::Family::RandomHull, 3, 50, 8}), Rat(2, 5), 8);
  Mode m = Mode::floating(1e-9, 42);
  Report serial = check_convexity(dent, m);
  for (int jobs : {2, 8})
    CHECK(report_signature(check_convexity_parallel(dent, m, jobs)) ==
          report_signature(serial));
}
