#include <catch2/catch_amalgamated.hpp>

#include "plconvex/rng.hpp"
#include "plconvex/seidel.hpp"

using namespace plconvex;

namespace {

std::vector<HalfSpace> random_system(Rng& rng, int dim, int count) {
  std::vector<HalfSpace> rows;
  for (int i = 0; i < count; ++i) {
    HalfSpace h;
    h.a.resize(dim);
    for (int j = 0; j < dim; ++j) h.a[j] = Rat(rng.in_range(-7, 7));
    h.b = Rat(rng.in_range(-7, 7));
    rows.push_back(std::move(h));
  }
  return rows;
}

}  // namespace

TEST_CASE("feasible systems built around a known point are found feasible") {
  Rng rng(2024);
  for (int dim : {2, 3, 4}) {
    for (int t = 0; t < 40; ++t) {
      VecN star(dim);
      for (int j = 0; j < dim; ++j) star[j] = Rat(rng.in_range(-5, 5));
      auto rows = random_system(rng, dim, 3 * dim + 5);
      for (auto& h : rows) {
        // Flip rows so that `star` satisfies all of them.
        if (dot(h.a, star) < h.b) {
          for (auto& v : h.a) v = -v;
          h.b = -h.b;
        }
      }
      auto x = feasible_point(rows, dim, rng.next());
      REQUIRE(x.has_value());
      for (const auto& h : rows) CHECK(dot(h.a, *x) >= h.b);
    }
  }
}

TEST_CASE("opposite strict constraints are infeasible") {
  // v·x >= 1 together with (-v)·x >= 1 can never hold.
  std::vector<HalfSpace> rows = {
      {{Rat(1), Rat(0), Rat(0)}, Rat(1)},
      {{Rat(-1), Rat(0), Rat(0)}, Rat(1)},
      {{Rat(0), Rat(1), Rat(0)}, Rat(1)},
  };
  CHECK(!feasible_point(rows, 3, 1).has_value());
}

TEST_CASE("positive span infeasibility (Gordan certificate)") {
  // e1 + e2 + e3 rays plus their negative sum: no w has w·v >= 1 on all.
  std::vector<HalfSpace> rows = {
      {{Rat(1), Rat(0), Rat(0)}, Rat(1)},
      {{Rat(0), Rat(1), Rat(0)}, Rat(1)},
      {{Rat(0), Rat(0), Rat(1)}, Rat(1)},
      {{Rat(-1), Rat(-1), Rat(-1)}, Rat(1)},
  };
  CHECK(!feasible_point(rows, 3, 9).has_value());
}

TEST_CASE("verdict is stable across seeds") {
  Rng rng(77);
  for (int t = 0; t < 30; ++t) {
    auto rows = random_system(rng, 3, 12);
    bool f0 = feasible_point(rows, 3, 100 + t).has_value();
    bool f1 = feasible_point(rows, 3, 900 + t).has_value();
    bool f2 = feasible_point(rows, 3, 31337 * t + 1).has_value();
    CHECK(f0 == f1);
    CHECK(f0 == f2);
  }
}

TEST_CASE("degenerate rows are handled") {
  std::vector<HalfSpace> rows = {
      {{Rat(0), Rat(0), Rat(0)}, Rat(0)},   // 0 >= 0, vacuous
      {{Rat(0), Rat(0), Rat(0)}, Rat(-1)},  // 0 >= -1, vacuous
      {{Rat(1), Rat(1), Rat(1)}, Rat(3)},
  };
  auto x = feasible_point(rows, 3, 5);
  REQUIRE(x.has_value());
  CHECK(dot(rows[2].a, *x) >= Rat(3));

  rows.push_back({{Rat(0), Rat(0), Rat(0)}, Rat(1)});  // 0 >= 1, absurd
  CHECK(!feasible_point(rows, 3, 5).has_value());
}
