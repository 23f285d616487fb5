#include <catch2/catch_amalgamated.hpp>

#include "plconvex/rational.hpp"
#include "plconvex/rng.hpp"

using namespace plconvex;

TEST_CASE("rational literals parse losslessly") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-3/4") == Rat(-3, 4));
  CHECK(parse_rational("+12") == Rat(12));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-1.5") == Rat(-3, 2));
  CHECK(parse_rational("000.125") == Rat(1, 8));
  CHECK(parse_rational("6/4") == Rat(3, 2));  // canonicalized
}

TEST_CASE("rational literal rejects") {
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1e5"));
  CHECK_THROWS(parse_rational("1/"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("."));
  CHECK_THROWS(parse_rational("2."));
  CHECK_THROWS(parse_rational("--3"));
  CHECK_THROWS(parse_rational("1/2/3"));
}

TEST_CASE("doubles convert by exact dyadic expansion") {
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-0.75) == Rat(-3, 4));
  // 0.1 is not representable; the dyadic expansion is exact for the double.
  Rat tenth = rat_from_double(0.1);
  CHECK(tenth != Rat(1, 10));
  CHECK(to_double(tenth) == 0.1);
}

TEST_CASE("invariants: positive denominator, lowest terms") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    Rat a(rng.in_range(-50, 50), rng.in_range(1, 30));
    a.canonicalize();
    Rat b(rng.in_range(-50, 50), rng.in_range(1, 30));
    b.canonicalize();
    Rat c = a * b - a / Rat(3) + b;
    CHECK(c.get_den() > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
    CHECK(g == 1);
  }
}

TEST_CASE("string round trips") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Rat a(rng.in_range(-1000, 1000), rng.in_range(1, 999));
    a.canonicalize();
    CHECK(parse_rational(rat_to_string(a)) == a);
    CHECK(parse_rational(rat_to_point_string(a)) == a);
  }
  CHECK(rat_to_point_string(Rat(1, 4)) == "0.25");
  CHECK(rat_to_point_string(Rat(-3, 2)) == "-1.5");
  CHECK(rat_to_point_string(Rat(1, 3)) == "1/3");
  CHECK(rat_to_point_string(Rat(7)) == "7");
  CHECK(rat_to_point_string(Rat(2, 5)) == "0.4");
}
