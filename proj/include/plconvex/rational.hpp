#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plconvex {

/// Exact rational scalar. GMP keeps the value in lowest terms with a
/// positive denominator after every arithmetic operation.
using Rat = mpq_class;

inline int sign_of(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& x) { return x.get_d(); }

/// Exact dyadic expansion of a finite double (no rounding involved).
inline Rat rat_from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("non-finite coordinate");
  return Rat(d);
}

/// Accepted literals: optional sign, digits, then optionally "/digits" or
/// ".digits". No exponents.
inline Rat parse_rational(std::string_view s) {
  auto fail = [&] {
    throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'");
  };
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  size_t digits_begin = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digits_begin) fail();
  mpz_class intpart(std::string(s.substr(digits_begin, i - digits_begin)), 10);
  Rat value;
  if (i == s.size()) {
    value = Rat(intpart);
  } else if (s[i] == '/') {
    ++i;
    size_t den_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_begin || i != s.size()) fail();
    mpz_class den(std::string(s.substr(den_begin)), 10);
    if (den == 0) fail();
    value = Rat(intpart, den);
    value.canonicalize();
  } else if (s[i] == '.') {
    ++i;
    size_t frac_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == frac_begin || i != s.size()) fail();
    std::string frac(s.substr(frac_begin));
    mpz_class num = intpart;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    num *= scale;
    num += mpz_class(frac, 10);
    value = Rat(num, scale);
    value.canonicalize();
  } else {
    fail();
  }
  if (neg) value = -value;
  return value;
}

/// "p/q" for non-integers, plain integer otherwise.
inline std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Finite decimal if the denominator is of the form 2^a 5^b, else "p/q".
inline std::string rat_to_point_string(const Rat& x) {
  mpz_class den = x.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_even_p(den.get_mpz_t())) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return rat_to_string(x);
  unsigned long k = std::max(twos, fives);
  if (k == 0) return x.get_num().get_str();
  mpz_class pow10, scale2, scale5;
  mpz_ui_pow_ui(scale2.get_mpz_t(), 2, k - twos);
  mpz_ui_pow_ui(scale5.get_mpz_t(), 5, k - fives);
  mpz_class digits = x.get_num() * scale2 * scale5;
  bool neg = digits < 0;
  if (neg) digits = -digits;
  std::string ds = digits.get_str();
  if (ds.size() <= k) ds.insert(0, k + 1 - ds.size(), '0');
  ds.insert(ds.size() - k, ".");
  return (neg ? "-" : "") + ds;
}

}  // namespace plconvex
