#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "plconvex/audit.hpp"
#include "plconvex/seidel.hpp"
#include "plconvex/vec.hpp"

namespace plconvex {

enum class SignClass : int { Negative = -1, Zero = 0, Positive = 1, Uncertain = 2 };

/// Tolerant sign of a floating-point predicate value. kappa is the per-call
/// magnitude scale of the evaluated expression (sum of the absolute values of
/// its terms); values inside the eps*kappa band count as zero, everything
/// else gets its plain sign. The band scales with kappa, so the test is
/// invariant under rescaling the predicate's inputs. Uncertain is reserved
/// for non-finite evaluations.
inline SignClass float_sign(double x, double eps, double kappa = 1.0) {
  if (!std::isfinite(x)) return SignClass::Uncertain;
  if (std::abs(x) <= eps * kappa) return SignClass::Zero;
  return x > 0 ? SignClass::Positive : SignClass::Negative;
}

/// Sign plus a confidence bit. `confident == false` means the zero came from
/// tolerance flushing, so a 0-vs-nonzero distinction is not trustworthy.
struct TriSign {
  int s = 0;
  bool confident = true;
};

/// Static degree bounds for the predicates of one star check; set by the
/// verifier according to the quotient mode in effect. A ray built from plain
/// coordinate differences has entry degree 1 and orientation tests of degree
/// 3; a ray that went through a nontrivial elimination carries the reduced
/// degree of the equivalent full-dimension determinant instead.
struct DegreeContext {
  int entry = 1;    // degree of one ray coordinate
  int det3 = 3;     // ray orientation tests (also polygon turns, coplanarity)
  int dot = 1;      // dots against an externally proposed certificate
  int dot_sum = 3;  // dots against the sum-of-crosses certificate
  int detn = 3;     // full-dimension determinants (complement tests, bases)
};

namespace detail {
inline double kappa_det3(const Vec3<double>& a, const Vec3<double>& b,
                         const Vec3<double>& c) {
  return std::abs(a[0] * b[1] * c[2]) + std::abs(a[0] * b[2] * c[1]) +
         std::abs(a[1] * b[0] * c[2]) + std::abs(a[1] * b[2] * c[0]) +
         std::abs(a[2] * b[0] * c[1]) + std::abs(a[2] * b[1] * c[0]);
}
inline double kappa_dot3(const Vec3<double>& a, const Vec3<double>& b) {
  return std::abs(a[0] * b[0]) + std::abs(a[1] * b[1]) + std::abs(a[2] * b[2]);
}
inline double kappa_cross2(const Vec2<double>& a, const Vec2<double>& b) {
  return std::abs(a[0] * b[1]) + std::abs(a[1] * b[0]);
}
}  // namespace detail

class ExactKernel {
 public:
  using Scalar = Rat;

  PredicateAudit* audit = nullptr;
  DegreeContext deg;
  uint64_t seed = 0;

  explicit ExactKernel(PredicateAudit* a = nullptr, uint64_t s = 0)
      : audit(a), seed(s) {}

  Scalar from_rat(const Rat& x) const { return x; }
  static Scalar from_double(double x) { return rat_from_double(x); }
  static double approx(const Scalar& x) { return to_double(x); }
  static bool is_exact() { return true; }

  TriSign sign_det3(const Vec3R& a, const Vec3R& b, const Vec3R& c) const {
    record(Pred::Det3, deg.det3);
    return {sign_of(det3_value(a, b, c)), true};
  }
  TriSign sign_dot3(const Vec3R& a, const Vec3R& b, int degree) const {
    record(Pred::Dot, degree);
    return {sign_of(dot3(a, b)), true};
  }
  TriSign sign_cross2(const Vec2R& a, const Vec2R& b) const {
    record(Pred::Cross2, deg.det3);
    return {sign_of(cross2_value(a, b)), true};
  }
  /// Sign of an already-evaluated quantity; `scale` is ignored exactly.
  TriSign sign_value(const Rat& x, const Rat&, Pred p, int degree) const {
    record(p, degree);
    return {sign_of(x), true};
  }

  std::optional<Vec3R> feasible_positive(const std::vector<Vec3R>& rays) const {
    std::vector<HalfSpace> rows;
    rows.reserve(rays.size());
    for (const auto& r : rays)
      rows.push_back({VecN{r[0], r[1], r[2]}, Rat(1)});
    auto w = feasible_point(rows, 3, seed);
    if (!w) return std::nullopt;
    return Vec3R{(*w)[0], (*w)[1], (*w)[2]};
  }

  void record(Pred p, int degree) const {
    if (audit) audit->record(p, degree);
  }
};

class FloatKernel {
 public:
  using Scalar = double;

  PredicateAudit* audit = nullptr;
  DegreeContext deg;
  uint64_t seed = 0;
  double eps = 0.0;

  FloatKernel(double eps_, PredicateAudit* a = nullptr, uint64_t s = 0)
      : audit(a), seed(s), eps(eps_) {}

  Scalar from_rat(const Rat& x) const { return to_double(x); }
  static Scalar from_double(double x) { return x; }
  static double approx(const Scalar& x) { return x; }
  static bool is_exact() { return false; }

  TriSign sign_det3(const Vec3<double>& a, const Vec3<double>& b,
                    const Vec3<double>& c) const {
    record(Pred::Det3, deg.det3);
    return classify(det3_value(a, b, c), detail::kappa_det3(a, b, c));
  }
  TriSign sign_dot3(const Vec3<double>& a, const Vec3<double>& b,
                    int degree) const {
    record(Pred::Dot, degree);
    return classify(dot3(a, b), detail::kappa_dot3(a, b));
  }
  TriSign sign_cross2(const Vec2<double>& a, const Vec2<double>& b) const {
    record(Pred::Cross2, deg.det3);
    return classify(cross2_value(a, b), detail::kappa_cross2(a, b));
  }
  TriSign sign_value(double x, double scale, Pred p, int degree) const {
    record(p, degree);
    return classify(x, scale);
  }

  std::optional<Vec3<double>> feasible_positive(
      const std::vector<Vec3<double>>& rays) const {
    // Dyadic doubles convert exactly; the search itself stays exact.
    std::vector<HalfSpace> rows;
    rows.reserve(rays.size());
    for (const auto& r : rays)
      rows.push_back({VecN{rat_from_double(r[0]), rat_from_double(r[1]),
                           rat_from_double(r[2])},
                      Rat(1)});
    auto w = feasible_point(rows, 3, seed);
    if (!w) return std::nullopt;
    return Vec3<double>{to_double((*w)[0]), to_double((*w)[1]),
                        to_double((*w)[2])};
  }

  TriSign classify(double v, double kappa) const {
    switch (float_sign(v, eps, kappa)) {
      case SignClass::Positive: return {1, true};
      case SignClass::Negative: return {-1, true};
      case SignClass::Zero: return {0, v == 0.0};
      case SignClass::Uncertain: return {0, false};
    }
    return {0, false};
  }

  void record(Pred p, int degree) const {
    if (audit) audit->record(p, degree);
  }
};

}  // namespace plconvex
