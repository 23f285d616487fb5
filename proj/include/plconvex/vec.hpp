#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <vector>

#include "plconvex/rational.hpp"

namespace plconvex {

using VecN = std::vector<Rat>;
using Vec3R = std::array<Rat, 3>;
using Vec2R = std::array<Rat, 2>;

template <class S>
using Vec3 = std::array<S, 3>;
template <class S>
using Vec2 = std::array<S, 2>;
template <class S>
using Matrix = std::vector<std::vector<S>>;

inline Rat abs_val(const Rat& x) { return abs(x); }
inline double abs_val(double x) { return std::abs(x); }
inline bool exactly_zero(const Rat& x) { return sign_of(x) == 0; }
inline bool exactly_zero(double x) { return x == 0.0; }

/// Zero-test policy for exact elimination.
struct ExactCtx {
  bool is_zero(const Rat& x, const Rat&) const { return sign_of(x) == 0; }
};

/// Zero-test policy that flushes |x| <= eps * scale to zero and remembers
/// whether any flushed value was not an exact zero.
struct FloatCtx {
  double eps = 0.0;
  mutable bool tolerant_zero_used = false;
  bool is_zero(double x, double scale) const {
    if (x == 0.0) return true;
    if (std::abs(x) <= eps * (scale > 1.0 ? scale : 1.0)) {
      tolerant_zero_used = true;
      return true;
    }
    return false;
  }
};

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
  S acc = S();
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
S dot3(const Vec3<S>& a, const Vec3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
Vec3<S> cross3(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

template <class S>
S det3_value(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c) {
  return dot3(a, cross3(b, c));
}

template <class S>
S cross2_value(const Vec2<S>& a, const Vec2<S>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

template <class S>
std::vector<S> vsub(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
std::vector<S> vadd(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
std::vector<S> vscale(const S& c, const std::vector<S>& a) {
  std::vector<S> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline std::vector<double> to_double_vec(const VecN& v) {
  std::vector<double> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

template <class S>
S matrix_scale(const Matrix<S>& m) {
  S best = S();
  for (const auto& row : m)
    for (const auto& x : row)
      if (abs_val(x) > best) best = abs_val(x);
  return best;
}

namespace detail {

// Row echelon elimination in place. Returns pivot (row,col) pairs.
template <class S, class Ctx>
std::vector<std::pair<int, int>> echelon(Matrix<S>& m, const Ctx& ctx) {
  std::vector<std::pair<int, int>> pivots;
  if (m.empty()) return pivots;
  const S scale = matrix_scale(m);
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    for (int i = r; i < rows; ++i) {
      if (ctx.is_zero(m[i][c], scale)) continue;
      if (best < 0 || abs_val(m[i][c]) > abs_val(m[best][c])) best = i;
    }
    if (best < 0) continue;
    std::swap(m[r], m[best]);
    for (int i = r + 1; i < rows; ++i) {
      if (ctx.is_zero(m[i][c], scale)) {
        m[i][c] = S();
        continue;
      }
      S f = m[i][c] / m[r][c];
      m[i][c] = S();
      for (int j = c + 1; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

template <class S, class Ctx = ExactCtx>
int matrix_rank(Matrix<S> m, const Ctx& ctx = Ctx()) {
  return static_cast<int>(detail::echelon(m, ctx).size());
}

template <class S, class Ctx = ExactCtx>
S det_value(Matrix<S> m, const Ctx& ctx = Ctx()) {
  const int n = static_cast<int>(m.size());
  // Track row swaps for the sign.
  const S scale = matrix_scale(m);
  S det = S() + 1;
  for (int c = 0; c < n; ++c) {
    int best = -1;
    for (int i = c; i < n; ++i) {
      if (ctx.is_zero(m[i][c], scale)) continue;
      if (best < 0 || abs_val(m[i][c]) > abs_val(m[best][c])) best = i;
    }
    if (best < 0) return S();
    if (best != c) {
      std::swap(m[c], m[best]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (ctx.is_zero(m[i][c], scale)) continue;
      S f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Unique solution of a square system, or nullopt when singular.
template <class S, class Ctx = ExactCtx>
std::optional<std::vector<S>> solve_square(Matrix<S> a, std::vector<S> b,
                                           const Ctx& ctx = Ctx()) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = detail::echelon(a, ctx);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  for (const auto& [r, c] : pivots)
    if (c >= n) return std::nullopt;
  std::vector<S> x(n, S());
  for (int k = n - 1; k >= 0; --k) {
    auto [r, c] = pivots[k];
    S acc = a[r][n];
    for (int j = c + 1; j < n; ++j) acc -= a[r][j] * x[j];
    x[c] = acc / a[r][c];
  }
  return x;
}

/// Basis of {x : row·x = 0 for all rows}.
template <class S, class Ctx = ExactCtx>
Matrix<S> nullspace(Matrix<S> m, int cols, const Ctx& ctx = Ctx()) {
  auto pivots = detail::echelon(m, ctx);
  std::vector<int> pivot_col(pivots.size());
  std::vector<bool> is_pivot(cols, false);
  for (size_t k = 0; k < pivots.size(); ++k) {
    pivot_col[k] = pivots[k].second;
    is_pivot[pivots[k].second] = true;
  }
  Matrix<S> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> x(cols, S());
    x[free] = S() + 1;
    for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
      auto [r, c] = pivots[k];
      S acc = S();
      for (int j = c + 1; j < cols; ++j) acc -= m[r][j] * x[j];
      x[c] = acc / m[r][c];
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

struct AffineHull {
  int dim = 0;
  Matrix<Rat> basis;  // direction vectors (differences of input points)
};

/// Exact affine rank and a spanning set of the direction space. The basis
/// vectors are original point differences (degree 1 in the inputs).
inline AffineHull affine_hull(const std::vector<VecN>& points) {
  AffineHull h;
  if (points.empty()) return h;
  const int cols = static_cast<int>(points[0].size());
  Matrix<Rat> reduced;
  std::vector<int> pivot_cols;
  for (size_t i = 1; i < points.size(); ++i) {
    VecN diff = vsub(points[i], points[0]);
    VecN row = diff;
    for (size_t k = 0; k < reduced.size(); ++k) {
      int pc = pivot_cols[k];
      if (sign_of(row[pc]) == 0) continue;
      Rat f = row[pc] / reduced[k][pc];
      for (int j = 0; j < cols; ++j) row[j] -= f * reduced[k][j];
    }
    int pc = -1;
    for (int j = 0; j < cols; ++j)
      if (sign_of(row[j]) != 0) {
        pc = j;
        break;
      }
    if (pc < 0) continue;
    reduced.push_back(std::move(row));
    pivot_cols.push_back(pc);
    h.basis.push_back(std::move(diff));
    if (static_cast<int>(reduced.size()) == cols) break;
  }
  h.dim = static_cast<int>(h.basis.size());
  return h;
}

/// Solution set {x : a_i · x = b_i} as point + direction basis, or nullopt
/// when inconsistent.
template <class S, class Ctx = ExactCtx>
std::optional<std::pair<std::vector<S>, Matrix<S>>> solve_affine(
    const Matrix<S>& lhs, const std::vector<S>& rhs, int cols,
    const Ctx& ctx = Ctx()) {
  Matrix<S> aug = lhs;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
  auto pivots = detail::echelon(aug, ctx);
  for (const auto& [r, c] : pivots)
    if (c == cols) return std::nullopt;  // 0 = nonzero row
  std::vector<S> x(cols, S());
  for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
    auto [r, c] = pivots[k];
    S acc = aug[r][cols];
    for (int j = c + 1; j < cols; ++j) acc -= aug[r][j] * x[j];
    x[c] = acc / aug[r][c];
  }
  Matrix<S> lhs_copy = lhs;
  Matrix<S> dirs = nullspace(std::move(lhs_copy), cols, ctx);
  return std::make_pair(std::move(x), std::move(dirs));
}

}  // namespace plconvex
