#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "plconvex/rng.hpp"
#include "plconvex/vec.hpp"

namespace plconvex {

/// One closed halfspace a·x >= b.
struct HalfSpace {
  VecN a;
  Rat b;
};

namespace detail {

struct SeidelProblem {
  std::vector<HalfSpace> rows;
  Rat box;  // |x_j| <= box for every remaining variable
};

// Substitute x_p = (b - sum_{j!=p} a_j x_j) / a_p into a row, dropping
// variable p.
inline HalfSpace eliminate_var(const HalfSpace& row, const HalfSpace& tight,
                               int p) {
  Rat f = row.a[p] / tight.a[p];
  HalfSpace out;
  out.a.reserve(row.a.size() - 1);
  for (size_t j = 0; j < row.a.size(); ++j) {
    if (static_cast<int>(j) == p) continue;
    out.a.push_back(row.a[j] - f * tight.a[j]);
  }
  out.b = row.b - f * tight.b;
  return out;
}

// Randomized incremental LP over the processed prefix; returns an optimum of
// minimize c·x over the intersection with the box, or nullopt if empty.
inline std::optional<VecN> seidel_rec(const SeidelProblem& prob, const VecN& c,
                                      uint64_t seed, int depth) {
  const int d = static_cast<int>(c.size());
  if (d == 1) {
    Rat lo = -prob.box, hi = prob.box;
    for (const auto& row : prob.rows) {
      int s = sign_of(row.a[0]);
      if (s == 0) {
        if (sign_of(row.b) > 0) return std::nullopt;
        continue;
      }
      Rat bound = row.b / row.a[0];
      if (s > 0) {
        if (bound > lo) lo = bound;
      } else {
        if (bound < hi) hi = bound;
      }
    }
    if (lo > hi) return std::nullopt;
    VecN x(1);
    x[0] = sign_of(c[0]) >= 0 ? lo : hi;
    return x;
  }

  std::vector<int> order(prob.rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng(mix_seed(seed, 0x5e1de1 + depth));
  rng.shuffle(order);

  VecN x(d);
  for (int j = 0; j < d; ++j) x[j] = sign_of(c[j]) >= 0 ? -prob.box : prob.box;

  for (size_t t = 0; t < order.size(); ++t) {
    const HalfSpace& h = prob.rows[order[t]];
    if (dot(h.a, x) >= h.b) continue;
    // The optimum of the first t+1 constraints is tight at h.
    int p = -1;
    for (int j = 0; j < d; ++j)
      if (sign_of(h.a[j]) != 0) {
        p = j;
        break;
      }
    if (p < 0) return std::nullopt;  // 0 >= positive
    SeidelProblem sub;
    sub.box = prob.box;
    sub.rows.reserve(t + 2);
    for (size_t u = 0; u < t; ++u)
      sub.rows.push_back(eliminate_var(prob.rows[order[u]], h, p));
    // Box bounds of the eliminated variable.
    for (int sgn : {1, -1}) {
      HalfSpace bound;
      bound.a.assign(d, Rat());
      bound.a[p] = sgn;
      bound.b = -prob.box;
      sub.rows.push_back(eliminate_var(bound, h, p));
    }
    VecN sub_c;
    Rat fc = c[p] / h.a[p];
    for (int j = 0; j < d; ++j) {
      if (j == p) continue;
      sub_c.push_back(c[j] - fc * h.a[j]);
    }
    auto sub_x = seidel_rec(sub, sub_c, mix_seed(seed, t + 1), depth + 1);
    if (!sub_x) return std::nullopt;
    VecN lifted(d);
    Rat acc = h.b;
    int jj = 0;
    for (int j = 0; j < d; ++j) {
      if (j == p) continue;
      lifted[j] = (*sub_x)[jj];
      acc -= h.a[j] * lifted[j];
      ++jj;
    }
    lifted[p] = acc / h.a[p];
    x = std::move(lifted);
  }
  return x;
}

}  // namespace detail

/// Exact feasibility of {x : a_i·x >= b_i}. Expected work linear in the
/// number of constraints for fixed dimension. Deterministic for a fixed seed.
inline std::optional<VecN> feasible_point(const std::vector<HalfSpace>& rows,
                                          int dim, uint64_t seed) {
  // Safe coordinate bound: if the system is feasible it has a solution whose
  // coordinates are Cramer ratios of integerised rows.
  mpz_class amax = 1;
  for (const auto& row : rows) {
    mpz_class l = row.b.get_den();
    for (const auto& v : row.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    auto consider = [&](const Rat& v) {
      mpz_class scaled = abs(v.get_num() * (l / v.get_den()));
      if (scaled > amax) amax = scaled;
    };
    for (const auto& v : row.a) consider(v);
    consider(row.b);
  }
  mpz_class m = 1;
  for (int i = 0; i < dim; ++i) m *= dim * amax;
  m += 1;

  detail::SeidelProblem prob;
  prob.rows = rows;
  prob.box = Rat(m);
  VecN c(dim, Rat(1));
  auto x = detail::seidel_rec(prob, c, seed, 0);
  if (!x) return std::nullopt;
  for (const auto& row : rows)
    if (dot(row.a, *x) < row.b)
      throw std::logic_error("feasible_point: candidate violates a constraint");
  return x;
}

}  // namespace plconvex
