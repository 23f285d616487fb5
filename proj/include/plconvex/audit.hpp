#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace plconvex {

/// Kinds of sign predicates the exact and float pipelines evaluate.
enum class Pred : int {
  Det3 = 0,   // 3x3 determinant signs (fan orientation workhorse)
  Cross2 = 1, // 2D turn / direction signs on projected polygons
  Dot = 2,    // inner products against a certificate functional
  DetN = 3,   // full-dimension determinants (complements, feasibility bases)
  Rank = 4,   // pivot tests inside rank / elimination routines
};
inline constexpr int kPredKinds = 5;

inline const char* pred_name(Pred p) {
  switch (p) {
    case Pred::Det3: return "det3";
    case Pred::Cross2: return "cross2";
    case Pred::Dot: return "dot";
    case Pred::DetN: return "detn";
    case Pred::Rank: return "rank";
  }
  return "?";
}

/// Invocation counts and static degree upper bounds, per predicate kind.
/// Degrees are upper bounds on the algebraic degree, in the original input
/// coordinates, of the polynomial whose sign the call decides.
struct PredicateAudit {
  struct Entry {
    uint64_t calls = 0;
    int max_degree = 0;
  };
  std::array<Entry, kPredKinds> entries{};

  void record(Pred p, int degree) {
    Entry& e = entries[static_cast<int>(p)];
    ++e.calls;
    if (degree > e.max_degree) e.max_degree = degree;
  }

  void merge(const PredicateAudit& o) {
    for (int i = 0; i < kPredKinds; ++i) {
      entries[i].calls += o.entries[i].calls;
      if (o.entries[i].max_degree > entries[i].max_degree)
        entries[i].max_degree = o.entries[i].max_degree;
    }
  }

  uint64_t total_calls() const {
    uint64_t n = 0;
    for (const auto& e : entries) n += e.calls;
    return n;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& e : entries)
      if (e.max_degree > d) d = e.max_degree;
    return d;
  }
};

}  // namespace plconvex
