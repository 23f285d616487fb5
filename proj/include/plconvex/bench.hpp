#pragma once

#include <chrono>
#include <cmath>
#include <ostream>
#include <vector>

#include "plconvex/generator.hpp"
#include "plconvex/verifier.hpp"

namespace plconvex {

struct BenchRow {
  int num_points = 0;
  PLSurface::Counts counts;
  const char* verdict = "";
  double elapsed_ms = 0.0;           // serial check
  double parallel_ms = 0.0;          // populated when jobs > 1
  double speedup = 0.0;              // serial / parallel
  int jobs = 1;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double slope = 0.0;  // log-log fit of serial time vs f_{n-3,n-2}
};

namespace detail {

template <class F>
double time_ms(F&& body, const char** verdict) {
  using clock = std::chrono::steady_clock;
  int reps = 0;
  double total = 0.0;
  // Repeat small runs until the measurement is comfortably above timer noise.
  while (reps < 1 || (total < 100.0 && reps < 64)) {
    auto t0 = clock::now();
    *verdict = body();
    total += std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    ++reps;
  }
  return total / reps;
}

}  // namespace detail

/// Seeded random-hull instances of the given sizes, timed through
/// check_convexity. The fitted slope speaks to the O(f_{n-3,n-2}) claim.
inline BenchResult run_bench(const std::vector<int>& sizes, uint64_t seed,
                             const Mode& mode, int jobs) {
  BenchResult out;
  for (size_t i = 0; i < sizes.size(); ++i) {
    GenSpec spec{GenSpec::Family::RandomHull, 3, sizes[i], mix_seed(seed, i)};
    PLSurface s = generate(spec);
    BenchRow row;
    row.num_points = sizes[i];
    row.counts = s.counts();
    row.jobs = jobs;
    row.elapsed_ms = detail::time_ms(
        [&] { return verdict_name(check_convexity(s, mode).verdict); },
        &row.verdict);
    if (jobs > 1) {
      const char* v2 = "";
      row.parallel_ms = detail::time_ms(
          [&] {
            return verdict_name(check_convexity_parallel(s, mode, jobs).verdict);
          },
          &v2);
      row.speedup = row.parallel_ms > 0 ? row.elapsed_ms / row.parallel_ms : 0;
    }
    out.rows.push_back(row);
  }
  // Least-squares slope of ln(time) against ln(f_{n-3,n-2}).
  if (out.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : out.rows) {
      if (r.elapsed_ms <= 0 || r.counts.center_ridge <= 0) continue;
      double x = std::log(static_cast<double>(r.counts.center_ridge));
      double y = std::log(r.elapsed_ms);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 2 && n * sxx - sx * sx != 0)
      out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

inline void bench_csv(const BenchResult& b, const Mode& mode,
                      std::ostream& out) {
  out << "num_points,f0,f_n3,f_n2,f_n1,f_n3_n2,f_n2_n1,verdict,elapsed_ms,"
         "mode,jobs,parallel_ms,speedup\n";
  const char* mode_name = mode.kind == Mode::Kind::Exact ? "exact" : "float";
  for (const auto& r : b.rows) {
    out << r.num_points << "," << r.counts.f0 << "," << r.counts.f_center << ","
        << r.counts.f_ridge << "," << r.counts.f_facet << ","
        << r.counts.center_ridge << "," << r.counts.ridge_facet << ","
        << r.verdict << "," << r.elapsed_ms << "," << mode_name << ","
        << r.jobs << "," << r.parallel_ms << "," << r.speedup << "\n";
  }
  out << "# log-log slope of elapsed_ms vs f_n3_n2: " << b.slope << "\n";
}

}  // namespace plconvex
