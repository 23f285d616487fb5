#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "plconvex/fan.hpp"
#include "plconvex/quotient.hpp"
#include "plconvex/rng.hpp"
#include "plconvex/validate.hpp"

namespace plconvex {

struct Mode {
  enum class Kind { Exact, Float };
  Kind kind = Kind::Exact;
  double eps = 1e-9;  // Float only; eps = 0 degenerates to exact double signs
  uint64_t seed = 0;
  QuotientPolicy quotient_policy = QuotientPolicy::FastPathAllowed;

  static Mode exact(uint64_t seed = 0) { return {Kind::Exact, 0.0, seed, {}}; }
  static Mode floating(double eps, uint64_t seed = 0) {
    return {Kind::Float, eps, seed, {}};
  }
};

enum class Verdict { Convex, NotConvex, Invalid, Uncertain };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Convex: return "Convex";
    case Verdict::NotConvex: return "NotConvex";
    case Verdict::Invalid: return "Invalid";
    case Verdict::Uncertain: return "Uncertain";
  }
  return "?";
}

struct Report {
  Verdict verdict = Verdict::Convex;
  std::optional<FaceId> witness_face;  // present iff NotConvex or Invalid
  FanVerdict witness_fan;              // meaningful for star failures
  std::string reason;                  // machine-readable failure reason
  PLSurface::Counts counts;
  PredicateAudit audit;
  double elapsed_ms = 0.0;
};

namespace detail {

struct FaceOutcome {
  bool failed = false;
  bool uncertain = false;
  FanVerdict fan;
  std::string reason;
  PredicateAudit audit;
};

template <class S>
DegreeContext degrees_for(const QuotientMapT<S>& q, int n, bool equation_mode) {
  DegreeContext d;
  if (equation_mode) {
    d.entry = n;
    d.det3 = 3 * n;
    d.dot = n;
    d.dot_sum = 3 * n;
    d.detn = n;
    return d;
  }
  if (n == 3 ||
      (q.mode == QuotientMode::CoordinateSubspace && q.axis_aligned)) {
    d.entry = 1;
    d.det3 = 3;
    d.dot = 1;
    d.dot_sum = 3;
    d.detn = std::max(n - 3, 1);
    return d;
  }
  d.entry = n - 2;
  d.det3 = n;
  d.dot = n - 2;
  d.dot_sum = n;
  d.detn = n;
  return d;
}

// Is the facet's cell locally salient (angle < pi) at the center face? The
// fan model reads each cell as the minor cone between its two rays, which is
// only faithful for salient corners; reflex cells mean the surface is not
// locally convex there. Returns +1 salient/indifferent, -1 reflex, 0 when the
// data cannot decide (skipped, documented limitation for n >= 4 equation
// mode and non-convex high-dimensional cells).
template <class K, class Ctx>
int cell_salience(const PLSurface& s,
                  const RealizationView<typename K::Scalar>& view,
                  const QuotientMapT<typename K::Scalar>& qm, int center,
                  int facet, const Vec3<typename K::Scalar>& r1,
                  const Vec3<typename K::Scalar>& r2, const K& k,
                  const Ctx& ctx, bool* uncertain) {
  using S = typename K::Scalar;
  const bool vertex_mode = !view.coords.empty();
  if (vertex_mode &&
      static_cast<int>(s.facet_vertices[facet].size()) == s.ambient)
    return 1;  // simplex cells are convex, hence salient
  if (!vertex_mode && s.ambient != 3) return 1;  // not recoverable; skip

  // Solved positions of the facet's boundary centers (equation mode).
  std::map<int, std::vector<S>> solved;
  auto center_pos = [&](int c) -> const std::vector<S>* {
    auto it = solved.find(c);
    if (it != solved.end()) return it->second.empty() ? nullptr : &it->second;
    Matrix<S> lhs;
    std::vector<S> rhs;
    for (int t : facets_of_center(s, c)) {
      lhs.push_back(view.normals[t]);
      rhs.push_back(view.offsets[t]);
    }
    auto sol = solve_affine(lhs, rhs, s.ambient, ctx);
    auto& slot = solved[c];
    if (sol && sol->second.empty()) slot = sol->first;
    return slot.empty() ? nullptr : &slot;
  };

  std::vector<std::vector<S>> pts;
  std::vector<int> labels;  // vertex ids (vertex mode) or center ids
  if (vertex_mode) {
    for (int v : s.facet_vertices[facet]) {
      pts.push_back(view.coords[v]);
      labels.push_back(v);
    }
  } else {
    std::vector<int> cs;
    for (int g : s.facet_ridges[facet])
      for (int c : s.ridge_centers[g]) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    for (int c : cs) {
      const auto* p = center_pos(c);
      if (!p) return 0;
      pts.push_back(*p);
      labels.push_back(c);
    }
  }

  // Weak containment of the projected cell in cone(r1, r2): exact salience
  // for convex cells.
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  int a = 0, b = 1;
  S scale = S();
  for (int j = 0; j < 3; ++j) {
    if (abs_val(r1[j]) > scale) scale = abs_val(r1[j]);
    if (abs_val(r2[j]) > scale) scale = abs_val(r2[j]);
  }
  S d = S();
  for (const auto& pr : pairs) {
    Vec2<S> u = {r1[pr[0]], r1[pr[1]]}, v = {r2[pr[0]], r2[pr[1]]};
    S det = cross2_value(u, v);
    if (k.sign_value(det, scale * scale, Pred::Rank, 2 * k.deg.entry).s != 0) {
      a = pr[0];
      b = pr[1];
      d = det;
      break;
    }
  }
  int sd = k.sign_value(d, scale * scale, Pred::Rank, 2 * k.deg.entry).s;
  bool inside = true;
  for (const auto& p : pts) {
    Vec3<S> img = quotient_project_impl(qm, p, ctx);
    Vec2<S> q = {img[a], img[b]};
    TriSign sa = k.sign_value(cross2_value(q, Vec2<S>{r2[a], r2[b]}),
                              scale * scale, Pred::Cross2, 2 * k.deg.entry);
    TriSign sb = k.sign_value(cross2_value(Vec2<S>{r1[a], r1[b]}, q),
                              scale * scale, Pred::Cross2, 2 * k.deg.entry);
    if (uncertain && (!sa.confident || !sb.confident)) *uncertain = true;
    if (sa.s * sd < 0 || sb.s * sd < 0) {
      inside = false;
      break;
    }
  }
  if (inside) return 1;
  if (s.ambient != 3) return -1;  // conservative for higher dimensions

  // Exact polygon-cycle test: orientation of the cell versus the turn at the
  // center vertex decides salient versus reflex for any simple polygon cell.
  std::map<int, std::vector<int>> adj;
  for (int g : s.facet_ridges[facet]) {
    const auto& ends = vertex_mode ? s.ridge_vertices[g] : s.ridge_centers[g];
    if (ends.size() != 2) return 0;
    adj[ends[0]].push_back(ends[1]);
    adj[ends[1]].push_back(ends[0]);
  }
  int target = vertex_mode ? s.center_vertices[center][0] : center;
  std::vector<int> cycle;
  int start = adj.begin()->first, prev = -1, cur = start;
  for (;;) {
    cycle.push_back(cur);
    auto it = adj.find(cur);
    if (it == adj.end() || it->second.size() != 2) return 0;
    int nxt = it->second[0] == prev ? it->second[1] : it->second[0];
    prev = cur;
    cur = nxt;
    if (cur == start) break;
    if (cycle.size() > adj.size()) return 0;
  }
  std::map<int, std::vector<S>> pos;
  for (size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = pts[i];
  auto at = std::find(cycle.begin(), cycle.end(), target);
  if (at == cycle.end()) return 0;
  for (int id : cycle)
    if (!pos.count(id)) return 0;

  Vec3<S> newell = {S(), S(), S()};
  const int m = static_cast<int>(cycle.size());
  for (int i = 0; i < m; ++i) {
    const auto& pa = pos[cycle[i]];
    const auto& pb = pos[cycle[(i + 1) % m]];
    Vec3<S> x = {pa[0], pa[1], pa[2]}, y = {pb[0], pb[1], pb[2]};
    auto c = cross3(x, y);
    newell = {newell[0] + c[0], newell[1] + c[1], newell[2] + c[2]};
  }
  int i = static_cast<int>(at - cycle.begin());
  const auto& pv = pos[cycle[i]];
  const auto& pa = pos[cycle[(i - 1 + m) % m]];
  const auto& pb = pos[cycle[(i + 1) % m]];
  Vec3<S> in = {pv[0] - pa[0], pv[1] - pa[1], pv[2] - pa[2]};
  Vec3<S> outv = {pb[0] - pv[0], pb[1] - pv[1], pb[2] - pv[2]};
  S tau = dot3(cross3(in, outv), newell);
  S tau_scale = S();
  for (const auto& [id, p] : pos)
    for (const auto& x : p)
      if (abs_val(x) > tau_scale) tau_scale = abs_val(x);
  S kappa = (tau_scale + S(1)) * (tau_scale + S(1));
  kappa = kappa * kappa * S(8 * m);
  TriSign st = k.sign_value(tau, kappa, Pred::Det3, 4);
  if (uncertain && !st.confident) *uncertain = true;
  return st.s < 0 ? -1 : 1;
}

template <class K, class Ctx>
FaceOutcome check_face(const PLSurface& s,
                       const RealizationView<typename K::Scalar>& view,
                       int center, const Mode& mode, const Ctx& base_ctx) {
  using S = typename K::Scalar;
  FaceOutcome out;
  auto fail = [&](std::string why, FanStatus st, FanReason fr, bool unc) {
    out.failed = true;
    out.uncertain = unc;
    out.reason = std::move(why);
    out.fan.status = st;
    out.fan.reason = fr;
    out.fan.witness = -1;
    return out;
  };

  auto st = extract_star(s, center);
  if (!st.ok)
    return fail("not_manifold_at_face", FanStatus::Invalid,
                FanReason::DegenerateRays, false);

  Ctx ctx = base_ctx;
  auto qb = build_quotient_map_impl(s, view, center, ctx, mode.quotient_policy,
                                    &out.audit);
  if (!qb.ok)
    return fail("degenerate_face", FanStatus::Invalid,
                FanReason::DegenerateRays, ctx.tolerant_zero_used_flag());

  std::vector<Vec3<S>> rays;
  rays.reserve(st.star.ridges.size());
  for (int g : st.star.ridges) {
    Vec3<S> ray;
    auto rr = ray_of_face_impl(s, view, qb.map, center, g, ctx, &ray);
    if (!rr.ok)
      return fail("zero_ray", FanStatus::Invalid, FanReason::DegenerateRays,
                  ctx.tolerant_zero_used_flag());
    rays.push_back(std::move(ray));
  }

  K kernel = [&] {
    if constexpr (std::is_same_v<K, ExactKernel>)
      return ExactKernel(&out.audit, mix_seed(mode.seed, center));
    else
      return FloatKernel(mode.eps, &out.audit, mix_seed(mode.seed, center));
  }();
  kernel.deg = degrees_for(qb.map, s.ambient, view.coords.empty());

  // A cell with a reflex corner at the center face can masquerade as its
  // minor cone in the fan; reject it before trusting the fan verdict.
  const int kk = static_cast<int>(rays.size());
  for (int i = 0; i < kk; ++i) {
    bool unc = false;
    int sal = cell_salience(s, view, qb.map, center, st.star.facets[i],
                            rays[i], rays[(i + 1) % kk], kernel, ctx, &unc);
    if (sal < 0) {
      out.failed = true;
      out.uncertain = unc;
      out.reason = "reflex_cell";
      out.fan = {FanStatus::NotConvex, FanReason::SignFlip, i, unc};
      return out;
    }
  }

  FanVerdict fv = c_check_impl(rays, kernel);
  if (fv.status == FanStatus::Convex && !fv.uncertain) return out;
  out.failed = true;
  out.uncertain = fv.uncertain;
  out.fan = fv;
  out.reason = fan_reason_name(fv.reason);
  return out;
}

template <class K, class Ctx>
Report check_impl(const PLSurface& s, const Mode& mode, const Ctx& base_ctx,
                  int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.counts = s.counts();
  auto finish = [&](Report& r) -> Report& {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
  };

  auto pv = validate_poset(s);
  if (!pv.ok) {
    rep.verdict = Verdict::Invalid;
    rep.witness_face = pv.face;
    rep.reason = pv.reason;
    return finish(rep);
  }
  ValidationReport rv =
      mode.kind == Mode::Kind::Exact
          ? validate_realization(s, &rep.audit)
          : validate_realization_float(s, mode.eps, &rep.audit);
  if (!rv.ok) {
    rep.verdict = rv.uncertain ? Verdict::Uncertain : Verdict::Invalid;
    if (!rv.uncertain) rep.witness_face = rv.face;
    rep.reason = rv.reason;
    return finish(rep);
  }

  const auto view = make_view<typename K::Scalar>(s);
  const int m = s.num_centers();
  std::vector<FaceOutcome> outcomes(m);

  int first_bad = m;
  if (jobs <= 1) {
    for (int c = 0; c < m; ++c) {
      outcomes[c] = check_face<K>(s, view, c, mode, base_ctx);
      if (outcomes[c].failed) {
        first_bad = c;
        break;
      }
    }
  } else {
    std::atomic<int> next{0};
    std::atomic<int> bad{m};
    auto worker = [&] {
      for (;;) {
        int c = next.fetch_add(1);
        if (c >= m || c > bad.load()) break;
        outcomes[c] = check_face<K>(s, view, c, mode, base_ctx);
        if (outcomes[c].failed) {
          int cur = bad.load();
          while (c < cur && !bad.compare_exchange_weak(cur, c)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    first_bad = bad.load();
  }

  // Merge audits over the canonical prefix [0, witness]; work done past the
  // canonical witness is discarded so serial and parallel reports agree.
  int last = std::min(first_bad, m - 1);
  for (int c = 0; c <= last; ++c) rep.audit.merge(outcomes[c].audit);

  if (first_bad == m) {
    rep.verdict = Verdict::Convex;
    return finish(rep);
  }
  const FaceOutcome& bad = outcomes[first_bad];
  if (bad.uncertain) {
    rep.verdict = Verdict::Uncertain;
    rep.reason = bad.reason;
    return finish(rep);
  }
  rep.witness_face = FaceId{s.center_dim(), first_bad};
  rep.witness_fan = bad.fan;
  rep.reason = bad.reason;
  rep.verdict =
      bad.fan.status == FanStatus::Invalid ? Verdict::Invalid : Verdict::NotConvex;
  return finish(rep);
}

}  // namespace detail

/// The main loop: validate, then run the C-check over the star of every
/// (n-3)-face, stopping at the first failure. All failures are Report values.
inline Report check_convexity(const PLSurface& s, const Mode& mode = {}) {
  if (mode.kind == Mode::Kind::Exact)
    return detail::check_impl<ExactKernel>(s, mode, detail::ExactCtxFlag{}, 1);
  detail::FloatCtxFlag ctx;
  ctx.eps = mode.eps;
  return detail::check_impl<FloatKernel>(s, mode, ctx, 1);
}

/// Same verdict and witness as the serial check (canonical smallest-FaceId
/// tie-break); per-star work runs on `jobs` threads.
inline Report check_convexity_parallel(const PLSurface& s, const Mode& mode,
                                       int jobs) {
  if (jobs < 1) jobs = 1;
  if (mode.kind == Mode::Kind::Exact)
    return detail::check_impl<ExactKernel>(s, mode, detail::ExactCtxFlag{},
                                           jobs);
  detail::FloatCtxFlag ctx;
  ctx.eps = mode.eps;
  return detail::check_impl<FloatKernel>(s, mode, ctx, jobs);
}

inline nlohmann::ordered_json report_json(const Report& r,
                                          bool include_elapsed = true) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness_face)
    j["witness_face"] = r.witness_face->index;
  else
    j["witness_face"] = nullptr;
  if (r.reason.empty())
    j["reason"] = nullptr;
  else
    j["reason"] = r.reason;
  j["counts"] = {{"f0", r.counts.f0},
                 {"f_n3", r.counts.f_center},
                 {"f_n2", r.counts.f_ridge},
                 {"f_n1", r.counts.f_facet},
                 {"f_n3_n2", r.counts.center_ridge},
                 {"f_n3_n1", r.counts.center_facet},
                 {"f_n2_n1", r.counts.ridge_facet}};
  j["degree_max"] = r.audit.max_degree();
  if (include_elapsed) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

/// Everything observable minus wall-clock time; equal strings mean equal
/// reports for the determinism contract.
inline std::string report_signature(const Report& r) {
  auto j = report_json(r, false);
  nlohmann::ordered_json audit;
  for (int i = 0; i < kPredKinds; ++i) {
    const auto& e = r.audit.entries[i];
    audit[pred_name(static_cast<Pred>(i))] = {{"calls", e.calls},
                                              {"max_degree", e.max_degree}};
  }
  j["audit"] = audit;
  if (r.witness_face) j["witness_reason"] = fan_reason_name(r.witness_fan.reason);
  return j.dump();
}

}  // namespace plconvex
