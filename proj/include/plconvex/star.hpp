#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "plconvex/surface.hpp"

namespace plconvex {

/// Cyclic star of an (n-3)-face: ridges[i] and ridges[i+1] are joined by
/// facets[i], all incident to the center. Starting element and direction are
/// an implementation detail; callers compare cycles up to rotation and
/// reflection.
struct Star {
  int center = -1;
  std::vector<int> ridges;
  std::vector<int> facets;
};

struct StarResult {
  bool ok = false;
  Star star;
  std::string reason;  // set when the link at the center is not a circle
};

/// Walk the link graph of `center` (nodes: incident ridges, edges: incident
/// facets). A closed manifold complex yields one cycle of length >= 3.
inline StarResult extract_star(const PLSurface& s, int center) {
  StarResult out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.reason = std::move(why);
    return out;
  };
  if (center < 0 || center >= s.num_centers())
    return fail("unknown center face");
  const auto& ridges = s.center_ridges[center];
  if (ridges.size() < 3) return fail("link cycle shorter than 3");

  // facet -> the ridges of this star it touches
  std::map<int, std::vector<int>> by_facet;
  for (int g : ridges)
    for (int t : s.ridge_facets[g]) by_facet[t].push_back(g);
  for (auto& [t, gs] : by_facet) {
    if (gs.size() != 2)
      return fail("facet " + std::to_string(t) + " meets the center through " +
                  std::to_string(gs.size()) + " ridge(s)");
    std::sort(gs.begin(), gs.end());
  }
  std::map<int, std::vector<int>> facets_at;  // ridge -> local facets
  for (const auto& [t, gs] : by_facet) {
    facets_at[gs[0]].push_back(t);
    facets_at[gs[1]].push_back(t);
  }
  for (int g : ridges) {
    auto it = facets_at.find(g);
    if (it == facets_at.end() || it->second.size() != 2)
      return fail("ridge " + std::to_string(g) +
                  " does not have two facets in the link");
    std::sort(it->second.begin(), it->second.end());
  }

  int start = *std::min_element(ridges.begin(), ridges.end());
  Star star;
  star.center = center;
  int g = start;
  int prev_facet = -1;
  for (;;) {
    star.ridges.push_back(g);
    const auto& ts = facets_at[g];
    int t = ts[0] == prev_facet ? ts[1] : ts[0];
    star.facets.push_back(t);
    const auto& gs = by_facet[t];
    int next = gs[0] == g ? gs[1] : gs[0];
    prev_facet = t;
    g = next;
    if (g == start) break;
    if (star.ridges.size() > ridges.size())
      return fail("link walk revisits a ridge before closing");
  }
  if (star.ridges.size() != ridges.size())
    return fail("link is not a single cycle");
  out.ok = true;
  out.star = std::move(star);
  return out;
}

}  // namespace plconvex
