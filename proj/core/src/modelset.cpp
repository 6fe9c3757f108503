#include "aperiodic/modelset.hpp"

#include <algorithm>
#include <cmath>

#include "aperiodic/errors.hpp"
#include "aperiodic/rng.hpp"

namespace aperiodic {

namespace {

// Internal enumeration box: hull of t + L1 class and t + include points,
// inflated so override points on the hull edge stay reachable.
Box internal_enumeration_box(const Window& w, const Vec& t) {
  constexpr double pad = 1e-6;
  Box hull;
  if (!w.l1_empty()) {
    hull = w.l1_hull();
  } else if (!w.include_points().empty()) {
    hull = Box(w.include_points().front(), w.include_points().front());
  } else {
    return Box(Vec{}, Vec{});  // empty window, nothing to enumerate
  }
  for (const Vec& p : w.include_points()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      hull.lo[i] = std::min(hull.lo[i], p[i]);
      hull.hi[i] = std::max(hull.hi[i], p[i]);
    }
  }
  for (std::size_t i = 0; i < hull.lo.size(); ++i) {
    hull.lo[i] += t[i] - pad;
    hull.hi[i] += t[i] + pad;
  }
  return hull;
}

void sort_patch(std::vector<LatticePoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.n < b.n;
  });
}

}  // namespace

Patch cut_project(const Cps& cps, const Window& w, const Vec& s, const Vec& t,
                  const Box& region, std::uint64_t budget) {
  if (static_cast<int>(s.size()) != cps.d() || static_cast<int>(t.size()) != cps.m())
    throw ConfigError("cut_project: translation dimensions do not match the scheme");
  if (w.dim() != cps.m()) throw ConfigError("cut_project: window dimension mismatch");

  Patch patch;
  patch.region = region;
  patch.s = s;
  patch.t = t;

  const Box internal_box = internal_enumeration_box(w, t);
  if (internal_box.lo.empty()) return patch;  // fully empty window

  Box physical_box = region;
  for (int i = 0; i < cps.d(); ++i) {
    physical_box.lo[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)];
    physical_box.hi[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)];
  }

  Vec star_shifted(static_cast<std::size_t>(cps.m()));
  for (LatticePoint& p : cps.enumerate(physical_box, internal_box, budget)) {
    for (int i = 0; i < cps.m(); ++i)
      star_shifted[static_cast<std::size_t>(i)] =
          p.x_star[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i)];
    if (!w.contains(star_shifted)) continue;
    for (int i = 0; i < cps.d(); ++i)
      p.x[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i)];
    patch.points.push_back(std::move(p));
  }
  sort_patch(patch.points);
  return patch;
}

std::pair<Patch, Patch> decompose(const Cps& cps, const Window& K, const Window& U,
                                  const Box& region, std::uint64_t budget) {
  // Membership-level nesting check on grid samples of U's L1 class.
  if (!U.l1_empty()) {
    const Box hull = U.l1_hull();
    const int m = U.dim();
    const int per_axis = std::max(2, static_cast<int>(std::floor(
                                         std::pow(1e4, 1.0 / static_cast<double>(m)))));
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    Vec h(static_cast<std::size_t>(m));
    bool done = false;
    while (!done) {
      for (int i = 0; i < m; ++i) {
        const double f = (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) /
                         static_cast<double>(per_axis);
        h[static_cast<std::size_t>(i)] = hull.lo[static_cast<std::size_t>(i)] +
                                         f * (hull.hi[static_cast<std::size_t>(i)] -
                                              hull.lo[static_cast<std::size_t>(i)]);
      }
      if (U.contains(h) && !K.contains(h))
        throw NotNested("decompose: sample of U not contained in K");
      for (int i = m - 1; i >= 0; --i) {
        if (++idx[static_cast<std::size_t>(i)] < per_axis) break;
        idx[static_cast<std::size_t>(i)] = 0;
        if (i == 0) done = true;
      }
    }
  }
  for (const Vec& p : U.include_points())
    if (!K.contains(p)) throw NotNested("decompose: include point of U not in K");

  const Vec s(static_cast<std::size_t>(cps.d()), 0.0);
  const Vec t(static_cast<std::size_t>(cps.m()), 0.0);
  Patch full = cut_project(cps, K, s, t, region, budget);

  Patch in_complement = full, in_u = full;
  in_complement.points.clear();
  in_u.points.clear();
  for (const LatticePoint& p : full.points) {
    if (U.contains(p.x_star))
      in_u.points.push_back(p);
    else
      in_complement.points.push_back(p);
  }
  return {std::move(in_complement), std::move(in_u)};
}

std::vector<LatticePoint> apply_gamma_rule(const GammaRule& rule,
                                           const std::vector<LatticePoint>& points) {
  std::vector<LatticePoint> kept;
  switch (rule.kind) {
    case GammaRule::Kind::KeepAll:
      kept = points;
      break;
    case GammaRule::Kind::EveryOther:
      for (std::size_t i = 0; i < points.size(); i += 2) kept.push_back(points[i]);
      break;
    case GammaRule::Kind::Bernoulli: {
      SplitMix64 rng(rule.seed);
      for (const LatticePoint& p : points)
        if (rng.next_double() < rule.p) kept.push_back(p);
      break;
    }
  }
  return kept;
}

BorelCounterexample make_borel_counterexample(const Cps& cps, const Window& W,
                                              const GammaRule& rule, double a,
                                              const Box& construction_region,
                                              double internal_search_range,
                                              std::uint64_t budget) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ConfigError("borel counterexample: a must be positive and finite");
  if (!W.point_free().empty() || !W.include_points().empty() || !W.exclude_points().empty())
    throw ConfigError("borel counterexample: W must be a regular geometric window");

  const int m = cps.m();
  const Vec s0(static_cast<std::size_t>(cps.d()), 0.0);
  const Vec t0(static_cast<std::size_t>(m), 0.0);
  Patch base = cut_project(cps, W, s0, t0, construction_region, budget);

  BorelCounterexample out;
  out.gamma = apply_gamma_rule(rule, base.points);

  std::vector<Vec> include;
  include.reserve(out.gamma.size());
  for (const LatticePoint& p : out.gamma) include.push_back(p.x_star);

  // Place the point-free cube just past the window hull along the first axis,
  // stepping outward until it clears the hull (and the configured range).
  const double side = std::pow(a, 1.0 / static_cast<double>(m));
  const Box hull = W.l1_hull();
  Vec center(static_cast<std::size_t>(m), 0.0);
  for (int i = 1; i < m; ++i)
    center[static_cast<std::size_t>(i)] =
        0.5 * (hull.lo[static_cast<std::size_t>(i)] + hull.hi[static_cast<std::size_t>(i)]);
  bool placed = false;
  for (double off = hull.hi[0] + 1.0 + 0.5 * side; off <= internal_search_range;
       off += std::max(1.0, side)) {
    center[0] = off;
    Box cube(center, center);
    for (int i = 0; i < m; ++i) {
      cube.lo[static_cast<std::size_t>(i)] -= 0.5 * side;
      cube.hi[static_cast<std::size_t>(i)] += 0.5 * side;
    }
    bool disjoint = true;
    for (const Box& g : W.geometric())
      if (overlap_volume(cube, g) > 0.0) { disjoint = false; break; }
    if (!disjoint) continue;
    out.cube_center = center;
    out.cube_side = side;
    out.window = Window(m, {}, {cube}, include, {});
    placed = true;
    break;
  }
  if (!placed)
    throw PlacementFailure("borel counterexample: no disjoint cube position within range");
  return out;
}

}  // namespace aperiodic
