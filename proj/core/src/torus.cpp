#include "aperiodic/torus.hpp"

#include <algorithm>
#include <cmath>

#include "aperiodic/errors.hpp"

namespace aperiodic {

namespace {

Box closed_hull(const Window& W) {
  if (W.geometric().empty())
    throw InvalidWindow("torus: window must have a nonempty geometric part");
  return bounding_box(W.geometric());
}

bool star_in_window_closed(const Window& W, const Vec& star, const Vec& t, double tol) {
  Vec shifted(star.size());
  for (std::size_t i = 0; i < star.size(); ++i) shifted[i] = star[i] - t[i];
  for (const Box& b : W.geometric())
    if (b.contains_closed(shifted, tol)) return true;
  return false;
}

// Lattice points whose physical part is within tol of `target` and whose
// internal part lies in `internal`.
std::vector<LatticePoint> lattice_near(const Cps& cps, const Vec& target, double tol,
                                       const Box& internal, std::uint64_t budget) {
  Box physical(target, target);
  for (std::size_t i = 0; i < target.size(); ++i) {
    physical.lo[i] -= tol;
    physical.hi[i] += tol + 1e-12;
  }
  return cps.enumerate(physical, internal, budget);
}

}  // namespace

bool verify_inclusion(const Patch& patch, const Cps& cps, const Window& W, const Vec& s,
                      const Vec& t, double tol, std::uint64_t budget) {
  if (patch.points.empty()) return true;  // vacuous
  const Box hull = closed_hull(W);
  Box internal = hull;
  for (std::size_t i = 0; i < internal.lo.size(); ++i) {
    internal.lo[i] += t[i] - tol;
    internal.hi[i] += t[i] + tol + 1e-12;
  }
  Vec shifted(s.size());
  for (const LatticePoint& p : patch.points) {
    for (std::size_t i = 0; i < s.size(); ++i) shifted[i] = p.x[i] + s[i];
    bool ok = false;
    for (const LatticePoint& q : lattice_near(cps, shifted, tol, internal, budget)) {
      if (star_in_window_closed(W, q.x_star, t, tol)) { ok = true; break; }
    }
    if (!ok) return false;
  }
  return true;
}

TorusParameter recover_parameters(const Patch& patch, const Cps& cps, const Window& W,
                                  const RecoverOptions& options) {
  if (patch.points.empty())
    throw NoLatticeEmbedding("recover_parameters: empty patch has no embedding");
  const Box hull = closed_hull(W);
  const int m = cps.m();
  Vec diam(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    diam[static_cast<std::size_t>(i)] =
        hull.hi[static_cast<std::size_t>(i)] - hull.lo[static_cast<std::size_t>(i)];

  const Vec& x0 = patch.points.front().x;
  Box candidate_phys(x0, x0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    candidate_phys.lo[i] -= options.physical_search_halfwidth;
    candidate_phys.hi[i] += options.physical_search_halfwidth;
  }
  Box candidate_internal(Vec(static_cast<std::size_t>(m), -options.internal_search_halfwidth),
                         Vec(static_cast<std::size_t>(m), options.internal_search_halfwidth));
  auto candidates = cps.enumerate(candidate_phys, candidate_internal, options.budget);
  // Prefer the smallest translation representative.
  std::sort(candidates.begin(), candidates.end(),
            [&](const LatticePoint& a, const LatticePoint& b) {
              double da = 0, db = 0;
              for (std::size_t i = 0; i < x0.size(); ++i) {
                da += (a.x[i] - x0[i]) * (a.x[i] - x0[i]);
                db += (b.x[i] - x0[i]) * (b.x[i] - x0[i]);
              }
              return da < db;
            });

  bool embedding_found = false;
  Vec shifted(x0.size());
  for (const LatticePoint& anchor : candidates) {
    Vec s(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) s[i] = anchor.x[i] - x0[i];

    // Patch stars of a genuine sub-model-set stay within one window diameter
    // of the anchor star; the search window is wider so that incompatible
    // patches still embed and surface as EmptyFeasibleBox.
    Box star_range(anchor.x_star, anchor.x_star);
    for (int i = 0; i < m; ++i) {
      const double reach = 4.0 * diam[static_cast<std::size_t>(i)] + 1.0 + options.tol;
      star_range.lo[static_cast<std::size_t>(i)] -= reach;
      star_range.hi[static_cast<std::size_t>(i)] += reach + 1e-12;
    }

    Box feasible(Vec(static_cast<std::size_t>(m), 0.0), Vec(static_cast<std::size_t>(m), 0.0));
    for (int i = 0; i < m; ++i) {
      feasible.lo[static_cast<std::size_t>(i)] = -1e300;
      feasible.hi[static_cast<std::size_t>(i)] = 1e300;
    }
    bool embeds = true;
    for (const LatticePoint& p : patch.points) {
      for (std::size_t i = 0; i < s.size(); ++i) shifted[i] = p.x[i] + s[i];
      auto found = lattice_near(cps, shifted, options.tol, star_range, options.budget);
      if (found.empty()) { embeds = false; break; }
      const Vec& star = found.front().x_star;
      // t must satisfy star in t + hull, i.e. t in star - hull.
      for (int i = 0; i < m; ++i) {
        feasible.lo[static_cast<std::size_t>(i)] =
            std::max(feasible.lo[static_cast<std::size_t>(i)],
                     star[static_cast<std::size_t>(i)] - hull.hi[static_cast<std::size_t>(i)]);
        feasible.hi[static_cast<std::size_t>(i)] =
            std::min(feasible.hi[static_cast<std::size_t>(i)],
                     star[static_cast<std::size_t>(i)] - hull.lo[static_cast<std::size_t>(i)]);
      }
    }
    if (!embeds) continue;
    embedding_found = true;

    bool nonempty = true;
    for (int i = 0; i < m; ++i)
      if (feasible.hi[static_cast<std::size_t>(i)] <
          feasible.lo[static_cast<std::size_t>(i)] - 1e-12)
        nonempty = false;
    if (!nonempty) continue;

    TorusParameter out;
    out.s = s;
    out.feasible_box = feasible;
    out.t.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i)
      out.t[static_cast<std::size_t>(i)] =
          0.5 * (feasible.lo[static_cast<std::size_t>(i)] +
                 feasible.hi[static_cast<std::size_t>(i)]);
    out.verified = verify_inclusion(patch, cps, W, out.s, out.t, options.tol, options.budget);
    return out;
  }

  if (embedding_found)
    throw EmptyFeasibleBox("recover_parameters: star constraints are incompatible");
  throw NoLatticeEmbedding("recover_parameters: no translation maps the patch into L");
}

}  // namespace aperiodic
