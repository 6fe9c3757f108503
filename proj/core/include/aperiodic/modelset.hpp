#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/window.hpp"

namespace aperiodic {

// Finite sample of -s + { x in L : x_star in t + W } inside a physical region.
// Points keep their integer lattice coordinates: `x` is the shifted physical
// part (basis*n physical minus s), `x_star` the unshifted internal part.
struct Patch {
  std::vector<LatticePoint> points;  // sorted by physical coords, ties by n
  Box region;                        // physical box A
  Vec s;                             // physical translation
  Vec t;                             // internal translation
  std::string cps_id;
  std::string window_id;

  std::size_t size() const { return points.size(); }
};

Patch cut_project(const Cps& cps, const Window& w, const Vec& s, const Vec& t,
                  const Box& region, std::uint64_t budget = Cps::kDefaultBudget);

// Partition of the K-cut into the part with stars outside U and the part
// with stars in U. Checks U subset-of K on grid samples first (NotNested).
std::pair<Patch, Patch> decompose(const Cps& cps, const Window& K, const Window& U,
                                  const Box& region,
                                  std::uint64_t budget = Cps::kDefaultBudget);

// Deterministic thinning rule selecting a subset of a cut patch.
struct GammaRule {
  enum class Kind { KeepAll, EveryOther, Bernoulli };
  Kind kind = Kind::Bernoulli;
  double p = 0.5;             // keep probability, Bernoulli only
  std::uint64_t seed = 0;
};

std::vector<LatticePoint> apply_gamma_rule(const GammaRule& rule,
                                           const std::vector<LatticePoint>& points);

// Borel-decorated window reproducing an arbitrary thinned subset of a regular
// model set while carrying a prescribed L^1 measure `a`: the kept star images
// become include_points (null), and a point-free cube of volume `a` is placed
// disjoint from W's hull. The cut at t = 0 is exactly the thinned subset.
struct BorelCounterexample {
  Window window;                       // the decorated window B_a
  std::vector<LatticePoint> gamma;     // the kept subset on the working region
  Vec cube_center;
  double cube_side = 0.0;
};

BorelCounterexample make_borel_counterexample(const Cps& cps, const Window& W,
                                              const GammaRule& rule, double a,
                                              const Box& construction_region,
                                              double internal_search_range = 1e3,
                                              std::uint64_t budget = Cps::kDefaultBudget);

}  // namespace aperiodic
