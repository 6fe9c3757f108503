#pragma once

#include <cstdint>

#include "aperiodic/modelset.hpp"

namespace aperiodic {

// Recovered translation class of a patch under the torus parametrization.
// In Euclidean internal space the window period group is trivial, so the
// class is (s, t) + L itself; feasible_box collects every internal
// translation consistent with the patch.
struct TorusParameter {
  Vec s;
  Vec t;
  Box feasible_box;
  bool verified = false;
};

struct RecoverOptions {
  double physical_search_halfwidth = 3.0;   // s-candidate search around x0
  double internal_search_halfwidth = 30.0;  // |t| range covered by the search
  double tol = 1e-6;
  std::uint64_t budget = Cps::kDefaultBudget;
};

// True iff every patch point x satisfies x + s in L (within tol) with star
// in t + W, closed-box convention for the compact window.
bool verify_inclusion(const Patch& patch, const Cps& cps, const Window& W, const Vec& s,
                      const Vec& t, double tol = 1e-6,
                      std::uint64_t budget = Cps::kDefaultBudget);

// Finds s by matching the first patch point against nearby lattice physical
// parts, then intersects x_star - hull(W) over the embedded patch. Throws
// NoLatticeEmbedding when no candidate maps all points into L, and
// EmptyFeasibleBox when the star constraints are incompatible.
TorusParameter recover_parameters(const Patch& patch, const Cps& cps, const Window& W,
                                  const RecoverOptions& options = {});

}  // namespace aperiodic
