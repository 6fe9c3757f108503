#pragma once

#include <cmath>
#include <vector>

#include "aperiodic/linalg.hpp"

namespace aperiodic {

// Boundary snap tolerance for half-open box membership. Star coordinates of
// translated windows are reproduced only up to floating rounding; snapping
// keeps boundary lattice points classified identically across exact lattice
// translates. 1e-9 is far above double noise at desk-scale radii and far
// below every geometric feature size used here.
inline constexpr double kMembershipEps = 1e-9;

// Axis-aligned half-open box [lo, hi) in R^n.
struct Box {
  Vec lo, hi;

  Box() = default;
  Box(Vec l, Vec h) : lo(std::move(l)), hi(std::move(h)) {}

  int dim() const { return static_cast<int>(lo.size()); }

  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= (hi[i] - lo[i]);
    return v;
  }

  bool empty() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (hi[i] <= lo[i]) return true;
    return lo.empty() ? true : false;
  }

  // Half-open membership with boundary snapping.
  bool contains(const Vec& p, double eps = kMembershipEps) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (p[i] - lo[i] < -eps) return false;
      if (p[i] - hi[i] >= -eps) return false;
    }
    return true;
  }

  // Closed membership, used by the torus parametrization (compact windows).
  bool contains_closed(const Vec& p, double eps = 0.0) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (p[i] < lo[i] - eps || p[i] > hi[i] + eps) return false;
    }
    return true;
  }

  Box translated(const Vec& t) const {
    Box b = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      b.lo[i] += t[i];
      b.hi[i] += t[i];
    }
    return b;
  }

  bool operator==(const Box&) const = default;
};

// Intersection; empty boxes come out with hi <= lo on some axis.
Box box_intersection(const Box& a, const Box& b);

double overlap_volume(const Box& a, const Box& b);

// a \ b as a list of disjoint boxes (at most 2*dim pieces).
std::vector<Box> box_difference(const Box& a, const Box& b);

// Rewrite a list of (possibly overlapping) boxes as a disjoint list covering
// the same union, empty pieces dropped, sorted lexicographically by lo then hi.
std::vector<Box> disjointify(std::vector<Box> boxes);

// Smallest box containing all inputs (inputs must be non-empty).
Box bounding_box(const std::vector<Box>& boxes);

}  // namespace aperiodic
