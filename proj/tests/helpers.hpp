#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/window.hpp"

namespace testhelpers {

inline const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;
inline const double kSqrt5 = std::sqrt(5.0);

inline aperiodic::Cps make_fibonacci() {
  aperiodic::Matrix b(2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = kTau;
  b.at(1, 0) = 1.0;
  b.at(1, 1) = 1.0 - kTau;
  return aperiodic::Cps::make(1, 1, b);
}

inline aperiodic::Window fibonacci_window() {
  return aperiodic::Window(1, {aperiodic::Box({-1.0}, {kTau - 1.0})});
}

// Exhaustive integer-cube scan over the same half-open product region the
// pruned enumeration targets; the independent oracle for lattice enumeration.
inline std::vector<std::vector<long long>> brute_force_enumerate(
    const aperiodic::Cps& cps, const aperiodic::Box& physical,
    const aperiodic::Box& internal) {
  std::vector<long long> lo, hi;
  cps.integer_bounds(physical, internal, lo, hi);
  std::vector<std::vector<long long>> out;
  std::vector<long long> n = lo;
  bool done = false;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (hi[i] < lo[i]) done = true;
  while (!done) {
    const aperiodic::LatticePoint p = cps.point(n);
    if (physical.contains(p.x, 0.0) && internal.contains(p.x_star, 0.0)) out.push_back(n);
    for (int i = cps.dim() - 1; i >= 0; --i) {
      if (++n[static_cast<std::size_t>(i)] <= hi[static_cast<std::size_t>(i)]) break;
      n[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
      if (i == 0) done = true;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<long long>> integer_coords(
    const std::vector<aperiodic::LatticePoint>& pts) {
  std::vector<std::vector<long long>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testhelpers
