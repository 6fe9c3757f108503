#include "aperiodic/geometry.hpp"

#include <algorithm>

namespace aperiodic {

Box box_intersection(const Box& a, const Box& b) {
  Box out = a;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    out.lo[i] = std::max(a.lo[i], b.lo[i]);
    out.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return out;
}

double overlap_volume(const Box& a, const Box& b) {
  double v = 1.0;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const double w = std::min(a.hi[i], b.hi[i]) - std::max(a.lo[i], b.lo[i]);
    if (w <= 0.0) return 0.0;
    v *= w;
  }
  return v;
}

std::vector<Box> box_difference(const Box& a, const Box& b) {
  const Box cut = box_intersection(a, b);
  if (cut.empty()) return {a};
  std::vector<Box> pieces;
  Box rest = a;
  // Peel slabs off `rest` axis by axis; what remains at the end is `cut`.
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (rest.lo[i] < cut.lo[i]) {
      Box slab = rest;
      slab.hi[i] = cut.lo[i];
      pieces.push_back(slab);
      rest.lo[i] = cut.lo[i];
    }
    if (cut.hi[i] < rest.hi[i]) {
      Box slab = rest;
      slab.lo[i] = cut.hi[i];
      pieces.push_back(slab);
      rest.hi[i] = cut.hi[i];
    }
  }
  return pieces;
}

std::vector<Box> disjointify(std::vector<Box> boxes) {
  std::vector<Box> out;
  for (const Box& b : boxes) {
    if (b.empty()) continue;
    std::vector<Box> pieces{b};
    for (const Box& placed : out) {
      std::vector<Box> next;
      for (const Box& p : pieces) {
        auto diff = box_difference(p, placed);
        next.insert(next.end(), diff.begin(), diff.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    for (Box& p : pieces)
      if (!p.empty()) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Box& x, const Box& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });
  return out;
}

Box bounding_box(const std::vector<Box>& boxes) {
  Box out = boxes.front();
  for (const Box& b : boxes) {
    for (std::size_t i = 0; i < out.lo.size(); ++i) {
      out.lo[i] = std::min(out.lo[i], b.lo[i]);
      out.hi[i] = std::max(out.hi[i], b.hi[i]);
    }
  }
  return out;
}

}  // namespace aperiodic
