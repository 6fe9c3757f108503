#include "aperiodic/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aperiodic/errors.hpp"

namespace aperiodic {

namespace {

bool point_matches(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kMembershipEps) return false;
  return true;
}

bool in_any(const std::vector<Box>& boxes, const Vec& p) {
  for (const Box& b : boxes)
    if (b.contains(p)) return true;
  return false;
}

}  // namespace

Window::Window(int dim, std::vector<Box> geometric, std::vector<Box> point_free,
               std::vector<Vec> include_points, std::vector<Vec> exclude_points)
    : dim_(dim),
      include_points_(std::move(include_points)),
      exclude_points_(std::move(exclude_points)) {
  auto check = [&](const std::vector<Box>& boxes) {
    for (const Box& b : boxes) {
      if (b.dim() != dim_ || static_cast<int>(b.hi.size()) != dim_)
        throw InvalidWindow("window: box dimension mismatch");
      for (int i = 0; i < dim_; ++i)
        if (!(b.lo[static_cast<std::size_t>(i)] < b.hi[static_cast<std::size_t>(i)]))
          throw InvalidWindow("window: box with non-positive extent");
    }
  };
  check(geometric);
  check(point_free);

  geometric_ = disjointify(std::move(geometric));
  // The L^1 class is a disjoint union; carve the geometric part out of the
  // point_free part so volumes stay additive.
  std::vector<Box> pf = disjointify(std::move(point_free));
  for (const Box& g : geometric_) {
    std::vector<Box> next;
    for (const Box& p : pf) {
      auto diff = box_difference(p, g);
      next.insert(next.end(), diff.begin(), diff.end());
    }
    pf = std::move(next);
  }
  point_free_ = disjointify(std::move(pf));

  for (const Vec& p : include_points_) {
    if (static_cast<int>(p.size()) != dim_)
      throw InvalidWindow("window: include point dimension mismatch");
    if (in_any(geometric_, p) || in_any(point_free_, p))
      throw InvalidWindow("window: include point lies inside the L1 class");
  }
  for (const Vec& p : exclude_points_) {
    if (static_cast<int>(p.size()) != dim_)
      throw InvalidWindow("window: exclude point dimension mismatch");
    if (!in_any(geometric_, p))
      throw InvalidWindow("window: exclude point outside the geometric part");
  }
}

std::vector<Box> Window::l1_boxes() const {
  std::vector<Box> all = geometric_;
  all.insert(all.end(), point_free_.begin(), point_free_.end());
  return all;
}

Box Window::l1_hull() const {
  auto boxes = l1_boxes();
  if (boxes.empty()) throw InvalidWindow("window: empty L1 class has no hull");
  return bounding_box(boxes);
}

Box Window::covariogram_support() const {
  Box out(Vec(static_cast<std::size_t>(dim_), 0.0), Vec(static_cast<std::size_t>(dim_), 0.0));
  auto boxes = l1_boxes();
  if (boxes.empty()) return out;
  for (int i = 0; i < dim_; ++i) {
    double min_lo = boxes.front().lo[static_cast<std::size_t>(i)];
    double max_hi = boxes.front().hi[static_cast<std::size_t>(i)];
    for (const Box& b : boxes) {
      min_lo = std::min(min_lo, b.lo[static_cast<std::size_t>(i)]);
      max_hi = std::max(max_hi, b.hi[static_cast<std::size_t>(i)]);
    }
    out.lo[static_cast<std::size_t>(i)] = min_lo - max_hi;
    out.hi[static_cast<std::size_t>(i)] = max_hi - min_lo;
  }
  return out;
}

double Window::measure() const {
  double v = 0.0;
  for (const Box& b : geometric_) v += b.volume();
  for (const Box& b : point_free_) v += b.volume();
  return v;
}

double Window::covariogram(const Vec& t) const {
  const auto boxes = l1_boxes();
  double acc = 0.0;
  for (const Box& a : boxes) {
    for (const Box& b : boxes) acc += overlap_volume(a, b.translated(t));
  }
  return acc;
}

std::complex<double> Window::fourier_indicator(const Vec& l) const {
  using namespace std::complex_literals;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> total = 0.0;
  for (const Box& b : l1_boxes()) {
    std::complex<double> prod = 1.0;
    for (int i = 0; i < dim_; ++i) {
      const double li = l[static_cast<std::size_t>(i)];
      const double a = b.lo[static_cast<std::size_t>(i)];
      const double c = b.hi[static_cast<std::size_t>(i)];
      if (li == 0.0) {
        prod *= (c - a);
      } else {
        const std::complex<double> num =
            std::exp(-1i * two_pi * li * c) - std::exp(-1i * two_pi * li * a);
        prod *= num / (-1i * two_pi * li);
      }
    }
    total += prod;
  }
  return total;
}

bool Window::contains(const Vec& h) const {
  for (const Vec& p : exclude_points_)
    if (point_matches(p, h)) return false;
  for (const Vec& p : include_points_)
    if (point_matches(p, h)) return true;
  if (in_any(point_free_, h)) return false;
  return in_any(geometric_, h);
}

std::pair<Window, Window> Window::sandwich(int n) const {
  if (n < 1) throw InvalidWindow("sandwich: n must be positive");
  const auto boxes = l1_boxes();
  if (boxes.empty()) return {Window::empty(dim_), Window::empty(dim_)};

  // Exact measure gap between the grown and shrunken unions at margin delta;
  // boxes thinner than 2*delta contribute their full grown volume.
  auto gap_at = [&](double delta) {
    double gap = 0.0;
    for (const Box& b : boxes) {
      double grown = 1.0, shrunk = 1.0;
      for (int i = 0; i < dim_; ++i) {
        const double w = b.hi[static_cast<std::size_t>(i)] - b.lo[static_cast<std::size_t>(i)];
        grown *= w + 2.0 * delta;
        shrunk *= std::max(0.0, w - 2.0 * delta);
      }
      gap += grown - shrunk;
    }
    return gap;
  };

  // First-order surface coefficient fixes the starting margin; halve until
  // the exact gap (which the grown-box overlaps can only shrink further)
  // is under 1/n.
  double coeff = 0.0;
  for (const Box& b : boxes) {
    for (int i = 0; i < dim_; ++i) {
      double side = 1.0;
      for (int j = 0; j < dim_; ++j) {
        if (j == i) continue;
        side *= b.hi[static_cast<std::size_t>(j)] - b.lo[static_cast<std::size_t>(j)];
      }
      coeff += 4.0 * side;
    }
  }
  double delta = (0.5 / static_cast<double>(n)) / coeff;
  while (gap_at(delta) >= 1.0 / static_cast<double>(n)) delta *= 0.5;

  std::vector<Box> inner, outer;
  for (const Box& b : boxes) {
    Box grown = b, shrunk = b;
    bool degenerate = false;
    for (int i = 0; i < dim_; ++i) {
      grown.lo[static_cast<std::size_t>(i)] -= delta;
      grown.hi[static_cast<std::size_t>(i)] += delta;
      shrunk.lo[static_cast<std::size_t>(i)] += delta;
      shrunk.hi[static_cast<std::size_t>(i)] -= delta;
      if (shrunk.hi[static_cast<std::size_t>(i)] <= shrunk.lo[static_cast<std::size_t>(i)])
        degenerate = true;
    }
    outer.push_back(std::move(grown));
    if (!degenerate) inner.push_back(std::move(shrunk));
  }
  return {Window(dim_, std::move(inner)), Window(dim_, std::move(outer))};
}

std::vector<Vec> Window::period_candidates(const std::vector<Vec>& grid, double tol) const {
  const double c0 = measure();
  if (c0 <= 0.0) throw InvalidWindow("period_candidates: window has zero measure");
  std::vector<Vec> out;
  for (const Vec& t : grid)
    if (std::abs(covariogram(t) - c0) < tol) out.push_back(t);
  return out;
}

}  // namespace aperiodic
