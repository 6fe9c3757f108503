#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "aperiodic/geometry.hpp"

namespace aperiodic {

// A window in internal space R^m. The L^1 class is the union of the
// `geometric` and `point_free` box lists; the point overrides are null
// modifications that steer point membership without touching measure,
// covariogram or Fourier data:
//   - point_free boxes carry measure but never admit model-set points
//     (a box with the countable dense lattice image removed),
//   - include_points are finitely many internal points forced into the
//     window, exclude_points finitely many forced out of the geometric part.
class Window {
 public:
  Window() = default;

  // Normalizes the box lists to pairwise disjoint (point_free additionally
  // has the geometric part subtracted) and validates the override invariants.
  // Throws InvalidWindow on a box with non-positive extent, an include point
  // inside the L^1 class, or an exclude point outside the geometric part.
  Window(int dim, std::vector<Box> geometric, std::vector<Box> point_free = {},
         std::vector<Vec> include_points = {}, std::vector<Vec> exclude_points = {});

  static Window empty(int dim) { return Window(dim, {}); }

  int dim() const { return dim_; }
  const std::vector<Box>& geometric() const { return geometric_; }
  const std::vector<Box>& point_free() const { return point_free_; }
  const std::vector<Vec>& include_points() const { return include_points_; }
  const std::vector<Vec>& exclude_points() const { return exclude_points_; }

  // Union of geometric and point_free boxes (the L^1 class representation).
  std::vector<Box> l1_boxes() const;
  bool l1_empty() const { return geometric_.empty() && point_free_.empty(); }

  // Bounding box of the L^1 class; throws InvalidWindow when the class is empty.
  Box l1_hull() const;

  // Per-axis bounding box of the covariogram support (the difference body of
  // the L^1 class hull-wise); zero box when the class is empty.
  Box covariogram_support() const;

  // theta_H of the L^1 class: total volume of geometric + point_free boxes.
  double measure() const;

  // c_B(t) = theta_H(B n (t + B)) over the L^1 class; overrides ignored.
  double covariogram(const Vec& t) const;

  // 1_B^(l) = int_B e^{-2 pi i l.t} dt in closed form; overrides ignored.
  std::complex<double> fourier_indicator(const Vec& l) const;

  // Point membership with override precedence: exclude -> false,
  // include -> true, point_free -> false, then half-open geometric boxes.
  bool contains(const Vec& h) const;

  // Inner/outer approximation (K_n, U_n) of the L^1 class with
  // measure(U_n) - measure(K_n) < 1/n. Boxes thinner than the shrink margin
  // are dropped from K_n only, so K_n stays inside the class.
  std::pair<Window, Window> sandwich(int n) const;

  // Grid points t with |c_B(t) - c_B(0)| < tol. A resolution-limited probe of
  // the window period group; in R^m with a precompact positive-measure class
  // only t = 0 qualifies analytically.
  std::vector<Vec> period_candidates(const std::vector<Vec>& grid, double tol) const;

  bool operator==(const Window&) const = default;

 private:
  int dim_ = 0;
  std::vector<Box> geometric_;
  std::vector<Box> point_free_;
  std::vector<Vec> include_points_;
  std::vector<Vec> exclude_points_;
};

}  // namespace aperiodic
