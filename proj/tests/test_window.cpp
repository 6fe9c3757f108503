#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "aperiodic/errors.hpp"
#include "aperiodic/rng.hpp"
#include "aperiodic/window.hpp"
#include "helpers.hpp"

using namespace aperiodic;
using namespace testhelpers;

namespace {

// Independent quadrature oracle for the windowed Fourier transform.
std::complex<double> fourier_quadrature(const Window& w, double l, int samples = 200000) {
  const Box hull = w.l1_hull();
  const double step = (hull.hi[0] - hull.lo[0]) / samples;
  std::complex<double> acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = hull.lo[0] + (i + 0.5) * step;
    bool inside = false;
    for (const Box& b : w.l1_boxes()) inside = inside || b.contains(Vec{t}, 0.0);
    if (!inside) continue;
    acc += std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * l * t)) * step;
  }
  return acc;
}

}  // namespace

TEST_CASE("window measure and overlap normalization") {
  CHECK(fibonacci_window().measure() == doctest::Approx(kTau).epsilon(1e-14));
  // overlapping boxes are not double counted
  const Window w(1, {Box({0.0}, {1.0}), Box({0.5}, {1.5})});
  CHECK(w.measure() == doctest::Approx(1.5));
}

TEST_CASE("invalid windows are rejected") {
  CHECK_THROWS_AS(Window(1, {Box({1.0}, {1.0})}), InvalidWindow);
  CHECK_THROWS_AS(Window(1, {Box({2.0}, {1.0})}), InvalidWindow);
  // include point inside the L1 class
  CHECK_THROWS_AS(Window(1, {Box({0.0}, {1.0})}, {}, {Vec{0.5}}, {}), InvalidWindow);
  // exclude point outside the geometric part
  CHECK_THROWS_AS(Window(1, {Box({0.0}, {1.0})}, {}, {}, {Vec{5.0}}), InvalidWindow);
}

TEST_CASE("covariogram of a single interval is the tent function") {
  const Window w = fibonacci_window();
  CHECK(w.covariogram(Vec{0.0}) == doctest::Approx(kTau).epsilon(1e-14));
  for (double t : {-1.3, -0.4, 0.0, 0.7, 1.5}) {
    const double expected = std::max(0.0, kTau - std::abs(t));
    CHECK(w.covariogram(Vec{t}) == doctest::Approx(expected).epsilon(1e-12));
    // symmetry c(t) = c(-t)
    CHECK(w.covariogram(Vec{t}) == doctest::Approx(w.covariogram(Vec{-t})).epsilon(1e-12));
  }
  CHECK(w.covariogram(Vec{kTau + 0.1}) == doctest::Approx(0.0));
}

TEST_CASE("fourier transform of the indicator matches quadrature") {
  const Window single = fibonacci_window();
  const Window split(1, {Box({-1.0}, {-0.2}), Box({0.1}, {0.7})});
  for (const Window& w : {single, split}) {
    CHECK(w.fourier_indicator(Vec{0.0}).real() == doctest::Approx(w.measure()).epsilon(1e-14));
    CHECK(w.fourier_indicator(Vec{0.0}).imag() == doctest::Approx(0.0));
    for (double l : {0.3, -1.1, 2.7}) {
      const auto closed = w.fourier_indicator(Vec{l});
      const auto quad = fourier_quadrature(w, l);
      CHECK(std::abs(closed - quad) < 1e-4);
    }
  }
}

TEST_CASE("membership precedence of decorations") {
  const Window w(1, {Box({0.0}, {1.0})}, {Box({2.0}, {3.0})}, {Vec{5.0}}, {Vec{0.5}});
  CHECK(w.contains(Vec{0.1}));        // geometric
  CHECK_FALSE(w.contains(Vec{0.5}));  // excluded
  CHECK_FALSE(w.contains(Vec{2.5}));  // point-free carries no points
  CHECK(w.contains(Vec{5.0}));        // included
  CHECK_FALSE(w.contains(Vec{1.0}));  // half-open
  CHECK_FALSE(w.contains(Vec{4.0}));
  // decorations are invisible to measure-level data
  CHECK(w.measure() == doctest::Approx(2.0));
}

TEST_CASE("point-free boxes do not double count against geometric") {
  const Window w(1, {Box({0.0}, {1.0})}, {Box({0.5}, {1.5})});
  CHECK(w.measure() == doctest::Approx(1.5));
  CHECK(w.contains(Vec{0.6}));        // geometric wins where it covers
  CHECK_FALSE(w.contains(Vec{1.2}));  // residual point-free part
}

TEST_CASE("sandwich approximations bracket the window") {
  const Window w(1, {Box({-1.0}, {0.3}), Box({0.6}, {1.4})});
  for (int n : {1, 3, 10, 50}) {
    const auto [K, U] = w.sandwich(n);
    CHECK(U.measure() - K.measure() < 1.0 / n);
    CHECK(K.measure() <= w.measure());
    CHECK(U.measure() >= w.measure());
    // every K box sits inside the window, the window inside U
    SplitMix64 rng(99);
    for (int probe = 0; probe < 300; ++probe) {
      const Vec p{rng.uniform(-1.6, 1.6)};
      if (K.contains(p)) CHECK(w.contains(p));
      if (w.contains(p)) CHECK(U.contains(p));
    }
  }
}

TEST_CASE("period candidates collapse to the origin") {
  const Window w = fibonacci_window();
  std::vector<Vec> grid;
  for (double t = -2.0; t <= 2.0; t += 0.25) grid.push_back(Vec{t});
  const auto periods = w.period_candidates(grid, 1e-9);
  REQUIRE(periods.size() == 1);
  CHECK(periods[0][0] == doctest::Approx(0.0));
}
