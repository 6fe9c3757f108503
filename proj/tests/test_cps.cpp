#include <doctest.h>

#include <cmath>

#include "aperiodic/errors.hpp"
#include "aperiodic/rng.hpp"
#include "helpers.hpp"

using namespace aperiodic;
using namespace testhelpers;

TEST_CASE("fibonacci scheme basics") {
  const Cps cps = make_fibonacci();
  CHECK(cps.d() == 1);
  CHECK(cps.m() == 1);
  CHECK(std::abs(cps.det()) == doctest::Approx(kSqrt5).epsilon(1e-14));
  CHECK(cps.density() == doctest::Approx(1.0 / kSqrt5).epsilon(1e-14));
  CHECK(cps.witnesses().injectivity_ok);

  const LatticePoint p = cps.point({2, -3});
  CHECK(p.x[0] == doctest::Approx(2.0 - 3.0 * kTau));
  CHECK(p.x_star[0] == doctest::Approx(2.0 - 3.0 * (1.0 - kTau)));
}

TEST_CASE("singular basis rejected") {
  Matrix b(2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = 2.0;
  b.at(1, 0) = 2.0;
  b.at(1, 1) = 4.0;
  CHECK_THROWS_AS(Cps::make(1, 1, b), SingularBasis);
}

TEST_CASE("non-injective physical projection rejected") {
  // Physical parts of (1,0) and (0,1) coincide: pi_G is 2-to-1.
  Matrix b(2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = 1.0;
  b.at(1, 0) = 1.0;
  b.at(1, 1) = -1.0;
  CHECK_THROWS_AS(Cps::make(1, 1, b, 50), InjectivityFailure);
}

TEST_CASE("enumeration equals the brute-force oracle") {
  const Cps cps = make_fibonacci();
  const Box phys(Vec{-8.0}, Vec{8.0});
  const Box internal(Vec{-6.0}, Vec{6.0});
  const auto fast = integer_coords(cps.enumerate(phys, internal));
  CHECK(fast == brute_force_enumerate(cps, phys, internal));
  CHECK_FALSE(fast.empty());
}

TEST_CASE("enumeration oracle on random planar schemes") {
  SplitMix64 rng(2718);
  int tested = 0;
  while (tested < 5) {
    Matrix b(2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) b.at(r, c) = rng.uniform(-2.0, 2.0);
    if (std::abs(determinant(b)) < 0.3) continue;
    Cps cps = [&]() -> Cps {
      try {
        return Cps::make(1, 1, b, 60);
      } catch (const Error&) {
        return make_fibonacci();  // rare degenerate draw; substitute
      }
    }();
    const Box phys(Vec{-4.0}, Vec{4.0});
    const Box internal(Vec{-4.0}, Vec{4.0});
    CHECK(integer_coords(cps.enumerate(phys, internal)) ==
          brute_force_enumerate(cps, phys, internal));
    ++tested;
  }
}

TEST_CASE("enumeration respects the candidate budget") {
  const Cps cps = make_fibonacci();
  CHECK_THROWS_AS(cps.enumerate(Box(Vec{-1e6}, Vec{1e6}), Box(Vec{-1e6}, Vec{1e6}), 1000),
                  RegionTooLarge);
}

TEST_CASE("enumeration output is lexicographically sorted and half-open") {
  const Cps cps = make_fibonacci();
  const auto pts = cps.enumerate(Box(Vec{-10.0}, Vec{10.0}), Box(Vec{-3.0}, Vec{3.0}));
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].n < pts[i].n);
  for (const LatticePoint& p : pts) {
    CHECK(p.x[0] >= -10.0);
    CHECK(p.x[0] < 10.0);
  }
}

TEST_CASE("dual pairing is integral") {
  const Cps cps = make_fibonacci();
  const DualCps dual = dual_cps(cps);
  const auto primal = cps.enumerate(Box(Vec{-5.0}, Vec{5.0}), Box(Vec{-5.0}, Vec{5.0}));
  const auto duals = dual.enumerate(Box(Vec{-3.0}, Vec{3.0}), Box(Vec{-3.0}, Vec{3.0}));
  REQUIRE_FALSE(primal.empty());
  REQUIRE_FALSE(duals.empty());
  for (std::size_t i = 0; i < std::min<std::size_t>(primal.size(), 10); ++i)
    for (std::size_t j = 0; j < std::min<std::size_t>(duals.size(), 10); ++j) {
      const double pairing =
          primal[i].x[0] * duals[j].x[0] + primal[i].x_star[0] * duals[j].x_star[0];
      CHECK(std::abs(pairing - std::round(pairing)) < 1e-9);
    }
}
