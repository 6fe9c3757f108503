#include <doctest.h>

#include <cmath>

#include "aperiodic/errors.hpp"
#include "aperiodic/geometry.hpp"
#include "aperiodic/linalg.hpp"
#include "aperiodic/rng.hpp"

using namespace aperiodic;

TEST_CASE("determinant and inverse of a 2x2 matrix") {
  Matrix m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 2.0;
  m.at(1, 0) = 3.0;
  m.at(1, 1) = 4.0;
  CHECK(determinant(m) == doctest::Approx(-2.0));

  const Matrix inv = inverse(m);
  // m * inv == identity
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double sum = 0.0;
      for (int k = 0; k < 2; ++k) sum += m.at(r, k) * inv.at(k, c);
      CHECK(sum == doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("inverse of a singular matrix throws") {
  Matrix m(2);
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 2.0;
  m.at(1, 0) = 2.0;
  m.at(1, 1) = 4.0;
  CHECK_THROWS_AS(inverse(m), SingularBasis);
}

TEST_CASE("half-open box membership with boundary snap") {
  Box b(Vec{0.0, 0.0}, Vec{1.0, 2.0});
  CHECK(b.volume() == doctest::Approx(2.0));
  CHECK(b.contains(Vec{0.0, 0.0}));
  CHECK(b.contains(Vec{0.5, 1.999}));
  CHECK_FALSE(b.contains(Vec{1.0, 0.5}));       // hi face excluded
  CHECK_FALSE(b.contains(Vec{0.5, 2.0}));
  CHECK(b.contains(Vec{-1e-12, 0.5}));          // snapped onto the lo face
  CHECK_FALSE(b.contains(Vec{1.0 - 1e-12, 0.5}, 1e-9));  // snapped onto hi face
  CHECK(b.contains_closed(Vec{1.0, 2.0}));
}

TEST_CASE("box difference partitions the original volume") {
  Box a(Vec{0.0, 0.0}, Vec{4.0, 4.0});
  Box c(Vec{1.0, 1.0}, Vec{3.0, 5.0});
  const auto pieces = box_difference(a, c);
  double total = 0.0;
  for (const Box& p : pieces) {
    total += p.volume();
    CHECK(overlap_volume(p, c) == doctest::Approx(0.0));
  }
  CHECK(total == doctest::Approx(a.volume() - overlap_volume(a, c)));
}

TEST_CASE("disjointify preserves the union and removes overlap") {
  SplitMix64 rng(314);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Box> boxes;
    for (int i = 0; i < 4; ++i) {
      const double x0 = rng.uniform(-2.0, 2.0), y0 = rng.uniform(-2.0, 2.0);
      boxes.emplace_back(Vec{x0, y0},
                         Vec{x0 + rng.uniform(0.2, 2.0), y0 + rng.uniform(0.2, 2.0)});
    }
    const auto flat = disjointify(boxes);
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i + 1; j < flat.size(); ++j)
        CHECK(overlap_volume(flat[i], flat[j]) == doctest::Approx(0.0));
    // membership in the union is unchanged on random probes
    for (int probe = 0; probe < 200; ++probe) {
      Vec p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      bool in_orig = false, in_flat = false;
      for (const Box& b : boxes) in_orig = in_orig || b.contains(p, 0.0);
      for (const Box& b : flat) in_flat = in_flat || b.contains(p, 0.0);
      CHECK(in_orig == in_flat);
    }
  }
}

TEST_CASE("bounding box covers all inputs") {
  std::vector<Box> boxes{Box(Vec{0.0}, Vec{1.0}), Box(Vec{-3.0}, Vec{-2.0})};
  const Box hull = bounding_box(boxes);
  CHECK(hull.lo[0] == doctest::Approx(-3.0));
  CHECK(hull.hi[0] == doctest::Approx(1.0));
}
