#include <doctest.h>

#include <cmath>

#include "aperiodic/errors.hpp"
#include "aperiodic/modelset.hpp"
#include "helpers.hpp"

using namespace aperiodic;
using namespace testhelpers;

TEST_CASE("fibonacci cut has the model-set density") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const Box region(Vec{-500.0}, Vec{500.0});
  const Patch patch = cut_project(cps, w, Vec{0.0}, Vec{0.0}, region);
  REQUIRE_FALSE(patch.points.empty());
  const double density = static_cast<double>(patch.points.size()) / region.volume();
  CHECK(density == doctest::Approx(kTau / kSqrt5).epsilon(5e-3));
  for (std::size_t i = 1; i < patch.points.size(); ++i)
    CHECK(patch.points[i - 1].x[0] < patch.points[i].x[0]);
  for (const LatticePoint& p : patch.points) {
    CHECK(p.x[0] >= -500.0);
    CHECK(p.x[0] < 500.0);
    CHECK(w.contains(p.x_star));
  }
}

TEST_CASE("lattice translates relabel the cut exactly") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const Box region(Vec{-200.0}, Vec{200.0});
  const Patch base = cut_project(cps, w, Vec{0.0}, Vec{0.0}, region);

  const LatticePoint lam = cps.point({3, 2});
  const Patch shifted = cut_project(cps, w, lam.x, lam.x_star, region);
  std::vector<std::vector<long long>> relabeled;
  for (const LatticePoint& p : shifted.points)
    relabeled.push_back({p.n[0] - lam.n[0], p.n[1] - lam.n[1]});
  std::sort(relabeled.begin(), relabeled.end());
  CHECK(relabeled == integer_coords(base.points));
}

TEST_CASE("decompose partitions the cut and rejects non-nested windows") {
  const Cps cps = make_fibonacci();
  const Window K = fibonacci_window();
  const Window U(1, {Box({-0.5}, {0.1})});
  const Box region(Vec{-300.0}, Vec{300.0});
  const auto [outside, inside] = decompose(cps, K, U, region);
  const Patch full = cut_project(cps, K, Vec{0.0}, Vec{0.0}, region);
  CHECK(outside.points.size() + inside.points.size() == full.points.size());
  auto merged = outside.points;
  merged.insert(merged.end(), inside.points.begin(), inside.points.end());
  CHECK(integer_coords(merged) == integer_coords(full.points));
  for (const LatticePoint& p : inside.points) CHECK(U.contains(p.x_star));
  for (const LatticePoint& p : outside.points) CHECK_FALSE(U.contains(p.x_star));

  const Window not_nested(1, {Box({0.0}, {2.0})});
  CHECK_THROWS_AS(decompose(cps, K, not_nested, region), NotNested);
}

TEST_CASE("thinning rules are deterministic") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const Patch patch = cut_project(cps, w, Vec{0.0}, Vec{0.0}, Box(Vec{-400.0}, Vec{400.0}));

  const auto every_other = apply_gamma_rule({GammaRule::Kind::EveryOther, 0.0, 0}, patch.points);
  CHECK(every_other.size() == (patch.points.size() + 1) / 2);
  CHECK(every_other.front() == patch.points.front());

  GammaRule bern{GammaRule::Kind::Bernoulli, 0.5, 7};
  const auto kept1 = apply_gamma_rule(bern, patch.points);
  const auto kept2 = apply_gamma_rule(bern, patch.points);
  CHECK(kept1 == kept2);
  const double frac = static_cast<double>(kept1.size()) / patch.points.size();
  CHECK(frac == doctest::Approx(0.5).epsilon(0.1));

  CHECK(apply_gamma_rule({GammaRule::Kind::KeepAll, 0.0, 0}, patch.points) == patch.points);
}

TEST_CASE("decorated counterexample window reproduces the thinned subset") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const GammaRule rule{GammaRule::Kind::Bernoulli, 0.5, 11};
  const double a = kTau / 2.0;
  const Box region(Vec{-500.0}, Vec{500.0});
  const BorelCounterexample ce = make_borel_counterexample(cps, w, rule, a, region);

  // L1 data comes entirely from the point-free cube of volume a.
  CHECK(ce.window.geometric().empty());
  CHECK(ce.window.measure() == doctest::Approx(a).epsilon(1e-12));
  CHECK(ce.cube_side == doctest::Approx(a));

  // The cube is disjoint from the original window hull.
  CHECK(ce.cube_center[0] - 0.5 * ce.cube_side >= w.l1_hull().hi[0]);

  // Cutting with the decorated window at t = 0 returns exactly Gamma.
  const Patch cut = cut_project(cps, ce.window, Vec{0.0}, Vec{0.0}, region);
  CHECK(integer_coords(cut.points) == integer_coords(ce.gamma));
  CHECK(cut.points.size() < cut_project(cps, w, Vec{0.0}, Vec{0.0}, region).points.size());
}

TEST_CASE("counterexample construction rejects decorated inputs") {
  const Cps cps = make_fibonacci();
  const Window decorated(1, {Box({-1.0}, {0.6})}, {Box({2.0}, {2.5})});
  CHECK_THROWS_AS(make_borel_counterexample(cps, decorated, GammaRule{}, 1.0,
                                            Box(Vec{-100.0}, Vec{100.0})),
                  ConfigError);
}
