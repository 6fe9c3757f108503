#include <doctest.h>

#include <cmath>
#include <complex>

#include "aperiodic/averaging.hpp"
#include "aperiodic/errors.hpp"
#include "helpers.hpp"

using namespace aperiodic;
using namespace testhelpers;

namespace {

Patch fibonacci_patch(double radius) {
  const Cps cps = make_fibonacci();
  return cut_project(cps, fibonacci_window(), Vec{0.0}, Vec{0.0},
                     Box(Vec{-radius}, Vec{radius}));
}

}  // namespace

TEST_CASE("density estimate and empty regions") {
  const Patch patch = fibonacci_patch(300.0);
  CHECK(density_estimate(patch) ==
        doctest::Approx(static_cast<double>(patch.points.size()) / 600.0));

  Patch degenerate = patch;
  degenerate.region = Box(Vec{1.0}, Vec{1.0});
  CHECK_THROWS_AS(density_estimate(degenerate), EmptyRegion);
}

TEST_CASE("autocorrelation estimate structure") {
  const Cps cps = make_fibonacci();
  const Patch patch = fibonacci_patch(300.0);
  const auto est = autocorrelation_estimate(cps, patch, 6.0);

  // eta(0) equals the density by construction.
  CHECK(est.at_zero() == doctest::Approx(density_estimate(patch)));

  for (const auto& e : est.entries) {
    // symmetry: eta(z) == eta(-z)
    std::vector<long long> neg(e.dn.size());
    for (std::size_t i = 0; i < e.dn.size(); ++i) neg[i] = -e.dn[i];
    const auto* mirror = est.find(neg);
    REQUIRE(mirror != nullptr);
    CHECK(mirror->value == doctest::Approx(e.value));
    // keys carry exact lattice physical parts
    CHECK(e.z[0] == doctest::Approx(cps.physical_part(e.dn)[0]).epsilon(1e-14));
    CHECK(std::abs(e.z[0]) <= 6.0 * (1.0 + 1e-9));
  }

  // sorted by integer key, and lookup by physical difference agrees
  for (std::size_t i = 1; i < est.entries.size(); ++i)
    CHECK(est.entries[i - 1].dn < est.entries[i].dn);
  const auto* by_z = est.find_physical(est.entries.front().z);
  REQUIRE(by_z != nullptr);
  CHECK(by_z->dn == est.entries.front().dn);

  CHECK_THROWS_AS(autocorrelation_estimate(cps, patch, 1000.0), RangeTooLarge);
}

TEST_CASE("fourier-bohr estimate at zero frequency is the density") {
  const Patch patch = fibonacci_patch(250.0);
  const auto est = fourier_bohr_estimate(patch, Vec{0.0});
  CHECK(est.value.real() == doctest::Approx(density_estimate(patch)));
  CHECK(est.value.imag() == doctest::Approx(0.0));
  CHECK(est.radius == doctest::Approx(250.0));
}

TEST_CASE("convergence scan flags error tails") {
  const std::complex<double> target = 1.0;
  ScanTable good = convergence_scan({{1.0, 1.3}, {2.0, 1.2}, {4.0, 1.05}}, target);
  CHECK(good.error_tail_nonincreasing);
  CHECK(good.rows.front().radius == 1.0);
  CHECK(good.rows.back().abs_error == doctest::Approx(0.05));

  ScanTable bad = convergence_scan({{1.0, 1.1}, {2.0, 1.3}}, target);
  CHECK_FALSE(bad.error_tail_nonincreasing);
}

TEST_CASE("provenance mismatch is rejected") {
  Patch a = fibonacci_patch(50.0);
  a.cps_id = "cps:one";
  Patch b = a;
  b.cps_id = "cps:two";
  CHECK_THROWS_AS(check_same_provenance({a, b}), InconsistentProvenance);
  b.cps_id = a.cps_id;
  CHECK_NOTHROW(check_same_provenance({a, b}));
}

TEST_CASE("kernels are normalized product bumps") {
  const Kernel box{Vec{0.0}, 0.5, Kernel::Shape::Box};
  const Kernel tri{Vec{0.2}, 0.4, Kernel::Shape::Triangle};
  for (const Kernel& k : {box, tri}) {
    double integral = 0.0;
    const double step = 1e-4;
    for (double u = k.center[0] - k.halfwidth; u <= k.center[0] + k.halfwidth; u += step)
      integral += k(Vec{u}) * step;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(k(Vec{k.center[0] + k.halfwidth + 0.01}) == 0.0);
  }
}

TEST_CASE("birkhoff average of a periodic comb is its density power") {
  // Integer comb on [-50, 50): the box-kernel convolution is exactly 1
  // everywhere, so the product average is 1 for any number of factors.
  Patch comb;
  comb.region = Box(Vec{-50.0}, Vec{50.0});
  for (int i = -55; i <= 55; ++i) {
    LatticePoint p;
    p.n = {i};
    p.x = {static_cast<double>(i)};
    p.x_star = {0.0};
    comb.points.push_back(p);
  }
  const Kernel k{Vec{0.0}, 0.5, Kernel::Shape::Box};
  CHECK(birkhoff_product_average(comb, {k}, 0.1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(birkhoff_product_average(comb, {k, k}, 0.1) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(birkhoff_product_average(comb, {k}, 0.5), StepTooCoarse);
}
