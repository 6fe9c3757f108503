#include <doctest.h>

#include <cmath>
#include <complex>

#include "aperiodic/diffraction.hpp"
#include "aperiodic/errors.hpp"
#include "helpers.hpp"

using namespace aperiodic;
using namespace testhelpers;

TEST_CASE("predicted autocorrelation carries the closed-form coefficients") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const auto coeffs = predicted_autocorrelation(cps, w, 8.0);
  REQUIRE_FALSE(coeffs.empty());

  bool saw_zero = false;
  for (const auto& c : coeffs) {
    if (c.n == std::vector<long long>{0, 0}) {
      saw_zero = true;
      // dens * c_B(0) = tau / sqrt(5), frozen reference value
      CHECK(c.value == doctest::Approx(0.72360679774997896).epsilon(1e-12));
    }
    CHECK(c.value == doctest::Approx(cps.density() * w.covariogram(c.z_star)).epsilon(1e-12));
    CHECK(std::abs(c.z[0]) <= 8.0 * (1.0 + 1e-9));
    CHECK(c.value > 0.0);  // zero coefficients are omitted
  }
  CHECK(saw_zero);
}

TEST_CASE("fibonacci spectrum has the frozen central intensity") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const auto spectrum = predicted_diffraction(cps, w, 5.0, 1e-4);
  REQUIRE_FALSE(spectrum.peaks.empty());

  // Strongest peak sits at k = 0 with intensity (dens * theta(W))^2 = tau^2/5.
  const Peak& top = spectrum.peaks.front();
  CHECK(top.k[0] == doctest::Approx(0.0));
  CHECK(top.intensity == doctest::Approx(0.52360679774997896).epsilon(1e-12));

  const double dens = cps.density();
  for (std::size_t i = 0; i < spectrum.peaks.size(); ++i) {
    const Peak& p = spectrum.peaks[i];
    CHECK(p.intensity >= spectrum.threshold);
    const double amp = std::abs(w.fourier_indicator(p.l));
    CHECK(p.intensity == doctest::Approx(dens * dens * amp * amp).epsilon(1e-12));
    if (i > 0) CHECK(spectrum.peaks[i - 1].intensity >= p.intensity);
    CHECK(std::abs(p.k[0]) <= 5.0 + 1e-6);
  }

  // The spectrum is symmetric under k -> -k.
  for (const Peak& p : spectrum.peaks) {
    bool found = false;
    for (const Peak& q : spectrum.peaks)
      if (std::abs(q.k[0] + p.k[0]) < 1e-9 && std::abs(q.intensity - p.intensity) < 1e-12)
        found = true;
    CHECK(found);
  }
}

TEST_CASE("threshold controls the certified internal cutoff") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const auto coarse = predicted_diffraction(cps, w, 3.0, 1e-2);
  const auto fine = predicted_diffraction(cps, w, 3.0, 1e-5);
  CHECK(fine.internal_cutoff[0] > coarse.internal_cutoff[0]);
  CHECK(fine.peaks.size() >= coarse.peaks.size());
  CHECK_THROWS_AS(predicted_diffraction(cps, w, 3.0, 1e-9, Cps::kDefaultBudget, 5),
                  ThresholdTooLow);
}

TEST_CASE("theorem-side fourier-bohr coefficients") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const Vec s{0.0}, t{0.0};

  // k = 0: dens * conj(1_B^(0)) = dens * theta(W) = tau/sqrt(5).
  const auto at_zero = predicted_fourier_bohr(cps, w, s, t, Vec{0.0});
  CHECK(at_zero.real() == doctest::Approx(0.72360679774997896).epsilon(1e-12));
  CHECK(at_zero.imag() == doctest::Approx(0.0));

  // A frequency far from every dual physical part gives zero.
  CHECK(predicted_fourier_bohr(cps, w, s, t, Vec{0.1234567}) == std::complex<double>(0.0));

  // |a_chi|^2 equals the peak intensity at matching frequencies.
  const auto spectrum = predicted_diffraction(cps, w, 3.0, 1e-3);
  for (std::size_t i = 0; i < std::min<std::size_t>(spectrum.peaks.size(), 6); ++i) {
    const Peak& p = spectrum.peaks[i];
    const auto a = predicted_fourier_bohr(cps, w, s, t, p.k, 1e-6,
                                          spectrum.internal_cutoff[0] + 1.0);
    CHECK(std::norm(a) == doctest::Approx(p.intensity).epsilon(1e-10));
  }
}

TEST_CASE("cpp check matches peaks by frequency") {
  const Cps cps = make_fibonacci();
  const Window w = fibonacci_window();
  const auto spectrum = predicted_diffraction(cps, w, 3.0, 1e-3);
  REQUIRE_FALSE(spectrum.peaks.empty());

  FourierBohrEstimate fb;
  fb.frequency = spectrum.peaks.front().k;
  fb.value = std::sqrt(spectrum.peaks.front().intensity);
  const auto report = cpp_check(spectrum, {fb}, 1e-6);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows.front().pass);
  CHECK(report.all_pass());

  FourierBohrEstimate stray;
  stray.frequency = Vec{0.333333};
  stray.value = 0.1;
  CHECK_THROWS_AS(cpp_check(spectrum, {stray}, 1e-6), FrequencyMismatch);
}
