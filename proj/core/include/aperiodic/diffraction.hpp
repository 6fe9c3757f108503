#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "aperiodic/averaging.hpp"
#include "aperiodic/cps.hpp"
#include "aperiodic/window.hpp"

namespace aperiodic {

// Predicted pure-point autocorrelation: coefficient dens(L) * c_B(z_star) at
// every lattice physical part z with ||z|| <= max_range and z_star in the
// covariogram support; zero coefficients omitted.
struct AutocorrelationCoefficient {
  std::vector<long long> n;  // lattice integer coordinates of z
  Vec z;
  Vec z_star;
  double value = 0.0;
};

std::vector<AutocorrelationCoefficient> predicted_autocorrelation(
    const Cps& cps, const Window& w, double max_range,
    std::uint64_t budget = Cps::kDefaultBudget);

// Bragg peak at a dual lattice point (k, l).
struct Peak {
  std::vector<long long> n;  // dual integer coordinates
  Vec k;                     // physical frequency
  Vec l;                     // internal part of the dual point
  double intensity = 0.0;
};

struct DiffractionSpectrum {
  std::vector<Peak> peaks;  // intensity descending, ties lexicographic by k
  double threshold = 0.0;
  double k_max = 0.0;
  Vec internal_cutoff;      // certified |l| truncation actually used
};

// Peaks with ||k||_inf <= k_max and intensity dens(L)^2 |1_B^(l)|^2 >=
// threshold. The internal truncation is certified from the box-window decay
// bound |1_B^(l)| <= sum_boxes prod_j min(w_j, 1/(pi |l_j|)).
DiffractionSpectrum predicted_diffraction(const Cps& cps, const Window& w, double k_max,
                                          double threshold,
                                          std::uint64_t budget = Cps::kDefaultBudget,
                                          std::size_t peak_budget = 100000);

// Theorem-side Fourier-Bohr coefficient. Nonzero exactly when k matches the
// physical part of a dual lattice point within dual_match_tol (searching
// internal parts up to internal_cutoff); then
//   dens(L) e^{2 pi i (k.s + l.t)} conj(1_B^(l)).
// The conjugation fixes the global phase so that the empirical exponential
// sums over generated patches converge to this value.
std::complex<double> predicted_fourier_bohr(const Cps& cps, const Window& w, const Vec& s,
                                            const Vec& t, const Vec& k,
                                            double dual_match_tol = 1e-6,
                                            double internal_cutoff = 50.0,
                                            std::uint64_t budget = Cps::kDefaultBudget);

struct ComparisonRow {
  std::string label;
  std::complex<double> predicted;
  std::complex<double> empirical;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::string predicted_provenance;
  std::string empirical_provenance;

  bool all_pass() const;
};

// Consistent Phase Property: gamma^({chi}) vs |a_chi|^2 per frequency.
// Throws FrequencyMismatch when an estimate has no matching peak.
ComparisonReport cpp_check(const DiffractionSpectrum& spectrum,
                           const std::vector<FourierBohrEstimate>& fb_values, double tol,
                           double freq_match_tol = 1e-9);

}  // namespace aperiodic
