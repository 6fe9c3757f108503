#include "aperiodic/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aperiodic/errors.hpp"

namespace aperiodic {

std::vector<AutocorrelationCoefficient> predicted_autocorrelation(const Cps& cps,
                                                                  const Window& w,
                                                                  double max_range,
                                                                  std::uint64_t budget) {
  std::vector<AutocorrelationCoefficient> out;
  if (w.l1_empty()) return out;

  Box support = w.covariogram_support();
  for (std::size_t i = 0; i < support.lo.size(); ++i) {
    support.lo[i] -= 1e-9;
    support.hi[i] += 1e-9;
  }
  Box physical(Vec(static_cast<std::size_t>(cps.d()), -max_range - 1e-9),
               Vec(static_cast<std::size_t>(cps.d()), max_range + 1e-9));

  const double dens = cps.density();
  for (const LatticePoint& p : cps.enumerate(physical, support, budget)) {
    double norm2 = 0.0;
    for (double v : p.x) norm2 += v * v;
    if (norm2 > max_range * max_range * (1.0 + 1e-12)) continue;
    const double value = dens * w.covariogram(p.x_star);
    if (std::abs(value) <= 1e-15) continue;
    out.push_back({p.n, p.x, p.x_star, value});
  }
  return out;
}

DiffractionSpectrum predicted_diffraction(const Cps& cps, const Window& w, double k_max,
                                          double threshold, std::uint64_t budget,
                                          std::size_t peak_budget) {
  DiffractionSpectrum spectrum;
  spectrum.threshold = threshold;
  spectrum.k_max = k_max;
  spectrum.internal_cutoff.assign(static_cast<std::size_t>(cps.m()), 0.0);
  if (w.l1_empty()) return spectrum;

  const double dens = cps.density();
  const auto boxes = w.l1_boxes();
  // Eq-level truncation: past |l_j| > l_max_j the decay bound
  // |1_B^(l)| <= sum_boxes (1/(pi |l_j|)) prod_{i != j} w_i drops the squared
  // transform below dens^2-scaled threshold, so no peak can survive.
  const double amp_cut = std::sqrt(threshold) / dens;
  for (int j = 0; j < cps.m(); ++j) {
    double coeff = 0.0;
    for (const Box& b : boxes) {
      double side = 1.0;
      for (int i = 0; i < cps.m(); ++i) {
        if (i == j) continue;
        side *= b.hi[static_cast<std::size_t>(i)] - b.lo[static_cast<std::size_t>(i)];
      }
      coeff += side;
    }
    spectrum.internal_cutoff[static_cast<std::size_t>(j)] =
        std::max(1e-6, coeff / (std::numbers::pi * amp_cut));
  }

  const DualCps dual = dual_cps(cps);
  Box physical(Vec(static_cast<std::size_t>(cps.d()), -k_max - 1e-9),
               Vec(static_cast<std::size_t>(cps.d()), k_max + 1e-9));
  Box internal = Box(spectrum.internal_cutoff, spectrum.internal_cutoff);
  for (int j = 0; j < cps.m(); ++j) {
    internal.lo[static_cast<std::size_t>(j)] =
        -spectrum.internal_cutoff[static_cast<std::size_t>(j)] - 1e-9;
    internal.hi[static_cast<std::size_t>(j)] += 1e-9;
  }

  for (const LatticePoint& q : dual.enumerate(physical, internal, budget)) {
    const double amp = std::abs(w.fourier_indicator(q.x_star));
    const double intensity = dens * dens * amp * amp;
    if (intensity < threshold) continue;
    spectrum.peaks.push_back({q.n, q.x, q.x_star, intensity});
    if (spectrum.peaks.size() > peak_budget)
      throw ThresholdTooLow("predicted_diffraction: peak count exceeds budget");
  }
  std::sort(spectrum.peaks.begin(), spectrum.peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.intensity != b.intensity) return a.intensity > b.intensity;
    return a.k < b.k;
  });
  return spectrum;
}

std::complex<double> predicted_fourier_bohr(const Cps& cps, const Window& w, const Vec& s,
                                            const Vec& t, const Vec& k, double dual_match_tol,
                                            double internal_cutoff, std::uint64_t budget) {
  using namespace std::complex_literals;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  const DualCps dual = dual_cps(cps);
  Box physical(k, k);
  for (std::size_t i = 0; i < k.size(); ++i) {
    physical.lo[i] -= dual_match_tol;
    physical.hi[i] += dual_match_tol + 1e-12;
  }
  Box internal(Vec(static_cast<std::size_t>(cps.m()), -internal_cutoff),
               Vec(static_cast<std::size_t>(cps.m()), internal_cutoff));

  const auto matches = dual.enumerate(physical, internal, budget);
  if (matches.empty()) return 0.0;
  if (matches.size() > 1)
    throw AmbiguousDualMatch("predicted_fourier_bohr: " + std::to_string(matches.size()) +
                             " dual points match the frequency");

  const LatticePoint& q = matches.front();
  double phase = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) phase += q.x[i] * s[i];
  for (std::size_t i = 0; i < q.x_star.size(); ++i) phase += q.x_star[i] * t[i];
  return cps.density() * std::exp(1i * two_pi * phase) *
         std::conj(w.fourier_indicator(q.x_star));
}

bool ComparisonReport::all_pass() const {
  for (const ComparisonRow& row : rows)
    if (!row.pass) return false;
  return true;
}

ComparisonReport cpp_check(const DiffractionSpectrum& spectrum,
                           const std::vector<FourierBohrEstimate>& fb_values, double tol,
                           double freq_match_tol) {
  ComparisonReport report;
  for (const FourierBohrEstimate& fb : fb_values) {
    const Peak* match = nullptr;
    for (const Peak& peak : spectrum.peaks) {
      bool ok = true;
      for (std::size_t i = 0; i < fb.frequency.size(); ++i)
        if (std::abs(peak.k[i] - fb.frequency[i]) > freq_match_tol) { ok = false; break; }
      if (ok) { match = &peak; break; }
    }
    if (!match)
      throw FrequencyMismatch("cpp_check: no spectrum peak at the estimate frequency");

    ComparisonRow row;
    std::ostringstream label;
    label << "k=(";
    for (std::size_t i = 0; i < fb.frequency.size(); ++i)
      label << (i ? "," : "") << fb.frequency[i];
    label << ")";
    row.label = label.str();
    row.predicted = match->intensity;
    row.empirical = std::norm(fb.value);
    row.abs_error = std::abs(row.empirical - row.predicted);
    row.tolerance = tol;
    row.pass = row.abs_error <= tol;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace aperiodic
