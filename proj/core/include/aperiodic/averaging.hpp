#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "aperiodic/modelset.hpp"

namespace aperiodic {

// Centered boxes [-R, R]^d. Nested centered boxes are van Hove, and the
// tempered bound |U_j (A_n - A_j)| <= 2^d |A_n| holds with equality witness
// A_n - A_n = 2 A_n.
struct VanHoveSequence {
  std::vector<double> radii;  // strictly increasing

  static double tempered_constant(int d) { return std::pow(2.0, d); }
};

// point count / region volume. Throws EmptyRegion on a zero-volume region.
double density_estimate(const Patch& patch);

// Empirical autocorrelation coefficients eta_k(z) keyed by the integer
// lattice coordinates of the difference; z is the exact lattice physical
// part of that integer difference, never a float bin.
struct AutocorrelationEstimate {
  struct Entry {
    std::vector<long long> dn;
    Vec z;
    double value = 0.0;
  };
  std::vector<Entry> entries;  // sorted by dn
  double region_volume = 0.0;
  std::size_t point_count = 0;

  const Entry* find(const std::vector<long long>& dn) const;
  // Lookup by physical difference with snap tolerance; nullptr when absent.
  const Entry* find_physical(const Vec& z, double snap = 1e-9) const;
  double at_zero() const;
};

AutocorrelationEstimate autocorrelation_estimate(const Cps& cps, const Patch& patch,
                                                 double max_range);

struct FourierBohrEstimate {
  Vec frequency;
  std::complex<double> value;
  double radius = 0.0;  // half-width of the averaging region used
};

FourierBohrEstimate fourier_bohr_estimate(const Patch& patch, const Vec& k);

// Per-radius error table against a supplied prediction.
struct ScanRow {
  double radius = 0.0;
  std::complex<double> value;
  std::complex<double> prediction;
  double abs_error = 0.0;
};

struct ScanTable {
  std::vector<ScanRow> rows;          // sorted by radius
  bool error_tail_nonincreasing = false;
};

// Throws InconsistentProvenance unless all patches share cps/window ids and
// (s, t) parameters.
void check_same_provenance(const std::vector<Patch>& patches);

ScanTable convergence_scan(const std::vector<std::pair<double, std::complex<double>>>& values,
                           std::complex<double> prediction);

// Compactly supported product kernel, normalized to integral one per factor.
struct Kernel {
  enum class Shape { Box, Triangle };
  Vec center;
  double halfwidth = 0.5;
  Shape shape = Shape::Box;

  double operator()(const Vec& v) const;
};

// (1/|A|) int_A prod_j (delta_patch * phi_j)(u) du by midpoint Riemann sum.
// Throws StepTooCoarse unless the narrowest kernel support carries >= 8
// samples.
double birkhoff_product_average(const Patch& patch, const std::vector<Kernel>& kernels,
                                double sample_step);

}  // namespace aperiodic
