#include "aperiodic/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "aperiodic/errors.hpp"

namespace aperiodic {

double density_estimate(const Patch& patch) {
  const double vol = patch.region.volume();
  if (!(vol > 0.0)) throw EmptyRegion("density_estimate: region has no volume");
  return static_cast<double>(patch.points.size()) / vol;
}

const AutocorrelationEstimate::Entry* AutocorrelationEstimate::find(
    const std::vector<long long>& dn) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), dn,
                             [](const Entry& e, const std::vector<long long>& key) {
                               return e.dn < key;
                             });
  if (it != entries.end() && it->dn == dn) return &*it;
  return nullptr;
}

const AutocorrelationEstimate::Entry* AutocorrelationEstimate::find_physical(
    const Vec& z, double snap) const {
  for (const Entry& e : entries) {
    bool match = true;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (std::abs(e.z[i] - z[i]) > snap) { match = false; break; }
    if (match) return &e;
  }
  return nullptr;
}

double AutocorrelationEstimate::at_zero() const {
  const std::vector<long long> zero(entries.empty() ? 0 : entries.front().dn.size(), 0);
  const Entry* e = find(zero);
  return e ? e->value : 0.0;
}

AutocorrelationEstimate autocorrelation_estimate(const Cps& cps, const Patch& patch,
                                                 double max_range) {
  const Box& region = patch.region;
  double half_width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < region.lo.size(); ++i)
    half_width = std::min(half_width, 0.5 * (region.hi[i] - region.lo[i]));
  if (max_range > half_width)
    throw RangeTooLarge("autocorrelation_estimate: max_range exceeds region half-width");

  AutocorrelationEstimate est;
  est.region_volume = region.volume();
  est.point_count = patch.points.size();

  // Differences come from integer coordinates, so the support is exactly the
  // lattice; counting i<j once and mirroring keeps eta symmetric by
  // construction.
  std::map<std::vector<long long>, long long> counts;
  const auto& pts = patch.points;
  const std::size_t N = pts.size();
  if (N > 0) {
    const std::size_t D = pts.front().n.size();
    std::vector<long long> dn(D);
    counts[std::vector<long long>(D, 0)] = static_cast<long long>(N);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = i + 1; j < N; ++j) {
        if (pts[j].x[0] - pts[i].x[0] > max_range + 1e-9) break;  // sorted by x[0]
        for (std::size_t q = 0; q < D; ++q) dn[q] = pts[j].n[q] - pts[i].n[q];
        const Vec z = cps.physical_part(dn);
        double norm2 = 0.0;
        for (double v : z) norm2 += v * v;
        if (norm2 > max_range * max_range * (1.0 + 1e-12)) continue;
        counts[dn] += 1;
        std::vector<long long> neg(D);
        for (std::size_t q = 0; q < D; ++q) neg[q] = -dn[q];
        counts[neg] += 1;
      }
    }
  }

  for (const auto& [dn, c] : counts) {
    AutocorrelationEstimate::Entry e;
    e.dn = dn;
    e.z = cps.physical_part(dn);
    e.value = static_cast<double>(c) / est.region_volume;
    est.entries.push_back(std::move(e));
  }
  return est;
}

FourierBohrEstimate fourier_bohr_estimate(const Patch& patch, const Vec& k) {
  using namespace std::complex_literals;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double vol = patch.region.volume();
  FourierBohrEstimate est;
  est.frequency = k;
  est.radius = vol > 0.0 ? 0.5 * (patch.region.hi[0] - patch.region.lo[0]) : 0.0;
  std::complex<double> acc = 0.0;
  for (const LatticePoint& p : patch.points) {
    double phase = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) phase += k[i] * p.x[i];
    acc += std::exp(-1i * two_pi * phase);
  }
  est.value = vol > 0.0 ? acc / vol : 0.0;
  return est;
}

void check_same_provenance(const std::vector<Patch>& patches) {
  for (std::size_t i = 1; i < patches.size(); ++i) {
    const Patch& a = patches.front();
    const Patch& b = patches[i];
    if (a.cps_id != b.cps_id || a.window_id != b.window_id || a.s != b.s || a.t != b.t)
      throw InconsistentProvenance("convergence_scan: patches disagree on cps/window/params");
  }
}

ScanTable convergence_scan(const std::vector<std::pair<double, std::complex<double>>>& values,
                           std::complex<double> prediction) {
  ScanTable table;
  for (const auto& [radius, value] : values) {
    ScanRow row;
    row.radius = radius;
    row.value = value;
    row.prediction = prediction;
    row.abs_error = std::abs(value - prediction);
    table.rows.push_back(row);
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.radius < b.radius; });
  table.error_tail_nonincreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i].abs_error > table.rows[i - 1].abs_error)
      table.error_tail_nonincreasing = false;
  return table;
}

double Kernel::operator()(const Vec& v) const {
  double val = 1.0;
  for (std::size_t i = 0; i < center.size(); ++i) {
    const double u = std::abs(v[i] - center[i]);
    if (u >= halfwidth) return 0.0;
    if (shape == Shape::Box)
      val *= 0.5 / halfwidth;
    else
      val *= (1.0 - u / halfwidth) / halfwidth;
  }
  return val;
}

double birkhoff_product_average(const Patch& patch, const std::vector<Kernel>& kernels,
                                double sample_step) {
  if (kernels.empty()) return 1.0;
  const Box& region = patch.region;
  const int d = region.dim();

  double min_half = std::numeric_limits<double>::infinity();
  for (const Kernel& k : kernels) {
    if (static_cast<int>(k.center.size()) != d)
      throw ConfigError("birkhoff_product_average: kernel dimension mismatch");
    min_half = std::min(min_half, k.halfwidth);
  }
  if (sample_step > 2.0 * min_half / 8.0 + 1e-15)
    throw StepTooCoarse("birkhoff_product_average: step does not resolve the narrowest kernel");

  std::vector<int> counts(static_cast<std::size_t>(d));
  Vec steps(static_cast<std::size_t>(d));
  double cell = 1.0;
  for (int i = 0; i < d; ++i) {
    const double w = region.hi[static_cast<std::size_t>(i)] - region.lo[static_cast<std::size_t>(i)];
    counts[static_cast<std::size_t>(i)] = std::max(1, static_cast<int>(std::ceil(w / sample_step)));
    steps[static_cast<std::size_t>(i)] = w / counts[static_cast<std::size_t>(i)];
    cell *= steps[static_cast<std::size_t>(i)];
  }

  // Points are sorted by first physical coordinate: restrict every kernel sum
  // to the first-axis slab that can contribute.
  std::vector<double> first_coord;
  first_coord.reserve(patch.points.size());
  for (const LatticePoint& p : patch.points) first_coord.push_back(p.x[0]);

  double integral = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Vec u(static_cast<std::size_t>(d));
  Vec diff(static_cast<std::size_t>(d));
  bool done = patch.points.empty();
  while (!done) {
    for (int i = 0; i < d; ++i)
      u[static_cast<std::size_t>(i)] = region.lo[static_cast<std::size_t>(i)] +
                                       (idx[static_cast<std::size_t>(i)] + 0.5) *
                                           steps[static_cast<std::size_t>(i)];
    double prod = 1.0;
    for (const Kernel& k : kernels) {
      const double lo = u[0] - k.center[0] - k.halfwidth;
      const double hi = u[0] - k.center[0] + k.halfwidth;
      auto first = std::lower_bound(first_coord.begin(), first_coord.end(), lo);
      double conv = 0.0;
      for (auto it = first; it != first_coord.end() && *it <= hi; ++it) {
        const LatticePoint& p = patch.points[static_cast<std::size_t>(it - first_coord.begin())];
        for (int i = 0; i < d; ++i)
          diff[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] - p.x[static_cast<std::size_t>(i)];
        conv += k(diff);
      }
      prod *= conv;
      if (prod == 0.0) break;
    }
    integral += prod * cell;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < counts[static_cast<std::size_t>(i)]) break;
      idx[static_cast<std::size_t>(i)] = 0;
      if (i == 0) done = true;
    }
  }
  return integral / region.volume();
}

}  // namespace aperiodic
