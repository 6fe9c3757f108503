#include "aperiodic/cps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aperiodic/errors.hpp"

namespace aperiodic {

namespace {

// Cap the witness scan so high-dimensional schemes do not explode; the
// acceptance scenarios are d = m = 1 where the full radius is cheap.
int effective_witness_radius(int requested, int dim) {
  const double budget = 2.5e7;
  const int cap = static_cast<int>(std::floor((std::pow(budget, 1.0 / dim) - 1.0) / 2.0));
  return std::max(1, std::min(requested, cap));
}

}  // namespace

Cps Cps::make(int d, int m, Matrix basis, int witness_radius) {
  if (d < 1 || m < 1) throw ConfigError("cps: d and m must be >= 1");
  if (basis.n != d + m) throw ConfigError("cps: basis must be square of size d+m");

  Cps cps;
  cps.d_ = d;
  cps.m_ = m;
  cps.basis_ = std::move(basis);
  cps.det_ = determinant(cps.basis_);
  if (std::abs(cps.det_) < kDetEps)
    throw SingularBasis("cps: |det(basis)| = " + std::to_string(std::abs(cps.det_)));
  cps.inv_basis_ = inverse(cps.basis_);

  const int dim = d + m;
  const int radius = effective_witness_radius(witness_radius, dim);

  // Single scan over the integer cube feeds both witnesses: the injectivity
  // certificate (no near-kernel vector for pi_G) and the coarse-grid density
  // heuristic for pi_H(L) on [0,1)^m with cells of width 0.5.
  const int cells_per_axis = 2;
  int total_cells = 1;
  for (int i = 0; i < m; ++i) total_cells *= cells_per_axis;
  std::vector<char> cell_hit(static_cast<std::size_t>(total_cells), 0);
  int cells_remaining = total_cells;

  double min_phys = std::numeric_limits<double>::infinity();

  std::vector<long long> n(static_cast<std::size_t>(dim), -radius);
  Vec pt(static_cast<std::size_t>(dim));
  bool done = false;
  while (!done) {
    bool zero = true;
    for (long long v : n)
      if (v != 0) { zero = false; break; }
    if (!zero) {
      for (int r = 0; r < dim; ++r) {
        double acc = 0.0;
        for (int c = 0; c < dim; ++c)
          acc += cps.basis_.at(r, c) * static_cast<double>(n[static_cast<std::size_t>(c)]);
        pt[static_cast<std::size_t>(r)] = acc;
      }
      double phys2 = 0.0;
      for (int r = 0; r < d; ++r) phys2 += pt[static_cast<std::size_t>(r)] * pt[static_cast<std::size_t>(r)];
      min_phys = std::min(min_phys, std::sqrt(phys2));

      if (cells_remaining > 0) {
        int cell = 0;
        bool in_grid = true;
        for (int r = 0; r < m; ++r) {
          const double v = pt[static_cast<std::size_t>(d + r)];
          double frac = v - std::floor(v);
          if (frac < 0.0 || frac >= 1.0) { in_grid = false; break; }
          cell = cell * cells_per_axis + std::min(cells_per_axis - 1,
                     static_cast<int>(frac * cells_per_axis));
        }
        if (in_grid && !cell_hit[static_cast<std::size_t>(cell)]) {
          cell_hit[static_cast<std::size_t>(cell)] = 1;
          --cells_remaining;
        }
      }
    }
    for (int i = dim - 1; i >= 0; --i) {
      if (++n[static_cast<std::size_t>(i)] <= radius) break;
      n[static_cast<std::size_t>(i)] = -radius;
      if (i == 0) done = true;
    }
  }

  cps.witness_.radius = radius;
  cps.witness_.min_physical_norm = min_phys;
  cps.witness_.injectivity_ok = min_phys >= kInjectivityEps;
  cps.witness_.density_ok = (cells_remaining == 0);

  if (!cps.witness_.injectivity_ok)
    throw InjectivityFailure("cps: integer vector with physical norm " +
                             std::to_string(min_phys) + " found within radius " +
                             std::to_string(radius));
  return cps;
}

double Cps::density() const { return 1.0 / std::abs(det_); }

double lattice_density(const Cps& cps) { return cps.density(); }

LatticePoint Cps::point(const std::vector<long long>& n) const {
  LatticePoint p;
  p.n = n;
  Vec full = mat_vec(basis_, n);
  p.x.assign(full.begin(), full.begin() + d_);
  p.x_star.assign(full.begin() + d_, full.end());
  return p;
}

Vec Cps::physical_part(const std::vector<long long>& n) const {
  Vec out(static_cast<std::size_t>(d_), 0.0);
  for (int r = 0; r < d_; ++r) {
    double acc = 0.0;
    for (int c = 0; c < dim(); ++c)
      acc += basis_.at(r, c) * static_cast<double>(n[static_cast<std::size_t>(c)]);
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

Vec Cps::internal_part(const std::vector<long long>& n) const {
  Vec out(static_cast<std::size_t>(m_), 0.0);
  for (int r = 0; r < m_; ++r) {
    double acc = 0.0;
    for (int c = 0; c < dim(); ++c)
      acc += basis_.at(d_ + r, c) * static_cast<double>(n[static_cast<std::size_t>(c)]);
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

void Cps::integer_bounds(const Box& physical_box, const Box& internal_box,
                         std::vector<long long>& lo, std::vector<long long>& hi) const {
  const int D = dim();
  lo.assign(static_cast<std::size_t>(D), 0);
  hi.assign(static_cast<std::size_t>(D), 0);
  for (int j = 0; j < D; ++j) {
    double mn = 0.0, mx = 0.0;
    for (int r = 0; r < D; ++r) {
      const double c = inv_basis_.at(j, r);
      const double a = r < d_ ? physical_box.lo[static_cast<std::size_t>(r)]
                              : internal_box.lo[static_cast<std::size_t>(r - d_)];
      const double b = r < d_ ? physical_box.hi[static_cast<std::size_t>(r)]
                              : internal_box.hi[static_cast<std::size_t>(r - d_)];
      mn += std::min(c * a, c * b);
      mx += std::max(c * a, c * b);
    }
    lo[static_cast<std::size_t>(j)] = static_cast<long long>(std::ceil(mn - 1e-9));
    hi[static_cast<std::size_t>(j)] = static_cast<long long>(std::floor(mx + 1e-9));
  }
}

std::vector<LatticePoint> Cps::enumerate(const Box& physical_box, const Box& internal_box,
                                         std::uint64_t budget) const {
  const int D = dim();
  if (physical_box.dim() != d_ || internal_box.dim() != m_)
    throw ConfigError("enumerate: box dimensions do not match the scheme");

  std::vector<long long> nlo, nhi;
  integer_bounds(physical_box, internal_box, nlo, nhi);

  long double cube = 1.0L;
  for (int j = 0; j < D; ++j) {
    const long long w = nhi[static_cast<std::size_t>(j)] - nlo[static_cast<std::size_t>(j)] + 1;
    if (w <= 0) return {};
    cube *= static_cast<long double>(w);
  }
  if (cube > static_cast<long double>(budget))
    throw RegionTooLarge("enumerate: integer bounding box holds ~" +
                         std::to_string(static_cast<double>(cube)) +
                         " candidates, budget is " + std::to_string(budget));

  // Row target intervals: rows 0..d-1 physical, d..D-1 internal.
  Vec row_lo(static_cast<std::size_t>(D)), row_hi(static_cast<std::size_t>(D));
  for (int r = 0; r < D; ++r) {
    row_lo[static_cast<std::size_t>(r)] = r < d_ ? physical_box.lo[static_cast<std::size_t>(r)]
                                                 : internal_box.lo[static_cast<std::size_t>(r - d_)];
    row_hi[static_cast<std::size_t>(r)] = r < d_ ? physical_box.hi[static_cast<std::size_t>(r)]
                                                 : internal_box.hi[static_cast<std::size_t>(r - d_)];
  }

  // rest_min[j][r], rest_max[j][r]: interval of sum_{i>=j} basis[r][i]*n_i
  // over the global integer bounds; used to prune coordinate j-1 choices.
  std::vector<Vec> rest_min(static_cast<std::size_t>(D + 1), Vec(static_cast<std::size_t>(D), 0.0));
  std::vector<Vec> rest_max = rest_min;
  for (int j = D - 1; j >= 0; --j) {
    for (int r = 0; r < D; ++r) {
      const double b = basis_.at(r, j);
      const double a1 = b * static_cast<double>(nlo[static_cast<std::size_t>(j)]);
      const double a2 = b * static_cast<double>(nhi[static_cast<std::size_t>(j)]);
      rest_min[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          rest_min[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(r)] + std::min(a1, a2);
      rest_max[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] =
          rest_max[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(r)] + std::max(a1, a2);
    }
  }

  std::vector<LatticePoint> out;
  std::vector<long long> n(static_cast<std::size_t>(D), 0);
  Vec fixed(static_cast<std::size_t>(D), 0.0);  // sum over chosen coordinates, per row

  constexpr double kSlack = 1e-7;

  // Depth-first over integer coordinates in increasing order gives
  // lexicographic output without a final sort.
  auto recurse = [&](auto&& self, int j, const Vec& fix) -> void {
    if (j == D) {
      LatticePoint p = point(n);
      if (!physical_box.contains(p.x, 0.0)) return;
      if (!internal_box.contains(p.x_star, 0.0)) return;
      out.push_back(std::move(p));
      return;
    }
    double lo_j = static_cast<double>(nlo[static_cast<std::size_t>(j)]);
    double hi_j = static_cast<double>(nhi[static_cast<std::size_t>(j)]);
    for (int r = 0; r < D; ++r) {
      const double b = basis_.at(r, j);
      if (b == 0.0) continue;
      const double lo_resid = row_lo[static_cast<std::size_t>(r)] - fix[static_cast<std::size_t>(r)] -
                              rest_max[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(r)];
      const double hi_resid = row_hi[static_cast<std::size_t>(r)] - fix[static_cast<std::size_t>(r)] -
                              rest_min[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(r)];
      double a = lo_resid / b, c = hi_resid / b;
      if (a > c) std::swap(a, c);
      lo_j = std::max(lo_j, a - kSlack);
      hi_j = std::min(hi_j, c + kSlack);
    }
    const long long first = static_cast<long long>(std::ceil(lo_j));
    const long long last = static_cast<long long>(std::floor(hi_j));
    Vec next_fix = fix;
    for (long long v = first; v <= last; ++v) {
      n[static_cast<std::size_t>(j)] = v;
      for (int r = 0; r < D; ++r)
        next_fix[static_cast<std::size_t>(r)] =
            fix[static_cast<std::size_t>(r)] + basis_.at(r, j) * static_cast<double>(v);
      self(self, j + 1, next_fix);
    }
  };
  recurse(recurse, 0, fixed);
  return out;
}

DualCps dual_cps(const Cps& cps) {
  Matrix dual_basis = inverse(transpose(cps.basis()));
  return Cps::make(cps.d(), cps.m(), std::move(dual_basis), cps.witnesses().radius);
}

}  // namespace aperiodic
