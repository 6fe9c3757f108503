#pragma once

#include <cstdint>
#include <vector>

#include "aperiodic/geometry.hpp"
#include "aperiodic/linalg.hpp"

namespace aperiodic {

struct LatticePoint {
  std::vector<long long> n;  // integer coordinates w.r.t. the basis columns
  Vec x;                     // physical part, R^d
  Vec x_star;                // internal part, R^m

  bool operator==(const LatticePoint&) const = default;
};

// Euclidean cut-and-project scheme: a full-rank lattice in R^d x R^m whose
// basis columns generate it, with the first d coordinates physical and the
// last m internal. Projection to physical space must be injective on the
// lattice and the internal projection should be dense; neither condition is
// decidable from a float basis, so construction runs finite witness searches
// and records their outcome.
class Cps {
 public:
  struct WitnessReport {
    bool injectivity_ok = false;
    bool density_ok = false;       // non-fatal heuristic; false => DensityWarning
    int radius = 0;                // search radius actually used
    double min_physical_norm = 0;  // smallest ||pi_G(basis*n)|| seen over nonzero n
  };

  static constexpr double kDetEps = 1e-12;
  static constexpr double kInjectivityEps = 1e-9;

  // Validates and caches the inverse. Throws SingularBasis or
  // InjectivityFailure; a failed density heuristic is only recorded.
  static Cps make(int d, int m, Matrix basis, int witness_radius = 1000);

  int d() const { return d_; }
  int m() const { return m_; }
  int dim() const { return d_ + m_; }

  const Matrix& basis() const { return basis_; }
  const Matrix& inv_basis() const { return inv_basis_; }
  double det() const { return det_; }

  // dens(L) = 1/|det(basis)|. Haar measure is NOT renormalized.
  double density() const;

  const WitnessReport& witnesses() const { return witness_; }

  // Star map on integer coordinates: n -> (x, x_star) = basis*n.
  LatticePoint point(const std::vector<long long>& n) const;

  Vec physical_part(const std::vector<long long>& n) const;
  Vec internal_part(const std::vector<long long>& n) const;

  // All lattice points with physical part in physical_box and internal part
  // in internal_box (half-open membership), sorted lexicographically by
  // integer coordinates. Throws RegionTooLarge when the integer bounding box
  // of the product region exceeds `budget` candidates.
  std::vector<LatticePoint> enumerate(const Box& physical_box, const Box& internal_box,
                                      std::uint64_t budget = kDefaultBudget) const;

  // Integer bounding box of the product region (interval arithmetic on
  // inv_basis rows). Exposed for the brute-force test oracle.
  void integer_bounds(const Box& physical_box, const Box& internal_box,
                      std::vector<long long>& lo, std::vector<long long>& hi) const;

  static constexpr std::uint64_t kDefaultBudget = 200'000'000ull;

 private:
  Cps() = default;

  int d_ = 0, m_ = 0;
  Matrix basis_, inv_basis_;
  double det_ = 0.0;
  WitnessReport witness_;
};

double lattice_density(const Cps& cps);

// Dual scheme: basis = (basis^T)^-1, same physical/internal split. With the
// character convention t -> e^{2 pi i <k,t>}, every primal/dual pairing
// k.x + l.x_star is an integer.
using DualCps = Cps;
DualCps dual_cps(const Cps& cps);

}  // namespace aperiodic
