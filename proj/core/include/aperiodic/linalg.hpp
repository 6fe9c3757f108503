#pragma once

#include <cstddef>
#include <vector>

namespace aperiodic {

using Vec = std::vector<double>;

// Small dense square matrix, row-major. All lattices here live in a handful
// of dimensions, so plain Gaussian elimination is all we need.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  Matrix(int size, std::vector<double> entries) : n(size), a(std::move(entries)) {}

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

  static Matrix identity(int size);

  bool operator==(const Matrix&) const = default;
};

double determinant(const Matrix& m);
Matrix inverse(const Matrix& m);      // throws SingularBasis
Matrix transpose(const Matrix& m);

Vec mat_vec(const Matrix& m, const Vec& v);
Vec mat_vec(const Matrix& m, const std::vector<long long>& v);

}  // namespace aperiodic
