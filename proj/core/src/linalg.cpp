#include "aperiodic/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "aperiodic/errors.hpp"

namespace aperiodic {

Matrix Matrix::identity(int size) {
  Matrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
  return m;
}

double determinant(const Matrix& m) {
  Matrix lu = m;
  const int n = lu.n;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(lu.at(r, col)) > std::abs(lu.at(pivot, col))) pivot = r;
    if (lu.at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(lu.at(pivot, c), lu.at(col, c));
      det = -det;
    }
    det *= lu.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = lu.at(r, col) / lu.at(col, col);
      for (int c = col; c < n; ++c) lu.at(r, c) -= f * lu.at(col, c);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  const int n = m.n;
  Matrix aug = m;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(aug.at(r, col)) > std::abs(aug.at(pivot, col))) pivot = r;
    if (std::abs(aug.at(pivot, col)) < 1e-300)
      throw SingularBasis("matrix is numerically singular");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(aug.at(pivot, c), aug.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    const double p = aug.at(col, col);
    for (int c = 0; c < n; ++c) {
      aug.at(col, c) /= p;
      inv.at(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = aug.at(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        aug.at(r, c) -= f * aug.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.n);
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) t.at(c, r) = m.at(r, c);
  return t;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out(static_cast<std::size_t>(m.n), 0.0);
  for (int r = 0; r < m.n; ++r) {
    double acc = 0.0;
    for (int c = 0; c < m.n; ++c) acc += m.at(r, c) * v[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

Vec mat_vec(const Matrix& m, const std::vector<long long>& v) {
  Vec out(static_cast<std::size_t>(m.n), 0.0);
  for (int r = 0; r < m.n; ++r) {
    double acc = 0.0;
    for (int c = 0; c < m.n; ++c)
      acc += m.at(r, c) * static_cast<double>(v[static_cast<std::size_t>(c)]);
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

}  // namespace aperiodic
