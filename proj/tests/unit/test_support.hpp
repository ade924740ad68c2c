#pragma once

#include <cmath>
#include <vector>

#include "rejopt/numerics.hpp"

namespace rejopt::test_support {

// Random orthogonal matrix from Gram-Schmidt on Gaussian columns.
inline Matrix random_orthogonal(RngStream& rng, std::size_t n) {
  std::vector<Vector> cols;
  while (cols.size() < n) {
    Vector v = sample_standard_normal(rng, n);
    for (const auto& q : cols) {
      const double proj = dot(v, q);
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q[i];
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-8) continue;
    for (auto& x : v) x /= norm;
    cols.push_back(std::move(v));
  }
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
  return q;
}

// SPD matrix Q diag(lambda) Q^T with eigenvalues log-spaced in [1, condition].
inline Matrix random_spd(RngStream& rng, std::size_t n, double condition) {
  const Matrix q = random_orthogonal(rng, n);
  Vector lambda(n);
  for (std::size_t i = 0; i < n; ++i)
    lambda[i] = n == 1 ? 1.0 : std::pow(condition, static_cast<double>(i) / static_cast<double>(n - 1));
  Matrix a = multiply(multiply(q, Matrix::diagonal(lambda)), transpose(q));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  return a;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace rejopt::test_support
