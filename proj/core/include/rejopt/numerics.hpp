#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rejopt/error.hpp"

namespace rejopt {

using Vector = std::vector<double>;

/// Dense row-major matrix of finite doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionMismatch when entries.size() != rows * cols and
  /// InvalidArgument on non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const noexcept {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(const Matrix& a) noexcept;
bool is_symmetric(const Matrix& a, double relative_tolerance = 1e-12) noexcept;

/// Lower Cholesky factor L with A = L L^T. Pivots below 1e-12 times the
/// largest diagonal entry of A are rejected with NotPositiveDefinite.
Matrix cholesky_factor(const Matrix& a);

/// Solves A X = B for symmetric positive-definite A via Cholesky.
Matrix solve_spd(const Matrix& a, const Matrix& b);
Vector solve_spd(const Matrix& a, std::span<const double> b);

/// Ratio of largest to smallest eigenvalue of a symmetric matrix; +inf when
/// the smallest eigenvalue is not positive.
double spd_condition_number(const Matrix& a);

/// v^T A v, summed as sum_i sum_j v_i A_ij v_j.
double quadratic_form(const Matrix& a, std::span<const double> v);

/// Deterministic random stream keyed by (master_seed, stream_index).
///
/// Streams with the same key produce identical sequences independently of
/// any other stream, so Monte-Carlo trials can own a stream each and run in
/// any order. Normal variates use the Marsaglia polar method on top of
/// mt19937_64 rather than std::normal_distribution, whose algorithm is
/// implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  double standard_normal();
  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

Vector sample_standard_normal(RngStream& rng, std::size_t n);

}  // namespace rejopt
