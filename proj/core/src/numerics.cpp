#include "rejopt/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rejopt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_positive_definite: return "NotPositiveDefinite";
    case ErrorCode::singular_design: return "SingularDesign";
    case ErrorCode::zero_evidence: return "ZeroEvidence";
    case ErrorCode::enumeration_too_large: return "EnumerationTooLarge";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;

constexpr double kPivotTolerance = 1e-12;

void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) throw Error(code, message);
}

Matrix from_eigen(const RowMajor& m) {
  return Matrix(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                std::vector<double>(m.data(), m.data() + m.size()));
}

// Factorizes A and applies the pivot policy shared by cholesky_factor and
// solve_spd.
Eigen::LLT<RowMajor> checked_llt(const Matrix& a) {
  require(a.is_square(), ErrorCode::dimension_mismatch, "matrix must be square");
  require(is_symmetric(a), ErrorCode::not_positive_definite, "matrix is not symmetric");
  const auto n = static_cast<Eigen::Index>(a.rows());
  ConstMap view(a.entries().data(), n, n);
  Eigen::LLT<RowMajor> llt(view);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::not_positive_definite, "Cholesky factorization hit a nonpositive pivot");
  }
  double max_diag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) max_diag = std::max(max_diag, view(i, i));
  const RowMajor l = llt.matrixL();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (l(i, i) * l(i, i) <= kPivotTolerance * max_diag) {
      throw Error(ErrorCode::not_positive_definite, "Cholesky pivot below tolerance");
    }
  }
  return llt;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(entries_.size() == rows_ * cols_, ErrorCode::dimension_mismatch,
          "entry count does not match rows * cols");
  require(std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); }),
          ErrorCode::invalid_argument, "matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::dimension_mismatch, "inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Vector multiply(const Matrix& a, std::span<const double> v) {
  require(a.cols() == v.size(), ErrorCode::dimension_mismatch, "matrix/vector dimensions differ");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::dimension_mismatch, "vector lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const Matrix& a) noexcept {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

bool is_symmetric(const Matrix& a, double relative_tolerance) noexcept {
  if (!a.is_square()) return false;
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > relative_tolerance * scale) return false;
  return true;
}

Matrix cholesky_factor(const Matrix& a) {
  const RowMajor l = checked_llt(a).matrixL();
  return from_eigen(l);
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::dimension_mismatch, "right-hand side row count differs");
  const auto llt = checked_llt(a);
  ConstMap rhs(b.entries().data(), static_cast<Eigen::Index>(b.rows()),
               static_cast<Eigen::Index>(b.cols()));
  const RowMajor x = llt.solve(RowMajor(rhs));
  return from_eigen(x);
}

Vector solve_spd(const Matrix& a, std::span<const double> b) {
  const Matrix x = solve_spd(a, Matrix(b.size(), 1, Vector(b.begin(), b.end())));
  return Vector(x.entries().begin(), x.entries().end());
}

double spd_condition_number(const Matrix& a) {
  require(a.is_square(), ErrorCode::dimension_mismatch, "matrix must be square");
  if (a.rows() == 0) return 1.0;
  const auto n = static_cast<Eigen::Index>(a.rows());
  const RowMajor sym = ConstMap(a.entries().data(), n, n);
  Eigen::SelfAdjointEigenSolver<RowMajor> solver(sym, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double quadratic_form(const Matrix& a, std::span<const double> v) {
  require(a.is_square() && a.rows() == v.size(), ErrorCode::dimension_mismatch,
          "quadratic form needs a square matrix matching the vector");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * a(i, j) * v[j];
  return s;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  // seed_seq's mixing is fully specified by the standard, as is mt19937_64.
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32),
                    0x9e3779b9u};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::size_t RngStream::uniform_index(std::size_t n) {
  require(n > 0, ErrorCode::invalid_argument, "uniform_index needs n > 0");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = 0;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

Vector sample_standard_normal(RngStream& rng, std::size_t n) {
  Vector out(n);
  for (auto& v : out) v = rng.standard_normal();
  return out;
}

}  // namespace rejopt
