#pragma once

/// @file matrix.hpp
/// Dense exact linear algebra over a FieldSpec.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpair/field.hpp"
#include "lpair/polynomial.hpp"

namespace lpair {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<FieldElement>;

/// Row-major dense matrix. The spec'd operations work on square matrices;
/// rectangular shapes exist for linear systems and bases.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols);
  Matrix(const FieldSpec& spec, std::size_t n) : Matrix(spec, n, n) {}

  static Matrix identity(const FieldSpec& spec, std::size_t n);
  static Matrix diagonal(const Vector& entries);
  static Matrix from_rows(const FieldSpec& spec, const std::vector<Vector>& rows);
  /// Rows of integers embedded into the field.
  static Matrix from_integers(const FieldSpec& spec, const std::vector<std::vector<long>>& rows);
  /// Columns given as vectors of equal length.
  static Matrix from_columns(const FieldSpec& spec, std::size_t rows, const std::vector<Vector>& columns);

  const FieldSpec& field() const { return spec_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Vector apply(const Vector& v) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const FieldElement& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const FieldElement& s) { return a *= s; }
  friend Matrix operator*(const FieldElement& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
  friend Matrix multiply(const Matrix& a, const Matrix& b);

  Matrix transpose() const;
  bool is_zero() const;
  Matrix pow(unsigned exponent) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldSpec spec_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

/// Brings m to reduced row-echelon form in place, pivoting on the first
/// nonzero entry of each column; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);
std::size_t rank(Matrix m);
/// Basis of {x : m x = 0}; each vector has a 1 at its free variable, so the
/// first nonzero coordinate of the basis read in RREF order is 1.
std::vector<Vector> nullspace(const Matrix& m);
Matrix inverse(const Matrix& m);
FieldElement determinant(const Matrix& m);
/// G^{-1} M G.
Matrix conjugate(const Matrix& m, const Matrix& g);

/// det(lambda I - M), monic of degree n, by Berkowitz's division-free
/// recurrence (valid in every characteristic).
Polynomial char_poly(const Matrix& m);

struct LinearSolution {
  enum class Kind { unique, inconsistent, underdetermined };
  Kind kind = Kind::inconsistent;
  Vector particular;          // empty when inconsistent
  std::vector<Vector> basis;  // homogeneous solutions when underdetermined
};

/// Full solution set of a x = b.
LinearSolution solve_linear(const Matrix& a, const Vector& b);

enum class Shape {
  diagonal,
  lower_bidiagonal,
  upper_bidiagonal,
  irreducible_tridiagonal,
  tridiagonal,
  other,
};

std::string to_string(Shape s);

/// Most specific label; a 1x1 matrix is diagonal (and vacuously irreducible
/// tridiagonal, see is_irreducible_tridiagonal).
Shape shape(const Matrix& m);
bool is_diagonal(const Matrix& m);
bool is_lower_bidiagonal(const Matrix& m);
bool is_upper_bidiagonal(const Matrix& m);
bool is_tridiagonal(const Matrix& m);
bool is_irreducible_tridiagonal(const Matrix& m);

/// Spectral data of a multiplicity-free operator.
struct EigenData {
  Vector eigenvalues;             // distinct
  Matrix eigenvectors;            // column i belongs to eigenvalues[i]
  std::vector<Matrix> idempotents;
};

/// Primitive idempotents via E_i = prod_{j != i} (M - theta_j I)/(theta_i - theta_j).
std::vector<Matrix> primitive_idempotents(const Matrix& m, const Vector& eigenvalues);

/// Witness when every root of char_poly(m) is simple and in the field.
/// Eigenvalues are listed in canonical_less order.
std::optional<EigenData> is_multiplicity_free(const Matrix& m);

/// Same, with candidate eigenvalues supplied by the caller: succeeds iff they
/// are n distinct eigenvalues of m. Avoids root finding when the spectrum is
/// known in closed form.
std::optional<EigenData> eigen_data_from(const Matrix& m, const Vector& eigenvalues);

}  // namespace lpair
