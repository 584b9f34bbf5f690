#include "lpair/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace lpair {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols)
    : spec_(spec), rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(spec)) {}

Matrix Matrix::identity(const FieldSpec& spec, std::size_t n) {
  Matrix m(spec, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement::one(spec);
  return m;
}

Matrix Matrix::diagonal(const Vector& entries) {
  require(!entries.empty(), "diagonal matrix needs at least one entry");
  Matrix m(entries.front().field(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& spec, const std::vector<Vector>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(spec, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (!(rows[i][j].field() == spec)) throw FieldError("matrix entry from " + rows[i][j].field().to_string());
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::from_integers(const FieldSpec& spec, const std::vector<std::vector<long>>& rows) {
  std::vector<Vector> converted;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(spec, x);
    converted.push_back(std::move(v));
  }
  return from_rows(spec, converted);
}

Matrix Matrix::from_columns(const FieldSpec& spec, std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(spec, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require(columns[j].size() == rows, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  require(v.size() == cols_, "vector length mismatch");
  Vector out(rows_, FieldElement::zero(spec_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(const FieldElement& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "matrix product dimension mismatch");
  if (!(a.spec_ == b.spec_)) throw FieldError("matrix field mismatch");
  Matrix out(a.spec_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldElement& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(spec_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

Matrix Matrix::pow(unsigned exponent) const {
  require(is_square(), "power of a non-square matrix");
  Matrix result = identity(spec_, rows_);
  for (unsigned k = 0; k < exponent; ++k) result = result * *this;
  return result;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]\n";
  }
  return os.str();
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const FieldElement inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const FieldElement factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  Matrix r = m;
  const auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), FieldElement::zero(m.field()));
    v[free] = FieldElement::one(m.field());
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix inverse(const Matrix& m) {
  require(m.is_square(), "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = FieldElement::one(m.field());
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularMatrixError("matrix is singular");
  Matrix inv(m.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

FieldElement determinant(const Matrix& m) {
  require(m.is_square(), "determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  FieldElement det = FieldElement::one(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return FieldElement::zero(m.field());
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const FieldElement inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const FieldElement factor = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

Matrix conjugate(const Matrix& m, const Matrix& g) { return inverse(g) * m * g; }

namespace {

// Returns [1, c_1, ..., c_n] with det(lambda I - M) = lambda^n + c_1 lambda^{n-1} + ... + c_n.
Vector berkowitz_vector(const Matrix& m) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return {FieldElement::one(f)};
  if (n == 1) return {FieldElement::one(f), -m(0, 0)};
  Matrix sub(f, n - 1);
  Vector row0(n - 1, FieldElement::zero(f)), col0(n - 1, FieldElement::zero(f));
  for (std::size_t i = 1; i < n; ++i) {
    row0[i - 1] = m(0, i);
    col0[i - 1] = m(i, 0);
    for (std::size_t j = 1; j < n; ++j) sub(i - 1, j - 1) = m(i, j);
  }
  // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{n-2} C
  Vector diags{FieldElement::one(f), -m(0, 0)};
  Vector power = col0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    FieldElement dot = FieldElement::zero(f);
    for (std::size_t j = 0; j + 1 < n; ++j) dot += row0[j] * power[j];
    diags.push_back(-dot);
    if (k + 2 < n) power = sub.apply(power);
  }
  const Vector tail = berkowitz_vector(sub);  // length n
  Vector out(n + 1, FieldElement::zero(f));
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n && j <= i; ++j) out[i] += diags[i - j] * tail[j];
  }
  return out;
}

}  // namespace

Polynomial char_poly(const Matrix& m) {
  require(m.is_square(), "characteristic polynomial of a non-square matrix");
  Vector v = berkowitz_vector(m);
  std::reverse(v.begin(), v.end());
  return {m.field(), v};
}

LinearSolution solve_linear(const Matrix& a, const Vector& b) {
  require(b.size() == a.rows(), "right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = row_reduce(aug);
  LinearSolution out;
  if (!pivots.empty() && pivots.back() == a.cols()) {
    out.kind = LinearSolution::Kind::inconsistent;
    return out;
  }
  out.particular.assign(a.cols(), FieldElement::zero(a.field()));
  for (std::size_t k = 0; k < pivots.size(); ++k) out.particular[pivots[k]] = aug(k, a.cols());
  out.basis = nullspace(a);
  out.kind = out.basis.empty() ? LinearSolution::Kind::unique : LinearSolution::Kind::underdetermined;
  return out;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::diagonal:
      return "diagonal";
    case Shape::lower_bidiagonal:
      return "lower-bidiagonal";
    case Shape::upper_bidiagonal:
      return "upper-bidiagonal";
    case Shape::irreducible_tridiagonal:
      return "irreducible-tridiagonal";
    case Shape::tridiagonal:
      return "tridiagonal";
    case Shape::other:
      return "other";
  }
  return "other";
}

namespace {

// every nonzero entry satisfies lo <= j - i <= hi
bool within_band(const Matrix& m, long lo, long hi) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const long off = static_cast<long>(j) - static_cast<long>(i);
      if ((off < lo || off > hi) && !m(i, j).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_diagonal(const Matrix& m) { return m.is_square() && within_band(m, 0, 0); }
bool is_lower_bidiagonal(const Matrix& m) { return m.is_square() && within_band(m, -1, 0); }
bool is_upper_bidiagonal(const Matrix& m) { return m.is_square() && within_band(m, 0, 1); }
bool is_tridiagonal(const Matrix& m) { return m.is_square() && within_band(m, -1, 1); }

bool is_irreducible_tridiagonal(const Matrix& m) {
  if (!is_tridiagonal(m)) return false;
  for (std::size_t i = 1; i < m.rows(); ++i) {
    if (m(i, i - 1).is_zero() || m(i - 1, i).is_zero()) return false;
  }
  return true;
}

Shape shape(const Matrix& m) {
  if (is_diagonal(m)) return Shape::diagonal;
  if (is_lower_bidiagonal(m)) return Shape::lower_bidiagonal;
  if (is_upper_bidiagonal(m)) return Shape::upper_bidiagonal;
  if (is_irreducible_tridiagonal(m)) return Shape::irreducible_tridiagonal;
  if (is_tridiagonal(m)) return Shape::tridiagonal;
  return Shape::other;
}

std::vector<Matrix> primitive_idempotents(const Matrix& m, const Vector& eigenvalues) {
  const std::size_t n = m.rows();
  const Matrix id = Matrix::identity(m.field(), n);
  std::vector<Matrix> out;
  out.reserve(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    Matrix e = id;
    FieldElement denom = FieldElement::one(m.field());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      if (j == i) continue;
      e = e * (m - id * eigenvalues[j]);
      denom *= eigenvalues[i] - eigenvalues[j];
    }
    out.push_back(e * denom.inverse());
  }
  return out;
}

std::optional<EigenData> eigen_data_from(const Matrix& m, const Vector& eigenvalues) {
  require(m.is_square(), "eigen data of a non-square matrix");
  const std::size_t n = m.rows();
  if (eigenvalues.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(eigenvalues[i].field() == m.field())) throw FieldError("eigenvalue from a different field");
    for (std::size_t j = 0; j < i; ++j) {
      if (eigenvalues[i] == eigenvalues[j]) return std::nullopt;
    }
  }
  const Matrix id = Matrix::identity(m.field(), n);
  std::vector<Vector> vectors;
  for (const auto& theta : eigenvalues) {
    auto ns = nullspace(m - id * theta);
    // n distinct eigenvalues force one-dimensional eigenspaces
    if (ns.size() != 1) return std::nullopt;
    Vector v = std::move(ns.front());
    auto first = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
    const FieldElement scale = first->inverse();
    for (auto& x : v) x *= scale;
    vectors.push_back(std::move(v));
  }
  EigenData data;
  data.eigenvalues = eigenvalues;
  data.eigenvectors = Matrix::from_columns(m.field(), n, vectors);
  data.idempotents = primitive_idempotents(m, eigenvalues);
  return data;
}

std::optional<EigenData> is_multiplicity_free(const Matrix& m) {
  require(m.is_square(), "multiplicity test of a non-square matrix");
  const auto roots = roots_in_field(char_poly(m));
  if (roots.size() != m.rows()) return std::nullopt;
  Vector eigenvalues;
  for (const auto& r : roots) {
    if (r.multiplicity != 1) return std::nullopt;
    eigenvalues.push_back(r.value);
  }
  return eigen_data_from(m, eigenvalues);
}

}  // namespace lpair
