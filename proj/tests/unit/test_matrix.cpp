#include <doctest.h>

#include <random>

#include "lpair/generators.hpp"
#include "support/corpus.hpp"

using namespace lpair;
using lpair::testing::random_invertible;
using lpair::testing::random_matrix;

namespace {

FieldElement laplace_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return FieldElement::one(m.field());
  if (n == 1) return m(0, 0);
  FieldElement sum = FieldElement::zero(m.field());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix minor(m.field(), n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    FieldElement term = m(0, j) * laplace_det(minor);
    sum += j % 2 ? -term : term;
  }
  return sum;
}

Polynomial poly(const FieldSpec& f, std::vector<long> coeffs) {
  Vector c;
  for (long x : coeffs) c.emplace_back(f, x);
  return Polynomial(f, c);
}

}  // namespace

TEST_CASE("char_poly examples") {
  const FieldSpec q;
  CHECK(char_poly(Matrix::identity(q, 2)) == poly(q, {1, -2, 1}));
  auto ex = example_section2(q);
  CHECK(char_poly(ex.a_star) == poly(q, {9, 0, -10, 0, 1}));
  CHECK(char_poly(ex.a) == poly(q, {9, 0, -10, 0, 1}));
}

TEST_CASE("char_poly agrees with Laplace expansion") {
  std::mt19937_64 rng(23);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::prime(101), FieldSpec::quadratic(5)}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      Matrix m = random_matrix(rng, f, n);
      Polynomial p = char_poly(m);
      CHECK(p.degree() == static_cast<long>(n));
      CHECK(p.leading().is_one());
      for (long x = 0; x <= static_cast<long>(n); ++x) {
        FieldElement xe(f, x);
        CHECK(p.eval(xe) == laplace_det(Matrix::identity(f, n) * xe - m));
      }
      CHECK(determinant(m) == laplace_det(m));
    }
  }
}

TEST_CASE("char_poly is a similarity invariant") {
  std::mt19937_64 rng(29);
  for (const FieldSpec& f : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    for (std::size_t n = 1; n <= 7; ++n) {
      Matrix m = random_matrix(rng, f, n);
      Matrix g = random_invertible(rng, f, n);
      CHECK(char_poly(conjugate(m, g)) == char_poly(m));
    }
  }
}

TEST_CASE("multiplicity-free witnesses") {
  const FieldSpec q;
  auto ex = example_section2(q);
  auto w = is_multiplicity_free(ex.a);
  REQUIRE(w);
  CHECK(w->eigenvalues == Vector{FieldElement(q, -3), FieldElement(q, -1), FieldElement(q, 1), FieldElement(q, 3)});
  CHECK_FALSE(is_multiplicity_free(Matrix::from_integers(q, {{1, 1}, {0, 1}})));
  CHECK_FALSE(is_multiplicity_free(Matrix::from_integers(q, {{0, 2}, {1, 0}})));
  const FieldSpec k = FieldSpec::quadratic(2);
  CHECK(is_multiplicity_free(Matrix::from_integers(k, {{0, 2}, {1, 0}})));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const FieldSpec f = t % 2 ? FieldSpec::prime(101) : FieldSpec::rationals();
    const std::size_t n = 1 + t % 5;
    Vector diag;
    for (std::size_t i = 0; i < n; ++i) diag.emplace_back(f, static_cast<long>(i * i) - 3);
    Matrix m = conjugate(Matrix::diagonal(diag), random_invertible(rng, f, n));
    auto e = is_multiplicity_free(m);
    REQUIRE(e);
    Matrix sum(f, n), recon(f, n);
    for (std::size_t i = 0; i < n; ++i) {
      sum += e->idempotents[i];
      recon += e->idempotents[i] * e->eigenvalues[i];
      CHECK(rank(e->idempotents[i]) == 1);
      for (std::size_t j = 0; j < n; ++j) {
        Matrix prod = e->idempotents[i] * e->idempotents[j];
        CHECK(prod == (i == j ? e->idempotents[i] : Matrix(f, n)));
      }
      Vector v = e->eigenvectors.column(i);
      auto first = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
      CHECK(first->is_one());
      Vector mv = m.apply(v);
      for (std::size_t r = 0; r < n; ++r) CHECK(mv[r] == v[r] * e->eigenvalues[i]);
    }
    CHECK(sum == Matrix::identity(f, n));
    CHECK(recon == m);
    CHECK(rank(e->eigenvectors) == n);
    CHECK(eigen_data_from(m, diag));
  }
}

TEST_CASE("shape predicates") {
  const FieldSpec q;
  CHECK(shape(example_section2(q).a) == Shape::irreducible_tridiagonal);
  CHECK(shape(example_section2(FieldSpec::prime(3)).a) == Shape::tridiagonal);
  CHECK(shape(Matrix(q, 3)) == Shape::diagonal);
  CHECK(shape(Matrix::identity(q, 1)) == Shape::diagonal);
  CHECK(is_irreducible_tridiagonal(Matrix::identity(q, 1)));
  CHECK(shape(Matrix::from_integers(q, {{1, 0}, {1, 2}})) == Shape::lower_bidiagonal);
  CHECK(shape(Matrix::from_integers(q, {{1, 5}, {0, 2}})) == Shape::upper_bidiagonal);
  CHECK(shape(Matrix::from_integers(q, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})) == Shape::other);
  CHECK(to_string(Shape::irreducible_tridiagonal) == "irreducible-tridiagonal");

  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    Matrix m(q, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (rng() % 3 == 0) m(i, j) = FieldElement(q, 1 + static_cast<long>(rng() % 3));
    if (is_irreducible_tridiagonal(m)) CHECK(is_tridiagonal(m));
    if (is_diagonal(m)) CHECK((is_lower_bidiagonal(m) && is_upper_bidiagonal(m)));
    if (is_lower_bidiagonal(m) || is_upper_bidiagonal(m)) CHECK(is_tridiagonal(m));
  }
}

TEST_CASE("inverse, products and conjugation") {
  const FieldSpec q;
  auto ex = example_section2(q);
  CHECK(ex.p * ex.p == Matrix::identity(q, 4) * FieldElement(q, 8));
  CHECK(conjugate(ex.a, ex.p) == ex.a_star);
  CHECK(conjugate(ex.a, Matrix::identity(q, 4)) == ex.a);
  CHECK(inverse(ex.p) * ex.p == Matrix::identity(q, 4));
  CHECK_THROWS_AS(inverse(Matrix::from_integers(q, {{1, 2}, {2, 4}})), SingularMatrixError);
  CHECK_THROWS(Matrix(q, 2) * Matrix(q, 3));
}

TEST_CASE("solve_linear") {
  const FieldSpec q;
  Vector b{FieldElement(q, 3), FieldElement(q, -1)};
  auto s = solve_linear(Matrix::identity(q, 2), b);
  CHECK(s.kind == LinearSolution::Kind::unique);
  CHECK(s.particular == b);
  auto z = solve_linear(Matrix(q, 2), Vector(2, FieldElement::zero(q)));
  CHECK(z.kind == LinearSolution::Kind::underdetermined);
  CHECK(z.basis.size() == 2);
  auto i = solve_linear(Matrix::from_integers(q, {{1, 1}, {1, 1}}), {FieldElement(q, 1), FieldElement(q, 2)});
  CHECK(i.kind == LinearSolution::Kind::inconsistent);
}

TEST_CASE("nullspace vectors are annihilated") {
  std::mt19937_64 rng(41);
  const FieldSpec f = FieldSpec::prime(5);
  for (int t = 0; t < 50; ++t) {
    Matrix m = random_matrix(rng, f, 4);
    auto ns = nullspace(m);
    CHECK(ns.size() + rank(m) == 4);
    for (const auto& v : ns)
      for (const auto& x : m.apply(v)) CHECK(x.is_zero());
  }
}
