#include <doctest.h>

#include "support/corpus.hpp"

using namespace lpair;

namespace {

Matrix bracket(const Matrix& x, const Matrix& y) { return x * y - y * x; }

}  // namespace

TEST_CASE("example fixture") {
  const FieldSpec q;
  auto ex = example_section2(q);
  CHECK(ex.p * ex.p == Matrix::identity(q, 4) * FieldElement(q, 8));
  CHECK(ex.a * ex.p == ex.p * ex.a_star);
}

TEST_CASE("sl2 module relations") {
  const FieldSpec q;
  for (std::size_t d = 0; d <= 10; ++d) {
    auto m = sl2_module(d, q);
    CHECK(bracket(m.h, m.e) == m.e * FieldElement(q, 2));
    CHECK(bracket(m.h, m.f) == m.f * FieldElement(q, -2));
    CHECK(bracket(m.e, m.f) == m.h);
  }
  CHECK_THROWS_AS(sl2_module(2, FieldSpec::prime(5)), GeneratorError);
}

TEST_CASE("sl2 pairs") {
  const FieldSpec q;
  auto [a, as] = sl2_pair(1, q);
  CHECK(a == Matrix::from_integers(q, {{1, 0}, {0, -1}}));
  CHECK(as == Matrix::from_integers(q, {{0, 1}, {1, 0}}));
  CHECK(is_leonard_pair(a, as).is_leonard_pair);
  for (std::size_t d = 3; d <= 8; ++d) {
    auto [x, y] = sl2_pair(d, q);
    auto r = is_leonard_pair(x, y);
    REQUIRE(r.is_leonard_pair);
    auto fp = fingerprint(extract_parameter_array(*r.witness));
    CHECK(fp.family == FamilyClass::classical);
    CHECK(*fp.beta == FieldElement(q, 2));
  }
  CHECK_THROWS_AS(sl2_pair(2, Sl2Element::h(q), Sl2Element::h(q)), GeneratorError);
  // e alone is nilpotent, not semisimple
  Sl2Element e{FieldElement::one(q), FieldElement::zero(q), FieldElement::zero(q)};
  CHECK_THROWS_AS(sl2_pair(2, e, Sl2Element::e_plus_f(q)), GeneratorError);
  // e - f has eigenvalues +-i, outside Q
  Sl2Element rot{FieldElement::one(q), FieldElement(q, -1), FieldElement::zero(q)};
  CHECK_THROWS_AS(sl2_pair(2, Sl2Element::h(q), rot), GeneratorError);
  // other semisimple generators: h + e and f
  Sl2Element he{FieldElement::one(q), FieldElement::zero(q), FieldElement::one(q)};
  Sl2Element ef{FieldElement(q, 3), FieldElement::one(q), FieldElement::one(q)};
  auto [x, y] = sl2_pair(4, he, ef);
  CHECK(is_multiplicity_free(x));
  CHECK(generates_sl2(he, ef));
}

TEST_CASE("U_q module relations") {
  const FieldSpec q;
  const FieldSpec k = FieldSpec::quadratic(2);
  for (const FieldElement& qq : {FieldElement(q, 2), FieldElement::parse(q, "3/2"), FieldElement::parse(k, "1+s")}) {
    const FieldSpec& f = qq.field();
    for (int eps : {1, -1}) {
      for (std::size_t d = 0; d <= 10; ++d) {
        auto m = uq_module(qq, eps, d);
        const Matrix id = Matrix::identity(f, d + 1);
        CHECK(m.k * m.k_inv == id);
        CHECK(m.k * m.e == m.e * m.k * (qq * qq));
        CHECK(m.k * m.f == m.f * m.k * (qq * qq).inverse());
        CHECK(m.e * m.f - m.f * m.e == (m.k - m.k_inv) * (qq - qq.inverse()).inverse());
      }
    }
  }
  CHECK(q_integer(FieldElement(q, 2), 3) == FieldElement::parse(q, "21/4"));
  CHECK_THROWS_AS(uq_module(FieldElement(q, 1), 1, 2), GeneratorError);
  CHECK_THROWS_AS(uq_module(FieldElement(q, -1), 1, 2), GeneratorError);
  CHECK_THROWS_AS(uq_module(FieldElement(q, 0), 1, 2), GeneratorError);
  CHECK_THROWS_AS(uq_module(FieldElement(FieldSpec::prime(7), 3), 1, 2), GeneratorError);
  CHECK_THROWS_AS(uq_module(FieldElement(q, 2), 0, 2), GeneratorError);
}

TEST_CASE("U_q pairs") {
  const FieldSpec q;
  const FieldElement two(q, 2), one = FieldElement::one(q);
  CHECK_FALSE(uq_pair(two, 1, 3, one, one).avoids_forbidden);
  auto p = uq_pair(two, 1, 3, one, FieldElement(q, 3));
  CHECK(p.avoids_forbidden);
  CHECK(is_leonard_pair(p.a, p.a_star).is_leonard_pair);
  auto p0 = uq_pair(two, 1, 0, one, one);
  CHECK(p0.a.rows() == 1);
  CHECK(is_leonard_pair(p0.a, p0.a_star).is_leonard_pair);
  CHECK_THROWS_AS(uq_pair(two, 1, 2, FieldElement::zero(q), one), GeneratorError);

  for (const FieldElement& qq : {two, FieldElement::parse(q, "3/2")}) {
    for (int eps : {1, -1}) {
      for (std::size_t d = 3; d <= 6; ++d) {
        auto u = uq_pair(qq, eps, d, one, FieldElement(q, 7));
        REQUIRE(u.avoids_forbidden);
        auto r = is_leonard_pair(u.a, u.a_star, u.spectra);
        REQUIRE(r.is_leonard_pair);
        auto fp = fingerprint(extract_parameter_array(*r.witness));
        CHECK(fp.family == FamilyClass::q_type);
        const FieldElement q2 = qq * qq;
        CHECK(*fp.beta == q2 + q2.inverse());
        CHECK(fit_askey_wilson(u.a, u.a_star)->beta == q2 + q2.inverse());
      }
    }
  }
}

TEST_CASE("boundary U_q inputs are recorded, not asserted") {
  const FieldSpec q;
  const FieldElement two(q, 2), one = FieldElement::one(q);
  for (std::size_t d = 1; d <= 4; ++d) {
    auto u = uq_pair(two, 1, d, one, two.pow(static_cast<long>(d) - 1));
    CHECK_FALSE(u.avoids_forbidden);
    auto r = is_leonard_pair(u.a, u.a_star);
    MESSAGE("forbidden U_q pair d=" << d << " recognized as Leonard pair: " << r.is_leonard_pair);
  }
}

TEST_CASE("small Galois fields") {
  for (unsigned q : {2U, 3U, 4U, 5U, 7U, 8U, 9U, 25U, 27U}) {
    SmallGaloisField f(q);
    for (unsigned a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      bool has_inverse = a == 0;
      for (unsigned b = 0; b < q; ++b) {
        has_inverse = has_inverse || f.mul(a, b) == 1;
        for (unsigned c = 0; c < q; ++c) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
      CHECK(has_inverse);
    }
  }
  CHECK_THROWS_AS(SmallGaloisField(6), GeneratorError);
}

TEST_CASE("subspace lattices") {
  CHECK(build_lattice(2, 2).points.size() == 5);
  CHECK(build_lattice(3, 2).points.size() == 16);
  CHECK(build_lattice(3, 3).points.size() == 28);
  CHECK(build_lattice(4, 2).points.size() == 67);
  CHECK(build_lattice(2, 4).field == FieldSpec::rationals());
  CHECK(build_lattice(2, 8).field == FieldSpec::quadratic(2));
  CHECK_THROWS_AS(build_lattice(6, 2), GeneratorError);
  CHECK_THROWS_AS(build_lattice(5, 7), GeneratorError);
  CHECK_THROWS_AS(build_lattice(2, 11), GeneratorError);
  CHECK_THROWS_AS(build_lattice(2, 6), GeneratorError);

  for (auto [n, qq] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {3, 3}, {2, 4}, {2, 9}}) {
    auto lat = build_lattice(n, qq);
    const FieldSpec& f = lat.field;
    const FieldElement s = lat.sqrt_q;
    CHECK(s * s == FieldElement(f, static_cast<long>(qq)));
    Matrix k_inv = inverse(lat.k);
    CHECK(lat.l * lat.r - lat.r * lat.l == (lat.k - k_inv) * (s - s.inverse()).inverse());
    CHECK(lat.k * lat.l == lat.l * lat.k * (s * s));
    CHECK(lat.k * lat.r == lat.r * lat.k * (s * s).inverse());

    CHECK(lattice_forbidden(lat, s.pow(static_cast<long>(n) - 1)));
    CHECK_THROWS_AS(lattice_pair(lat, FieldElement::one(f), s.pow(static_cast<long>(n) - 1)), GeneratorError);

    auto dec = lattice_pair(lat, FieldElement::one(f), FieldElement(f, 5));
    std::size_t total = 0, kernel_total = 0;
    for (const auto& c : dec.components) {
      total += c.d + 1;
      CHECK(c.recognition.is_leonard_pair);
      CHECK(c.d + 2 * c.lowest_rank == n);
      for (std::size_t j = 0; j <= c.d; ++j) {
        for (std::size_t x = 0; x < lat.points.size(); ++x) {
          if (!c.basis(x, j).is_zero()) CHECK(lat.dims[x] == c.lowest_rank + j);
        }
      }
    }
    CHECK(total == lat.points.size());
    for (unsigned r = 0; r <= n; ++r) {
      std::vector<std::size_t> here, below;
      for (std::size_t x = 0; x < lat.points.size(); ++x) {
        if (lat.dims[x] == r) here.push_back(x);
        if (r > 0 && lat.dims[x] + 1 == r) below.push_back(x);
      }
      Matrix block(f, below.empty() ? 1 : below.size(), here.size());
      for (std::size_t i = 0; i < below.size(); ++i)
        for (std::size_t j = 0; j < here.size(); ++j) block(i, j) = lat.l(below[i], here[j]);
      kernel_total += nullspace(block).size();
    }
    CHECK(dec.components.size() == kernel_total);
  }
}

TEST_CASE("restrict_to rejects non-invariant spans") {
  const FieldSpec q;
  Matrix m = Matrix::from_integers(q, {{0, 1}, {1, 0}});
  Matrix basis = Matrix::from_integers(q, {{1}, {0}});
  CHECK_THROWS_AS(restrict_to(m, basis), std::logic_error);
  CHECK(restrict_to(m, Matrix::from_integers(q, {{1}, {1}})) == Matrix::from_integers(q, {{1}}));
}
