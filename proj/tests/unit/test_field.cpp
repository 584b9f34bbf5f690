#include <doctest.h>

#include <random>
#include <set>

#include "lpair/generators.hpp"
#include "lpair/polynomial.hpp"

using namespace lpair;

namespace {

FieldElement parse(const FieldSpec& f, const char* s) { return FieldElement::parse(f, s); }

Polynomial poly(const FieldSpec& f, std::vector<long> coeffs) {
  Vector c;
  for (long x : coeffs) c.emplace_back(f, x);
  return Polynomial(f, c);
}

std::vector<FieldSpec> sample_fields() {
  return {FieldSpec::rationals(), FieldSpec::prime(101), FieldSpec::prime((1ULL << 61) - 1),
          FieldSpec::quadratic(2), FieldSpec::quadratic(-3)};
}

}  // namespace

TEST_CASE("characteristic") {
  CHECK(characteristic(FieldSpec::rationals()) == 0);
  CHECK(characteristic(FieldSpec::prime(7)) == 7);
  CHECK(characteristic(FieldSpec::quadratic(2)) == 0);
}

TEST_CASE("field specs reject degenerate parameters") {
  CHECK_THROWS_AS(FieldSpec::prime(4), FieldError);
  CHECK_THROWS_AS(FieldSpec::prime(1), FieldError);
  CHECK_THROWS_AS(FieldSpec::quadratic(1), FieldError);
  CHECK_THROWS_AS(FieldSpec::quadratic(0), FieldError);
  CHECK_THROWS_AS(FieldSpec::quadratic(12), FieldError);
  CHECK_THROWS_AS(FieldSpec::parse("R"), FieldError);
  CHECK(FieldSpec::parse("GF(7)") == FieldSpec::prime(7));
  CHECK(FieldSpec::parse("Q(sqrt(-5))") == FieldSpec::quadratic(-5));
  CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
  for (const auto& f : sample_fields()) CHECK(FieldSpec::parse(f.to_string()) == f);
}

TEST_CASE("primality") {
  std::set<std::uint64_t> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (std::uint64_t n = 0; n < 50; ++n) CHECK(is_prime(n) == small.count(n) > 0);
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("serialization is canonical") {
  const FieldSpec q;
  CHECK(parse(q, "6/4").to_string() == "3/2");
  CHECK(parse(q, "-4/2").to_string() == "-2");
  CHECK(parse(q, "0/7").to_string() == "0");
  const FieldSpec p = FieldSpec::prime(7);
  CHECK(parse(p, "-1").to_string() == "6");
  CHECK(parse(p, "1/2").to_string() == "4");
  CHECK_THROWS_AS(parse(p, "1/7"), FieldError);
  const FieldSpec k = FieldSpec::quadratic(2);
  CHECK(parse(k, "1/2+3/4*s").to_string() == "1/2+3/4*s");
  CHECK(parse(k, "2/4-s").to_string() == "1/2-1*s");
  CHECK(parse(k, "s").to_string() == "1*s");
  CHECK(parse(k, "0+0*s").to_string() == "0");
  CHECK(FieldElement::generator(k) * FieldElement::generator(k) == FieldElement(k, 2));
  CHECK_THROWS_AS(parse(q, "1/0"), FieldError);
  CHECK_THROWS_AS(parse(q, "abc"), FieldError);

  // a/b + c/d directly and through a common denominator
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    FieldElement x = random_element(rng, q), y = random_element(rng, q);
    mpq_class common = (x.rational_part().get_num() * y.rational_part().get_den() +
                        y.rational_part().get_num() * x.rational_part().get_den());
    common /= x.rational_part().get_den() * y.rational_part().get_den();
    CHECK((x + y).to_string() == FieldElement(q, common).to_string());
  }
}

TEST_CASE("field axioms on random samples") {
  for (const auto& f : sample_fields()) {
    CAPTURE(f.to_string());
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> big(0, f.kind() == FieldKind::prime ? f.modulus() - 1 : 0);
    auto draw = [&] {
      if (f.kind() == FieldKind::prime && f.modulus() > 1000) return FieldElement(f, mpq_class(mpz_class(std::to_string(big(rng)))));
      return random_element(rng, f);
    };
    const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
    int failures = 0;
    for (int t = 0; t < 10000; ++t) {
      const FieldElement a = draw(), b = draw(), c = draw();
      failures += (a + b) + c != a + (b + c);
      failures += (a * b) * c != a * (b * c);
      failures += a * (b + c) != a * b + a * c;
      failures += a + b != b + a || a * b != b * a;
      failures += a + zero != a || a * one != a || a - a != zero;
      if (!a.is_zero()) failures += a * a.inverse() != one || (b / a) * a != b;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("division by zero and field mismatch are errors") {
  for (const auto& f : sample_fields()) {
    CHECK_THROWS_AS(FieldElement::one(f) / FieldElement::zero(f), FieldError);
  }
  CHECK_THROWS_AS(FieldElement(FieldSpec::prime(5), 1) + FieldElement(FieldSpec::prime(7), 1), FieldError);
}

TEST_CASE("square roots") {
  const FieldSpec p = FieldSpec::prime(13);
  for (long x = 0; x < 13; ++x) {
    FieldElement e(p, x);
    if (auto r = e.sqrt()) CHECK(*r * *r == e);
  }
  const FieldSpec k = FieldSpec::quadratic(2);
  auto r = parse(k, "3+2*s").sqrt();  // (1 + s)^2
  REQUIRE(r);
  CHECK(*r * *r == parse(k, "3+2*s"));
  CHECK_FALSE(parse(FieldSpec::rationals(), "2").sqrt());
  CHECK(*parse(FieldSpec::rationals(), "9/4").sqrt() * *parse(FieldSpec::rationals(), "9/4").sqrt() == parse(FieldSpec::rationals(), "9/4"));
}

TEST_CASE("polynomial evaluation") {
  const FieldSpec q;
  CHECK(poly(q, {-2, 0, 1}).eval(FieldElement::zero(q)) == FieldElement(q, -2));
  CHECK(Polynomial(q).eval(FieldElement(q, 5)).is_zero());
  const FieldSpec k = FieldSpec::quadratic(2);
  CHECK(poly(k, {-2, 0, 1}).eval(FieldElement::generator(k)).is_zero());
  CHECK_THROWS_AS(poly(q, {1, 1}).eval(FieldElement::one(k)), FieldError);
}

TEST_CASE("polynomial arithmetic") {
  const FieldSpec q;
  const Polynomial a = poly(q, {1, 2, 3}), b = poly(q, {-1, 1});
  auto [quo, rem] = (a * b + poly(q, {4})).divmod(b);
  CHECK(quo == a);
  CHECK(rem == poly(q, {4}));
  CHECK(a.derivative() == poly(q, {2, 6}));
  CHECK(gcd(poly(q, {-1, 0, 1}), poly(q, {1, 2, 1})) == poly(q, {1, 1}));
  CHECK(Polynomial(q).degree() == -1);
  CHECK_THROWS(a.divmod(Polynomial(q)));
}

TEST_CASE("roots over Q") {
  const FieldSpec q;
  auto r = roots_in_field(poly(q, {-1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == FieldElement(q, -1));
  CHECK(r[1].value == FieldElement(q, 1));
  CHECK(roots_in_field(poly(q, {-2, 0, 1})).empty());
  auto r4 = roots_in_field(poly(q, {9, 0, -10, 0, 1}));
  REQUIRE(r4.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r4[i].value == FieldElement(q, std::vector<long>{-3, -1, 1, 3}[i]));
    CHECK(r4[i].multiplicity == 1);
  }
  CHECK_THROWS_AS(roots_in_field(Polynomial(q)), FieldError);
  // multiplicities and non-integral roots
  Polynomial f = Polynomial::linear_factor(parse(q, "2/3")) * Polynomial::linear_factor(parse(q, "2/3")) *
                 Polynomial::linear_factor(parse(q, "-7/5")) * poly(q, {1, 0, 1});
  auto rf = roots_in_field(f);
  REQUIRE(rf.size() == 2);
  CHECK(rf[0].value == parse(q, "-7/5"));
  CHECK(rf[0].multiplicity == 1);
  CHECK(rf[1].value == parse(q, "2/3"));
  CHECK(rf[1].multiplicity == 2);
}

TEST_CASE("roots over Q(sqrt m)") {
  const FieldSpec k = FieldSpec::quadratic(2);
  auto r = roots_in_field(poly(k, {-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == -FieldElement::generator(k));
  CHECK(r[1].value == FieldElement::generator(k));
  // extension coefficients
  Polynomial f = Polynomial::linear_factor(parse(k, "1+s")) * Polynomial::linear_factor(parse(k, "1/2-3*s")) *
                 poly(k, {3, 0, 1});
  auto rf = roots_in_field(f);
  REQUIRE(rf.size() == 2);
  for (const auto& root : rf) CHECK(f.eval(root.value).is_zero());
}

TEST_CASE("roots over GF(p) agree with evaluation") {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2ULL, 3ULL, 13ULL, 101ULL}) {
    const FieldSpec f = FieldSpec::prime(p);
    for (int t = 0; t < 40; ++t) {
      Vector c;
      const int deg = 1 + t % 5;
      for (int i = 0; i < deg; ++i) c.push_back(random_element(rng, f));
      c.push_back(FieldElement::one(f));
      Polynomial g(f, c);
      auto roots = roots_in_field(g);
      std::set<std::uint64_t> found;
      for (const auto& r : roots) found.insert(r.value.residue());
      for (std::uint64_t x = 0; x < p; ++x) {
        CHECK(found.count(x) == (g.eval(FieldElement(f, static_cast<long>(x))).is_zero() ? 1U : 0U));
      }
    }
  }
  const FieldSpec large = FieldSpec::prime(1000003);
  CHECK_THROWS_AS(roots_in_field(poly(large, {1, 0, 1})), FieldError);
  auto lin = roots_in_field(poly(large, {3, 2}));
  REQUIRE(lin.size() == 1);
  CHECK(poly(large, {3, 2}).eval(lin[0].value).is_zero());
}

TEST_CASE("roots over Q agree with evaluation") {
  std::mt19937_64 rng(17);
  const FieldSpec q;
  for (int t = 0; t < 60; ++t) {
    Polynomial f = Polynomial::constant(random_element(rng, q) + FieldElement(q, 10));
    std::vector<FieldElement> planted;
    for (int i = 0; i < 1 + t % 4; ++i) {
      planted.push_back(random_element(rng, q));
      f *= Polynomial::linear_factor(planted.back());
    }
    if (t % 2) f *= poly(q, {t + 2, 0, 1});  // no rational roots
    auto roots = roots_in_field(f);
    for (const auto& r : roots) CHECK(f.eval(r.value).is_zero());
    for (const auto& x : planted) {
      CHECK(std::any_of(roots.begin(), roots.end(), [&](const Root& r) { return r.value == x; }));
    }
    for (int s = 0; s < 20; ++s) {
      FieldElement x = random_element(rng, q);
      bool listed = std::any_of(roots.begin(), roots.end(), [&](const Root& r) { return r.value == x; });
      CHECK(listed == f.eval(x).is_zero());
    }
  }
}
