#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lpair/field.hpp"

namespace lpair {

/// Dense univariate polynomial in lambda, lowest degree first, with no
/// trailing zeros; the zero polynomial has no coefficients.
class Polynomial {
 public:
  explicit Polynomial(FieldSpec spec = {}) : spec_(spec) {}
  Polynomial(FieldSpec spec, std::vector<FieldElement> coefficients);

  static Polynomial constant(const FieldElement& c);
  /// lambda - root
  static Polynomial linear_factor(const FieldElement& root);
  static Polynomial monomial(const FieldSpec& spec, std::size_t degree);

  const FieldSpec& field() const { return spec_; }
  const std::vector<FieldElement>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  FieldElement coefficient(std::size_t k) const;
  FieldElement leading() const;

  FieldElement operator()(const FieldElement& x) const { return eval(x); }
  FieldElement eval(const FieldElement& x) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const FieldElement& scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const FieldElement& s) { return a *= s; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  /// Coefficient-wise Galois conjugate (identity outside Q(sqrt m)).
  Polynomial conjugate() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.spec_ == b.spec_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();

  FieldSpec spec_;
  std::vector<FieldElement> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

struct Root {
  FieldElement value;
  int multiplicity = 0;
};

/// All roots lying in the field, with multiplicity, sorted by
/// canonical_less.
///
/// GF(p): exhaustive evaluation (p <= 10^6, otherwise only degree <= 1 is
/// solved). Q and Q(sqrt m): p-adic lifting of the roots modulo a small
/// prime followed by exact verification; over Q(sqrt m) the search runs on
/// the norm polynomial f * conj(f), which has rational coefficients.
std::vector<Root> roots_in_field(const Polynomial& p);

/// Largest prime for which roots_in_field falls back to exhaustive search.
inline constexpr std::uint64_t kExhaustiveRootSearchLimit = 1'000'000;

}  // namespace lpair
