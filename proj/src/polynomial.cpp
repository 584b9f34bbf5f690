#include "lpair/polynomial.hpp"

#include <algorithm>

namespace lpair {

Polynomial::Polynomial(FieldSpec spec, std::vector<FieldElement> coefficients)
    : spec_(spec), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) {
    if (!(c.field() == spec_)) throw FieldError("polynomial coefficient from " + c.field().to_string());
  }
  trim();
}

Polynomial Polynomial::constant(const FieldElement& c) { return {c.field(), {c}}; }

Polynomial Polynomial::linear_factor(const FieldElement& root) {
  return {root.field(), {-root, FieldElement::one(root.field())}};
}

Polynomial Polynomial::monomial(const FieldSpec& spec, std::size_t degree) {
  std::vector<FieldElement> c(degree + 1, FieldElement::zero(spec));
  c.back() = FieldElement::one(spec);
  return {spec, std::move(c)};
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : FieldElement::zero(spec_);
}

FieldElement Polynomial::leading() const {
  return coeffs_.empty() ? FieldElement::zero(spec_) : coeffs_.back();
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  if (!(x.field() == spec_)) throw FieldError("evaluation point from " + x.field().to_string() + ", polynomial over " + spec_.to_string());
  FieldElement acc = FieldElement::zero(spec_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (!(rhs.spec_ == spec_)) throw FieldError("polynomial field mismatch");
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), FieldElement::zero(spec_));
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  Polynomial neg = rhs;
  for (auto& c : neg.coeffs_) c = -c;
  return *this += neg;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (!(rhs.spec_ == spec_)) throw FieldError("polynomial field mismatch");
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<FieldElement> out(coeffs_.size() + rhs.coeffs_.size() - 1, FieldElement::zero(spec_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const FieldElement& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw FieldError("polynomial division by zero");
  Polynomial remainder = *this;
  const long dd = divisor.degree();
  if (remainder.degree() < dd) return {Polynomial(spec_), remainder};
  std::vector<FieldElement> quotient(static_cast<std::size_t>(remainder.degree() - dd + 1), FieldElement::zero(spec_));
  const FieldElement lead_inv = divisor.leading().inverse();
  while (!remainder.is_zero() && remainder.degree() >= dd) {
    const auto shift = static_cast<std::size_t>(remainder.degree() - dd);
    const FieldElement factor = remainder.leading() * lead_inv;
    quotient[shift] = factor;
    for (std::size_t k = 0; k < divisor.coeffs_.size(); ++k) {
      remainder.coeffs_[shift + k] -= factor * divisor.coeffs_[k];
    }
    remainder.coeffs_.pop_back();  // cancelled exactly
    remainder.trim();
  }
  return {Polynomial(spec_, std::move(quotient)), remainder};
}

Polynomial Polynomial::derivative() const {
  std::vector<FieldElement> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * FieldElement(spec_, static_cast<long>(k)));
  }
  return {spec_, std::move(out)};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Polynomial Polynomial::conjugate() const {
  std::vector<FieldElement> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.conjugate());
  return {spec_, std::move(out)};
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[k].to_string() + ")";
    if (k >= 1) out += "*x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace lpair
