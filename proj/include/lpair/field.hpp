#pragma once

/// @file field.hpp
/// Exact scalars over Q, GF(p) and Q(sqrt m).
///
/// A FieldSpec names the field at runtime; every FieldElement carries its
/// spec and mixing elements of different fields is an error. Values are
/// immutable in the sense that no operation mutates a shared state, so
/// elements may be freely copied across threads.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpair {

/// Domain error raised by exact arithmetic: division by zero, field
/// mismatch, malformed literals, unsupported searches.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldKind { rationals, prime, quadratic };

class FieldSpec {
 public:
  FieldSpec() = default;  // Q

  static FieldSpec rationals() { return {}; }
  /// GF(p); p must be prime and below 2^62.
  static FieldSpec prime(std::uint64_t p);
  /// Q(sqrt m); m square-free, not 0 or 1.
  static FieldSpec quadratic(std::int64_t m);
  /// Parses "Q", "GF(7)" or "Q(sqrt(2))".
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return modulus_; }
  std::int64_t discriminant() const { return discriminant_; }
  std::uint64_t characteristic() const { return kind_ == FieldKind::prime ? modulus_ : 0; }

  std::string to_string() const;

  bool operator==(const FieldSpec&) const = default;

 private:
  FieldKind kind_ = FieldKind::rationals;
  std::uint64_t modulus_ = 0;
  std::int64_t discriminant_ = 0;
};

/// Characteristic of the field: 0 for Q and Q(sqrt m), p for GF(p).
inline std::uint64_t characteristic(const FieldSpec& spec) { return spec.characteristic(); }

/// Deterministic primality for 64-bit integers.
bool is_prime(std::uint64_t n);
bool is_square_free(std::int64_t m);

class FieldElement {
 public:
  /// Zero of Q.
  FieldElement() = default;
  FieldElement(const FieldSpec& spec, long value);
  FieldElement(const FieldSpec& spec, const mpq_class& value);
  /// a + b*sqrt(m); for Q and GF(p) b must be zero.
  FieldElement(const FieldSpec& spec, const mpq_class& a, const mpq_class& b);

  static FieldElement zero(const FieldSpec& spec) { return {spec, 0L}; }
  static FieldElement one(const FieldSpec& spec) { return {spec, 1L}; }
  /// sqrt(m) in Q(sqrt m).
  static FieldElement generator(const FieldSpec& spec);
  /// Parses the serialized form: "a/b" over Q, a residue over GF(p)
  /// (integers and fractions are reduced), "a/b+c/d*s" over Q(sqrt m).
  static FieldElement parse(const FieldSpec& spec, std::string_view text);

  const FieldSpec& field() const { return spec_; }

  bool is_zero() const;
  bool is_one() const;

  /// Rational coordinate (Q, Q(sqrt m)).
  const mpq_class& rational_part() const { return re_; }
  /// Coefficient of sqrt(m) (Q(sqrt m)); zero elsewhere.
  const mpq_class& irrational_part() const { return im_; }
  std::uint64_t residue() const { return residue_; }
  /// True when the value lies in the prime subfield / in Q.
  bool is_rational() const { return spec_.kind() != FieldKind::quadratic || sgn(im_) == 0; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
  friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
  friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
  friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;
  /// Galois conjugate a - b*sqrt(m); identity outside Q(sqrt m).
  FieldElement conjugate() const;
  /// Some square root inside the field, if one exists.
  std::optional<FieldElement> sqrt() const;

  friend bool operator==(const FieldElement& lhs, const FieldElement& rhs);
  friend bool operator!=(const FieldElement& lhs, const FieldElement& rhs) { return !(lhs == rhs); }

  std::string to_string() const;

 private:
  void check_same_field(const FieldElement& other) const;

  FieldSpec spec_;
  mpq_class re_;
  mpq_class im_;
  std::uint64_t residue_ = 0;
};

/// Total order used wherever output must be deterministic: numeric order on
/// Q, residue order on GF(p), (rational, irrational) lexicographic on
/// Q(sqrt m).
bool canonical_less(const FieldElement& lhs, const FieldElement& rhs);

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Modular helpers shared by root finding and GF(p) arithmetic.
namespace modular {
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);
/// Square root modulo an odd prime, if a is a quadratic residue.
std::optional<std::uint64_t> sqrt(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce(const mpz_class& value, std::uint64_t p);
}  // namespace modular

}  // namespace lpair
