#include "lpair/field.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <ostream>

namespace lpair {

namespace modular {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) result = mul(result, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw FieldError("division by zero in GF(" + std::to_string(p) + ")");
  // extended Euclid on signed 128-bit values
  __int128 r0 = p, r1 = a % p, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (t0 < 0) t0 += p;
  return static_cast<std::uint64_t>(t0);
}

std::optional<std::uint64_t> sqrt(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (pow(a, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = pow(z, q, p);
  std::uint64_t t = pow(a, q, p);
  std::uint64_t r = pow(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b, p);
    m = i;
    c = mul(b, b, p);
    t = mul(t, c, p);
    r = mul(r, b, p);
  }
  return std::min(r, p - r);
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
  mpz_class r = value % mpz_class(std::to_string(p));
  if (sgn(r) < 0) r += mpz_class(std::to_string(p));
  return std::stoull(r.get_str());
}

}  // namespace modular

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // these bases are a deterministic witness set for n < 3.3e24
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = modular::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = modular::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_square_free(std::int64_t m) {
  if (m == 0) return false;
  std::uint64_t n = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
    if (n % f == 0) n /= f;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (1ULL << 62U)) throw FieldError("prime modulus too large: " + std::to_string(p));
  if (!is_prime(p)) throw FieldError("modulus is not prime: " + std::to_string(p));
  FieldSpec spec;
  spec.kind_ = FieldKind::prime;
  spec.modulus_ = p;
  return spec;
}

FieldSpec FieldSpec::quadratic(std::int64_t m) {
  if (m == 1 || !is_square_free(m)) {
    throw FieldError("discriminant must be square-free and not a square: " + std::to_string(m));
  }
  FieldSpec spec;
  spec.kind_ = FieldKind::quadratic;
  spec.discriminant_ = m;
  return spec;
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

std::int64_t parse_int64(const std::string& s, std::string_view context) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FieldError("malformed integer '" + s + "' in " + std::string(context));
  }
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw FieldError("empty rational literal");
  const std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw FieldError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw FieldError("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s == "Q" || s == "QQ") return rationals();
  if (starts_with(s, "GF(") && s.back() == ')') {
    const std::string inner = s.substr(3, s.size() - 4);
    const std::int64_t p = parse_int64(inner, "field spec");
    if (p < 2) throw FieldError("modulus is not prime: " + inner);
    return prime(static_cast<std::uint64_t>(p));
  }
  if (starts_with(s, "Q(sqrt(") && s.size() > 9 && s.substr(s.size() - 2) == "))") {
    const std::string inner = s.substr(7, s.size() - 9);
    return quadratic(parse_int64(inner, "field spec"));
  }
  throw FieldError("unrecognized field spec '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  switch (kind_) {
    case FieldKind::rationals:
      return "Q";
    case FieldKind::prime:
      return "GF(" + std::to_string(modulus_) + ")";
    case FieldKind::quadratic:
      return "Q(sqrt(" + std::to_string(discriminant_) + "))";
  }
  return "?";
}

FieldElement::FieldElement(const FieldSpec& spec, long value) : spec_(spec) {
  if (spec.kind() == FieldKind::prime) {
    const auto p = static_cast<__int128>(spec.modulus());
    __int128 r = static_cast<__int128>(value) % p;
    if (r < 0) r += p;
    residue_ = static_cast<std::uint64_t>(r);
  } else {
    re_ = value;
  }
}

FieldElement::FieldElement(const FieldSpec& spec, const mpq_class& value) : spec_(spec), re_(value) {
  re_.canonicalize();
  if (spec.kind() == FieldKind::prime) {
    const std::uint64_t p = spec.modulus();
    const std::uint64_t den = modular::reduce(re_.get_den(), p);
    if (den == 0) {
      throw FieldError("denominator of " + rational_string(re_) + " vanishes in " + spec.to_string());
    }
    residue_ = modular::mul(modular::reduce(re_.get_num(), p), modular::inverse(den, p), p);
    re_ = 0;
  }
}

FieldElement::FieldElement(const FieldSpec& spec, const mpq_class& a, const mpq_class& b) : FieldElement(spec, a) {
  if (sgn(b) != 0) {
    if (spec.kind() != FieldKind::quadratic) throw FieldError("irrational part outside a quadratic field");
    im_ = b;
    im_.canonicalize();
  }
}

FieldElement FieldElement::generator(const FieldSpec& spec) {
  if (spec.kind() != FieldKind::quadratic) throw FieldError("sqrt(m) requested outside a quadratic field");
  return {spec, mpq_class(0), mpq_class(1)};
}

FieldElement FieldElement::parse(const FieldSpec& spec, std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw FieldError("empty field element literal");
  if (spec.kind() != FieldKind::quadratic) {
    if (s.find('s') != std::string::npos) {
      throw FieldError("'" + s + "' has an irrational part but the field is " + spec.to_string());
    }
    return {spec, parse_rational(s)};
  }
  if (s.back() != 's') return {spec, parse_rational(s)};
  // split "a±b*s" at the last sign that is not the leading one
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
      split = i;
      break;
    }
  }
  std::string a_text = split == std::string::npos ? "0" : body.substr(0, split);
  std::string b_text = split == std::string::npos ? body : body.substr(split);
  if (b_text.empty() || b_text == "+") b_text = "1";
  if (b_text == "-") b_text = "-1";
  return {spec, parse_rational(a_text), parse_rational(b_text)};
}

bool FieldElement::is_zero() const {
  if (spec_.kind() == FieldKind::prime) return residue_ == 0;
  return sgn(re_) == 0 && sgn(im_) == 0;
}

bool FieldElement::is_one() const {
  if (spec_.kind() == FieldKind::prime) return residue_ == 1 % spec_.modulus();
  return re_ == 1 && sgn(im_) == 0;
}

void FieldElement::check_same_field(const FieldElement& other) const {
  if (!(spec_ == other.spec_)) {
    throw FieldError("field mismatch: " + spec_.to_string() + " vs " + other.spec_.to_string());
  }
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  if (spec_.kind() == FieldKind::prime) {
    out.residue_ = residue_ == 0 ? 0 : spec_.modulus() - residue_;
  } else {
    out.re_ = -re_;
    out.im_ = -im_;
  }
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_same_field(rhs);
  if (spec_.kind() == FieldKind::prime) {
    residue_ += rhs.residue_;
    if (residue_ >= spec_.modulus()) residue_ -= spec_.modulus();
  } else {
    re_ += rhs.re_;
    if (spec_.kind() == FieldKind::quadratic) im_ += rhs.im_;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) { return *this += -rhs; }

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_same_field(rhs);
  switch (spec_.kind()) {
    case FieldKind::prime:
      residue_ = modular::mul(residue_, rhs.residue_, spec_.modulus());
      break;
    case FieldKind::rationals:
      re_ *= rhs.re_;
      break;
    case FieldKind::quadratic: {
      // (a + b s)(c + d s) = (ac + m bd) + (ad + bc) s
      mpq_class re = re_ * rhs.re_ + im_ * rhs.im_ * spec_.discriminant();
      mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
      re_ = std::move(re);
      im_ = std::move(im);
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) { return *this *= rhs.inverse(); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw FieldError("division by zero in " + spec_.to_string());
  FieldElement out = *this;
  switch (spec_.kind()) {
    case FieldKind::prime:
      out.residue_ = modular::inverse(residue_, spec_.modulus());
      break;
    case FieldKind::rationals:
      out.re_ = 1 / re_;
      break;
    case FieldKind::quadratic: {
      // 1/(a + b s) = (a - b s)/(a^2 - m b^2); the norm is nonzero since m is not a square
      const mpq_class norm = re_ * re_ - im_ * im_ * spec_.discriminant();
      out.re_ = re_ / norm;
      out.im_ = -im_ / norm;
      break;
    }
  }
  return out;
}

FieldElement FieldElement::pow(long exponent) const {
  FieldElement base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-(exponent + 1)) + 1 : static_cast<unsigned long>(exponent);
  FieldElement result = one(spec_);
  while (e > 0) {
    if (e & 1UL) result *= base;
    base *= base;
    e >>= 1UL;
  }
  return result;
}

FieldElement FieldElement::conjugate() const {
  FieldElement out = *this;
  out.im_ = -im_;
  return out;
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return mpq_class(rn, rd);
}

}  // namespace

std::optional<FieldElement> FieldElement::sqrt() const {
  switch (spec_.kind()) {
    case FieldKind::prime: {
      auto r = modular::sqrt(residue_, spec_.modulus());
      if (!r) return std::nullopt;
      FieldElement out = *this;
      out.residue_ = *r;
      return out;
    }
    case FieldKind::rationals: {
      auto r = rational_sqrt(re_);
      if (!r) return std::nullopt;
      return FieldElement(spec_, *r);
    }
    case FieldKind::quadratic: {
      const mpq_class m(spec_.discriminant());
      if (sgn(im_) == 0) {
        if (auto r = rational_sqrt(re_)) return FieldElement(spec_, *r);
        if (auto r = rational_sqrt(re_ / m)) return FieldElement(spec_, mpq_class(0), *r);
        return std::nullopt;
      }
      // (x + y s)^2 = u + v s  =>  x^2 = (u ± sqrt(u^2 - m v^2)) / 2, y = v / (2x)
      auto disc = rational_sqrt(re_ * re_ - m * im_ * im_);
      if (!disc) return std::nullopt;
      for (const mpq_class& x2 : {mpq_class((re_ + *disc) / 2), mpq_class((re_ - *disc) / 2)}) {
        if (sgn(x2) == 0) continue;
        if (auto x = rational_sqrt(x2)) {
          return FieldElement(spec_, *x, mpq_class(im_ / (2 * *x)));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
  if (!(lhs.spec_ == rhs.spec_)) return false;
  if (lhs.spec_.kind() == FieldKind::prime) return lhs.residue_ == rhs.residue_;
  return lhs.re_ == rhs.re_ && lhs.im_ == rhs.im_;
}

std::string FieldElement::to_string() const {
  switch (spec_.kind()) {
    case FieldKind::prime:
      return std::to_string(residue_);
    case FieldKind::rationals:
      return rational_string(re_);
    case FieldKind::quadratic: {
      if (sgn(im_) == 0) return rational_string(re_);
      std::string b = rational_string(im_) + "*s";
      if (sgn(re_) == 0) return b;
      return rational_string(re_) + (sgn(im_) > 0 ? "+" : "") + b;
    }
  }
  return "?";
}

bool canonical_less(const FieldElement& lhs, const FieldElement& rhs) {
  if (lhs.field().kind() == FieldKind::prime) return lhs.residue() < rhs.residue();
  if (lhs.rational_part() != rhs.rational_part()) return lhs.rational_part() < rhs.rational_part();
  return lhs.irrational_part() < rhs.irrational_part();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

}  // namespace lpair
