#include <algorithm>
#include <numeric>

#include "lpair/polynomial.hpp"

namespace lpair {

namespace {

int multiplicity_of(Polynomial p, const FieldElement& root) {
  const Polynomial factor = Polynomial::linear_factor(root);
  int m = 0;
  while (!p.is_zero()) {
    auto [q, r] = p.divmod(factor);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++m;
  }
  return m;
}

std::vector<Root> with_multiplicities(const Polynomial& p, std::vector<FieldElement> roots) {
  std::sort(roots.begin(), roots.end(), canonical_less);
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<Root> out;
  out.reserve(roots.size());
  for (auto& r : roots) {
    const int m = multiplicity_of(p, r);
    out.push_back({std::move(r), m});
  }
  return out;
}

std::vector<FieldElement> prime_field_roots(const Polynomial& f) {
  const std::uint64_t p = f.field().modulus();
  std::vector<FieldElement> roots;
  if (f.degree() == 0) return roots;
  if (f.degree() == 1) {
    roots.push_back(-f.coefficient(0) / f.coefficient(1));
    return roots;
  }
  if (p > kExhaustiveRootSearchLimit) {
    throw FieldError("root search too large: degree " + std::to_string(f.degree()) + " over GF(" + std::to_string(p) + ")");
  }
  std::vector<std::uint64_t> c;
  for (const auto& x : f.coefficients()) c.push_back(x.residue());
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      acc = modular::mul(acc, x, p) + *it;
      if (acc >= p) acc -= p;
    }
    if (acc == 0) roots.emplace_back(f.field(), static_cast<long>(x));
  }
  return roots;
}

// ---- p-adic search for roots of a rational polynomial ----

using IntPoly = std::vector<mpz_class>;  // lowest degree first

mpz_class eval_mod(const IntPoly& h, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (sgn(acc) < 0) acc += m;
  return acc;
}

IntPoly derivative(const IntPoly& h) {
  IntPoly out;
  for (std::size_t k = 1; k < h.size(); ++k) out.push_back(h[k] * static_cast<unsigned long>(k));
  return out;
}

/// Primitive integer polynomial proportional to a rational one.
IntPoly to_primitive_integer(const std::vector<mpq_class>& q) {
  mpz_class lcm_den = 1;
  for (const auto& c : q) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  IntPoly out;
  mpz_class content = 0;
  for (const auto& c : q) {
    mpz_class v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (content != 0) {
    if (sgn(out.back()) < 0) content = -content;
    for (auto& c : out) c /= content;
  }
  return out;
}

mpz_class symmetric(mpz_class v, const mpz_class& m) {
  v %= m;
  if (sgn(v) < 0) v += m;
  if (2 * v > m) v -= m;
  return v;
}

/// Hensel-lifts a simple root of h modulo l to a root modulo l^k >= target.
mpz_class hensel_lift(const IntPoly& h, const IntPoly& dh, mpz_class root, const mpz_class& l, const mpz_class& target,
                      mpz_class& modulus) {
  modulus = l;
  while (modulus <= target) {
    modulus *= modulus;
    const mpz_class value = eval_mod(h, root, modulus);
    mpz_class slope = eval_mod(dh, root, modulus);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), slope.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      throw std::logic_error("Hensel lift hit a non-simple root");
    }
    root = (root - value * inv) % modulus;
    if (sgn(root) < 0) root += modulus;
  }
  return root;
}

/// Roots in Q (quadratic_m == 0) or in Q(sqrt m) of a polynomial with
/// rational coefficients; candidates are verified against `verify`.
std::vector<FieldElement> rational_coefficient_roots(const Polynomial& verify, const std::vector<mpq_class>& g,
                                                     const FieldSpec& spec) {
  const bool quadratic = spec.kind() == FieldKind::quadratic;
  const std::int64_t m = quadratic ? spec.discriminant() : 0;

  // square-free part over Q
  const FieldSpec q_field;
  std::vector<FieldElement> gq;
  for (const auto& c : g) gq.emplace_back(q_field, c);
  const Polynomial gp(q_field, gq);
  Polynomial sf = gp.divmod(gcd(gp, gp.derivative())).first;
  std::vector<mpq_class> sfq;
  for (const auto& c : sf.coefficients()) sfq.push_back(c.rational_part());
  const IntPoly h = to_primitive_integer(sfq);
  const IntPoly dh = derivative(h);
  const std::size_t degree = h.size() - 1;
  if (degree == 0) return {};

  const mpz_class lc = abs(h.back());
  mpz_class bound = 0;  // Cauchy bound, rounded up
  for (std::size_t k = 0; k < degree; ++k) {
    mpz_class c = abs(h[k]);
    mpz_class ceil_div = (c + lc - 1) / lc;
    if (ceil_div > bound) bound = ceil_div;
  }
  bound += 1;
  // Roots have the form (a + b sqrt m) with a, b in (1/D) Z and |a|, |b| <= bound.
  const mpz_class den = quadratic ? mpz_class(2 * lc) : lc;
  const mpz_class numerator_bound = den * bound;
  const mpz_class target = 2 * numerator_bound + 1;

  for (std::uint64_t l = 1009;; l += 2) {
    if (!is_prime(l)) continue;
    const mpz_class lz(static_cast<unsigned long>(l));
    if (lc % lz == 0) continue;
    std::optional<std::uint64_t> sqrt_m;
    if (quadratic) {
      if (static_cast<std::uint64_t>(std::llabs(m)) % l == 0) continue;
      const std::uint64_t m_mod = modular::reduce(mpz_class(std::to_string(m)), l);
      sqrt_m = modular::sqrt(m_mod, l);
      if (!sqrt_m) continue;
    }
    std::vector<mpz_class> small_roots;
    bool good = true;
    for (std::uint64_t x = 0; x < l && good; ++x) {
      const mpz_class xz(static_cast<unsigned long>(x));
      if (eval_mod(h, xz, lz) != 0) continue;
      if (eval_mod(dh, xz, lz) == 0) good = false;
      small_roots.push_back(xz);
    }
    if (!good) continue;

    mpz_class modulus;
    std::vector<mpz_class> lifted;
    for (const auto& r : small_roots) lifted.push_back(hensel_lift(h, dh, r, lz, target, modulus));
    if (lifted.empty()) return {};

    std::vector<FieldElement> found;
    auto accept = [&](const mpz_class& num_a, const mpz_class& num_b) {
      if (abs(num_a) > numerator_bound || abs(num_b) > numerator_bound) return;
      FieldElement candidate(spec, mpq_class(num_a, den), mpq_class(num_b, den));
      if (verify.eval(candidate).is_zero()) found.push_back(std::move(candidate));
    };
    if (!quadratic) {
      for (const auto& r : lifted) accept(symmetric(den * r, modulus), 0);
      return found;
    }
    // lift sqrt(m) as a root of x^2 - m
    const IntPoly sq{mpz_class(-m), 0, 1};
    mpz_class sq_mod;
    const mpz_class s = hensel_lift(sq, derivative(sq), mpz_class(static_cast<unsigned long>(*sqrt_m)), lz, target, sq_mod);
    if (sq_mod != modulus) throw std::logic_error("inconsistent lifting precision");
    mpz_class inv2, inv2s;
    const mpz_class two = 2, two_s = (2 * s) % modulus;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), modulus.get_mpz_t());
    mpz_invert(inv2s.get_mpz_t(), two_s.get_mpz_t(), modulus.get_mpz_t());
    for (const auto& r1 : lifted) {
      for (const auto& r2 : lifted) {
        const mpz_class a = ((r1 + r2) * inv2) % modulus;
        const mpz_class b = ((r1 - r2) * inv2s) % modulus;
        accept(symmetric(den * a, modulus), symmetric(den * b, modulus));
      }
    }
    return found;
  }
}

}  // namespace

std::vector<Root> roots_in_field(const Polynomial& p) {
  if (p.is_zero()) throw FieldError("roots of the zero polynomial");
  const FieldSpec& spec = p.field();
  if (spec.kind() == FieldKind::prime) return with_multiplicities(p, prime_field_roots(p));

  // Over Q(sqrt m) the norm f * conj(f) has rational coefficients and every
  // root of f is among its roots.
  const bool rational_coefficients =
      std::all_of(p.coefficients().begin(), p.coefficients().end(), [](const FieldElement& c) { return c.is_rational(); });
  const Polynomial norm = rational_coefficients ? p : p * p.conjugate();
  std::vector<mpq_class> g;
  for (const auto& c : norm.coefficients()) {
    if (!c.is_rational()) throw std::logic_error("norm polynomial is not rational");
    g.push_back(c.rational_part());
  }
  return with_multiplicities(p, rational_coefficient_roots(p, g, spec));
}

}  // namespace lpair
