#include <string>

#include "lpair/generators.hpp"

namespace lpair {

FieldElement random_element(std::mt19937_64& rng, const FieldSpec& field) {
  if (field.kind() == FieldKind::prime) {
    std::uniform_int_distribution<std::uint64_t> dist(0, field.modulus() - 1);
    return {field, mpq_class(mpz_class(std::to_string(dist(rng))))};
  }
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  auto fraction = [&] {
    long a = num(rng);
    long b = den(rng);
    mpq_class r(a, b);
    r.canonicalize();
    return r;
  };
  mpq_class re = fraction();
  if (field.kind() == FieldKind::rationals) return {field, re};
  mpq_class im = fraction();
  return {field, re, im};
}

Vector recurrence_sequence(std::mt19937_64& rng, const FieldElement& beta, std::size_t d) {
  const FieldSpec& field = beta.field();
  Vector theta;
  for (std::size_t i = 0; i <= d && i < 3; ++i) theta.push_back(random_element(rng, field));
  FieldElement b1 = beta + FieldElement::one(field);
  for (std::size_t i = 3; i <= d; ++i) theta.push_back(theta[i - 3] - b1 * (theta[i - 2] - theta[i - 1]));
  return theta;
}

ParameterArray random_parameter_array(std::mt19937_64& rng, const FieldSpec& field, std::size_t d,
                                      RecurrenceFamily family) {
  if (field.kind() == FieldKind::prime && field.modulus() < d + 1) {
    throw GeneratorError("GF(" + std::to_string(field.modulus()) + ") has too few elements for diameter " +
                         std::to_string(d));
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    FieldElement beta;
    switch (family) {
      case RecurrenceFamily::classical:
        beta = FieldElement(field, 2);
        break;
      case RecurrenceFamily::bannai_ito:
        beta = FieldElement(field, -2);
        break;
      case RecurrenceFamily::q_type: {
        FieldElement q = random_element(rng, field);
        if (q.is_zero()) continue;
        beta = q + q.inverse();
        break;
      }
    }
    Vector theta = recurrence_sequence(rng, beta, d);
    Vector theta_star = recurrence_sequence(rng, beta, d);
    FieldElement varphi1 = random_element(rng, field);
    if (d > 0 && varphi1.is_zero()) continue;
    ParameterArray pa;
    try {
      pa = complete_from_eigenvalues(theta, theta_star, varphi1);
    } catch (const FieldError&) {
      continue;  // coinciding eigenvalues
    }
    if (validate(pa).valid()) return pa;
  }
  throw GeneratorError("no valid parameter array found for diameter " + std::to_string(d) + " over " +
                       field.to_string());
}

}  // namespace lpair
