#include "lpair/generators.hpp"

#include <string>

namespace lpair {

namespace {

FieldElement el(const FieldSpec& f, long v) { return {f, v}; }

void require_char0(const FieldSpec& field, const char* what) {
  if (field.characteristic() != 0) {
    throw GeneratorError(std::string(what) + " requires a field of characteristic 0, got " + field.to_string());
  }
}

Matrix element_matrix(const Sl2Module& mod, const Sl2Element& x) {
  return mod.e * x.x + mod.f * x.y + mod.h * x.z;
}

bool sl2_element_semisimple(const Sl2Element& x, const Sl2Module& mod) {
  // On V_1 the matrix is [[z, x], [y, -z]] with eigenvalues +-sqrt(z^2 + xy).
  FieldElement disc = x.z * x.z + x.x * x.y;
  if (disc.is_zero() || !disc.sqrt()) return false;
  return is_multiplicity_free(element_matrix(mod, x)).has_value();
}

}  // namespace

Section2Example example_section2(const FieldSpec& field) {
  Section2Example ex;
  ex.a = Matrix::from_integers(field, {{0, 3, 0, 0}, {1, 0, 2, 0}, {0, 2, 0, 1}, {0, 0, 3, 0}});
  ex.a_star = Matrix::from_integers(field, {{3, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -3}});
  ex.p = Matrix::from_integers(field, {{1, 3, 3, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -3, 3, -1}});
  return ex;
}

Sl2Module sl2_module(std::size_t d, const FieldSpec& field) {
  require_char0(field, "sl2 module");
  Sl2Module mod;
  mod.d = d;
  mod.e = Matrix(field, d + 1);
  mod.f = Matrix(field, d + 1);
  mod.h = Matrix(field, d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    mod.h(i, i) = el(field, static_cast<long>(d) - 2 * static_cast<long>(i));
    if (i < d) mod.f(i + 1, i) = el(field, static_cast<long>(i) + 1);
    if (i > 0) mod.e(i - 1, i) = el(field, static_cast<long>(d - i) + 1);
  }
  return mod;
}

Sl2Element Sl2Element::h(const FieldSpec& field) {
  return {FieldElement::zero(field), FieldElement::zero(field), FieldElement::one(field)};
}

Sl2Element Sl2Element::e_plus_f(const FieldSpec& field) {
  return {FieldElement::one(field), FieldElement::one(field), FieldElement::zero(field)};
}

Sl2Element bracket(const Sl2Element& a, const Sl2Element& b) {
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h
  const FieldSpec& f = a.x.field();
  FieldElement two = el(f, 2);
  return {two * (a.z * b.x - a.x * b.z), two * (a.y * b.z - a.z * b.y), a.x * b.y - a.y * b.x};
}

bool generates_sl2(const Sl2Element& a, const Sl2Element& b) {
  const FieldSpec& field = a.x.field();
  std::vector<Sl2Element> span;
  Matrix echelon(field, 0, 3);
  auto add = [&](const Sl2Element& x) {
    Matrix m(field, echelon.rows() + 1, 3);
    for (std::size_t i = 0; i < echelon.rows(); ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = echelon(i, j);
    m(echelon.rows(), 0) = x.x;
    m(echelon.rows(), 1) = x.y;
    m(echelon.rows(), 2) = x.z;
    if (rank(m) == echelon.rows()) return false;
    echelon = m;
    span.push_back(x);
    return true;
  };
  add(a);
  add(b);
  for (std::size_t i = 0; i < span.size() && span.size() < 3; ++i)
    for (std::size_t j = 0; j < i && span.size() < 3; ++j) add(bracket(span[j], span[i]));
  return span.size() == 3;
}

std::pair<Matrix, Matrix> sl2_pair(std::size_t d, const Sl2Element& a, const Sl2Element& a_star) {
  const FieldSpec& field = a.x.field();
  for (const FieldElement* c : {&a.y, &a.z, &a_star.x, &a_star.y, &a_star.z}) {
    if (c->field() != field) throw GeneratorError("sl2 coefficients must share one field");
  }
  Sl2Module mod = sl2_module(d, field);
  if (!sl2_element_semisimple(a, mod)) throw GeneratorError("A is not semisimple with eigenvalues in the field");
  if (!sl2_element_semisimple(a_star, mod)) throw GeneratorError("A* is not semisimple with eigenvalues in the field");
  if (!generates_sl2(a, a_star)) throw GeneratorError("A and A* do not generate sl2");
  return {element_matrix(mod, a), element_matrix(mod, a_star)};
}

FieldElement q_integer(const FieldElement& q, long n) {
  return (q.pow(n) - q.pow(-n)) / (q - q.inverse());
}

UqModule uq_module(const FieldElement& q, int epsilon, std::size_t d) {
  const FieldSpec& field = q.field();
  if (q.is_zero()) throw GeneratorError("q must be nonzero");
  if (epsilon != 1 && epsilon != -1) throw GeneratorError("epsilon must be 1 or -1");
  if (q_root_of_unity(q + q.inverse()) != RootOfUnityStatus::not_root_of_unity) {
    throw GeneratorError("q = " + q.to_string() + " is a root of unity in " + field.to_string());
  }
  if (field.characteristic() == 2) epsilon = 1;

  UqModule mod;
  mod.q = q;
  mod.epsilon = epsilon;
  mod.d = d;
  FieldElement eps = el(field, epsilon);
  mod.e = Matrix(field, d + 1);
  mod.f = Matrix(field, d + 1);
  mod.k = Matrix(field, d + 1);
  mod.k_inv = Matrix(field, d + 1);
  const long dl = static_cast<long>(d);
  for (long i = 0; i <= dl; ++i) {
    auto u = static_cast<std::size_t>(i);
    mod.k(u, u) = eps * q.pow(dl - 2 * i);
    mod.k_inv(u, u) = mod.k(u, u).inverse();
    if (i < dl) mod.f(u + 1, u) = q_integer(q, i + 1);
    if (i > 0) mod.e(u - 1, u) = eps * q_integer(q, dl - i + 1);
  }
  return mod;
}

UqPair uq_pair(const FieldElement& q, int epsilon, std::size_t d, const FieldElement& alpha, const FieldElement& beta) {
  if (alpha.is_zero() || beta.is_zero()) throw GeneratorError("alpha and beta must be nonzero");
  if (alpha.field() != q.field() || beta.field() != q.field()) throw GeneratorError("alpha, beta and q must share one field");
  UqModule mod = uq_module(q, epsilon, d);
  const FieldSpec& field = q.field();
  FieldElement eps = el(field, mod.epsilon);
  FieldElement scale = (q - q.inverse()).inverse();

  UqPair out;
  out.a = mod.f * alpha + mod.k * scale;
  out.a_star = mod.e * beta + mod.k_inv * scale;

  const long dl = static_cast<long>(d);
  FieldElement product = eps * alpha * beta;
  for (long j = dl - 1; j >= 1 - dl; j -= 2) {
    if (product == q.pow(j)) out.avoids_forbidden = false;
  }
  Vector theta, theta_star;
  for (long i = 0; i <= dl; ++i) {
    theta.push_back(eps * q.pow(dl - 2 * i) * scale);
    theta_star.push_back(eps * q.pow(2 * i - dl) * scale);
  }
  out.spectra.a = theta;
  out.spectra.a_star = theta_star;
  return out;
}

}  // namespace lpair
