#pragma once

/// @file generators.hpp
/// Constructive sources of Leonard pairs.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "lpair/leonard.hpp"
#include "lpair/matrix.hpp"

namespace lpair {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Section2Example {
  Matrix a, a_star, p;
};

/// The 4x4 tridiagonal/diagonal pair with eigenvalues 3, 1, -1, -3 and the
/// matrix P with P^2 = 8I and AP = PA*, embedded in `field`.
Section2Example example_section2(const FieldSpec& field = {});

// ---- sl2 ----

/// Matrices of e, f, h on the irreducible module V_d in the basis v_0..v_d:
/// h v_i = (d-2i) v_i, f v_i = (i+1) v_{i+1}, e v_i = (d-i+1) v_{i-1}.
struct Sl2Module {
  std::size_t d = 0;
  Matrix e, f, h;
};

/// Requires a characteristic-0 field.
Sl2Module sl2_module(std::size_t d, const FieldSpec& field = {});

/// x e + y f + z h
struct Sl2Element {
  FieldElement x, y, z;
  static Sl2Element h(const FieldSpec& field = {});
  static Sl2Element e_plus_f(const FieldSpec& field = {});
};

/// Bracket in coordinates (x, y, z) of the basis e, f, h.
Sl2Element bracket(const Sl2Element& lhs, const Sl2Element& rhs);
/// The two elements generate sl2 (bracket closure reaches dimension 3).
bool generates_sl2(const Sl2Element& a, const Sl2Element& b);

/// Matrices of the chosen elements on V_d. Throws GeneratorError when an
/// element is not semisimple with eigenvalues in the field (tested on V_1,
/// i.e. z^2 + xy a nonzero square, then on V_d) or the pair does not
/// generate sl2.
std::pair<Matrix, Matrix> sl2_pair(std::size_t d, const Sl2Element& a, const Sl2Element& a_star);
inline std::pair<Matrix, Matrix> sl2_pair(std::size_t d, const FieldSpec& field = {}) {
  return sl2_pair(d, Sl2Element::h(field), Sl2Element::e_plus_f(field));
}

// ---- U_q(sl2) ----

/// [n]_q = (q^n - q^{-n}) / (q - q^{-1})
FieldElement q_integer(const FieldElement& q, long n);

struct UqModule {
  FieldElement q;
  int epsilon = 1;
  std::size_t d = 0;
  Matrix e, f, k, k_inv;
};

/// V_{epsilon,d}: k u_i = eps q^{d-2i} u_i, f u_i = [i+1]_q u_{i+1},
/// e u_i = eps [d-i+1]_q u_{i-1}. q must be nonzero and not a root of unity;
/// in characteristic 2 epsilon is canonicalized to 1.
UqModule uq_module(const FieldElement& q, int epsilon, std::size_t d);

struct UqPair {
  Matrix a, a_star;
  /// eps*alpha*beta avoids {q^{d-1}, q^{d-3}, ..., q^{1-d}}.
  bool avoids_forbidden = true;
  /// Closed-form spectra: eps q^{d-2i}/(q - q^{-1}) and eps q^{2i-d}/(q - q^{-1}).
  KnownSpectra spectra;
};

/// A = alpha f + k/(q - q^{-1}), A* = beta e + k^{-1}/(q - q^{-1}) on V_{eps,d}.
UqPair uq_pair(const FieldElement& q, int epsilon, std::size_t d, const FieldElement& alpha, const FieldElement& beta);

// ---- subspace lattice L_n(q) ----

/// Arithmetic in GF(q) for a small prime power q, elements encoded as the
/// base-p digits of a polynomial modulo a fixed irreducible.
class SmallGaloisField {
 public:
  explicit SmallGaloisField(unsigned q);
  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const;

 private:
  unsigned p_ = 0, degree_ = 0, q_ = 0;
  std::vector<unsigned> add_, mul_;
};

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q);

struct SubspaceLattice {
  unsigned n = 0;
  unsigned q = 0;
  /// Reduced row-echelon bases, graded by dimension.
  std::vector<std::vector<std::vector<unsigned>>> points;
  std::vector<unsigned> dims;
  /// Q(sqrt m) with m the square-free part of q (Q when q is a square).
  FieldSpec field;
  FieldElement sqrt_q;
  Matrix k, r, l;
};

inline constexpr std::size_t kLatticeSizeLimit = 3000;

/// Enumerates L_n(q) and builds K, R, L; the three quantum relations are
/// verified exactly before returning (std::logic_error otherwise).
SubspaceLattice build_lattice(unsigned n, unsigned q);

/// alpha*beta in {q^{(n-1)/2}, q^{(n-3)/2}, ..., q^{(1-n)/2}}.
bool lattice_forbidden(const SubspaceLattice& lat, const FieldElement& alpha_beta);

struct LatticeComponent {
  unsigned lowest_rank = 0;  // dimension of the subspaces in the kernel vector's support
  std::size_t d = 0;
  Matrix basis;  // |P| x (d+1): v, Rv, ..., R^d v
  Matrix a, a_star;
  PairRecognition recognition;
};

struct LatticeDecomposition {
  Matrix a, a_star;
  std::vector<LatticeComponent> components;
};

/// A = alpha R + K/(q^{1/2} - q^{-1/2}), A* = beta L + K^{-1}/(q^{1/2} - q^{-1/2}),
/// decomposed into irreducible modules generated by ker L on each rank, each
/// restricted pair certified by is_leonard_pair with its closed-form spectrum.
LatticeDecomposition lattice_pair(const SubspaceLattice& lat, const FieldElement& alpha, const FieldElement& beta);

/// Coordinates of M restricted to the column span of `basis`; throws
/// std::logic_error when the span is not M-invariant.
Matrix restrict_to(const Matrix& m, const Matrix& basis);

// ---- random parameter arrays ----

/// Uniform over GF(p); over Q a fraction a/b with |a| <= 9, 1 <= b <= 5;
/// over Q(sqrt m) such a fraction plus an independent one times sqrt m.
FieldElement random_element(std::mt19937_64& rng, const FieldSpec& field);

enum class RecurrenceFamily { classical, bannai_ito, q_type };

/// theta_0..theta_d with (theta_{i-2} - theta_{i+1}) / (theta_{i-1} - theta_i)
/// equal to beta + 1, starting from random theta_0, theta_1, theta_2.
Vector recurrence_sequence(std::mt19937_64& rng, const FieldElement& beta, std::size_t d);

/// A valid parameter array of diameter d whose eigenvalue sequences satisfy
/// the three-term recurrence for one common beta chosen by `family`
/// (2, -2, or q + 1/q for random q). Draws are retried until PA1-PA5 hold;
/// throws GeneratorError when the field has fewer than d+1 elements.
ParameterArray random_parameter_array(std::mt19937_64& rng, const FieldSpec& field, std::size_t d,
                                      RecurrenceFamily family = RecurrenceFamily::q_type);

}  // namespace lpair
