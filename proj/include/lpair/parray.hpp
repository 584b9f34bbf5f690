#pragma once

/// @file parray.hpp
/// Parameter arrays (theta_i, theta*_i; varphi_j, phi_j) and the constructions
/// and characterizations built on them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpair/matrix.hpp"
#include "lpair/polynomial.hpp"

namespace lpair {

struct ParameterArray {
  FieldSpec field;
  std::size_t d = 0;
  Vector theta;       // theta_0 .. theta_d
  Vector theta_star;  // theta*_0 .. theta*_d
  Vector varphi;      // varphi_1 .. varphi_d, stored at index j-1
  Vector phi;         // phi_1 .. phi_d, stored at index j-1

  /// Throws std::invalid_argument when the sequence lengths disagree with d
  /// or an entry lives in another field.
  void check_shape() const;

  friend bool operator==(const ParameterArray&, const ParameterArray&) = default;
};

struct AxiomResult {
  bool passed = true;
  /// First index at which the axiom fails (i for PA1's pair (i, j), the
  /// 1-based j for PA2-PA4, i for PA5).
  std::optional<std::size_t> first_failure;
  std::string detail;
};

struct ValidityReport {
  AxiomResult pa1, pa2, pa3, pa4, pa5;
  bool valid() const { return pa1.passed && pa2.passed && pa3.passed && pa4.passed && pa5.passed; }
  bool pa1_pa2() const { return pa1.passed && pa2.passed; }
};

/// Checks PA1-PA5 exactly. A PA5 ratio with a vanishing denominator is
/// reported through PA1 (two consecutive thetas coincide).
ValidityReport validate(const ParameterArray& pa);

/// Throws std::invalid_argument unless the array is a parameter array.
void require_valid(const ParameterArray& pa);

/// A lower bidiagonal with diagonal theta and subdiagonal 1; A* upper
/// bidiagonal with diagonal theta* and superdiagonal varphi.
std::pair<Matrix, Matrix> construct_bidiagonal(const ParameterArray& pa);

enum class OffDiagonalSplit {
  unit,       // A_{i,i-1} = 1, A_{i-1,i} = product
  symmetric,  // both sqrt(product) where the square root lies in the field
};

/// Value of A_{i,i-1} A_{i-1,i} required for a tridiagonal A against
/// diagonal A* (1 <= i <= d).
FieldElement tridiagonal_offdiagonal_product(const ParameterArray& pa, std::size_t i);
/// Required diagonal entry A_{ii} (0 <= i <= d).
FieldElement tridiagonal_diagonal_entry(const ParameterArray& pa, std::size_t i);

/// A irreducible tridiagonal, A* = diag(theta*).
std::pair<Matrix, Matrix> construct_tridiagonal(const ParameterArray& pa,
                                                OffDiagonalSplit split = OffDiagonalSplit::unit);

/// Lower bidiagonal matrix with the given diagonal and unit subdiagonal.
Matrix lower_bidiagonal(const Vector& diagonal);
/// Upper bidiagonal matrix with the given diagonal and superdiagonal.
Matrix upper_bidiagonal(const Vector& diagonal, const Vector& superdiagonal);

struct GSearchResult {
  std::optional<Matrix> g;
  std::size_t solution_dimension = 0;
  /// The deterministic 0/1 pencil was searched without finding an invertible
  /// element; existence is then undecided by this search.
  bool pencil_exhausted = false;
};

/// Invertible G with G^{-1} L(theta) G = L(reversed theta) and
/// G^{-1} U(theta*, varphi) G = U(theta*, phi), if one exists.
/// Requires PA1 and PA2 (std::invalid_argument otherwise).
GSearchResult find_g(const ParameterArray& pa);

/// Invertible G with G^{-1} X G = Y for every (X, Y), searched in the
/// solution space of the linear system X G = G Y: first the basis element
/// with the earliest nonzero pattern, then 0/1 sums of up to n basis
/// elements (at most 4096 candidates).
GSearchResult find_intertwiner(const std::vector<std::pair<Matrix, Matrix>>& pairs);

/// sum_{n=0}^{i} prod_{h<n}(lambda - theta_h) prod_{h<n}(theta*_i - theta*_h) / (varphi_1...varphi_n)
Polynomial poly_u(const ParameterArray& pa, std::size_t i);
/// The same with theta_d, theta_{d-1}, ... and phi in place of theta and varphi.
Polynomial poly_u_dual(const ParameterArray& pa, std::size_t i);

struct PolyCharacterization {
  bool holds = true;
  /// c_i with poly_u(i) = c_i poly_u_dual(i), when it exists.
  std::vector<std::optional<FieldElement>> scalars;
  std::optional<std::size_t> first_failure;
};

/// Requires PA1 and PA2 (std::invalid_argument otherwise).
PolyCharacterization check_poly_characterization(const ParameterArray& pa);

enum class FamilyClass { q_type, classical, bannai_ito, small_diameter, char2_special };
std::string to_string(FamilyClass c);

struct Fingerprint {
  std::optional<FieldElement> beta_plus_one;  // absent for d <= 2
  std::optional<FieldElement> beta;
  FamilyClass family = FamilyClass::small_diameter;
  /// A root of q^2 - beta q + 1. Lives in the array's field or, over Q, in
  /// Q(sqrt m); absent when it would need a larger extension.
  std::optional<FieldElement> q;
  std::string q_field;
};

Fingerprint fingerprint(const ParameterArray& pa);

/// Array of the pair (a A + b, c A* + e): theta -> a theta + b, theta* -> c theta* + e,
/// varphi, phi scaled by a c.
ParameterArray affine_transform(const ParameterArray& pa, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, const FieldElement& e);

/// Builds the unique array with the given eigenvalue sequences and varphi_1,
/// filling the rest from PA3/PA4. The result satisfies PA3 and PA4; the
/// caller is responsible for PA1, PA2, PA5.
ParameterArray complete_from_eigenvalues(Vector theta, Vector theta_star, const FieldElement& varphi1);

}  // namespace lpair
