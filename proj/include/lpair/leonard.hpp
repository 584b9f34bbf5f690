#pragma once

/// @file leonard.hpp
/// Recognition of Leonard pairs and systems, split bases, extraction of the
/// parameter array and Askey-Wilson coefficient fitting.

#include <optional>
#include <string>
#include <vector>

#include "lpair/matrix.hpp"
#include "lpair/parray.hpp"

namespace lpair {

/// (A; A*; E_0..E_d; E*_0..E*_d). `eigen` lists the eigenvalues, eigenvectors
/// and idempotents of A in the system's order, `eigen_star` those of A*.
struct LeonardSystem {
  Matrix a;
  Matrix a_star;
  EigenData eigen;
  EigenData eigen_star;
  std::size_t d = 0;

  const Vector& theta() const { return eigen.eigenvalues; }
  const Vector& theta_star() const { return eigen_star.eigenvalues; }
};

enum class Failure {
  none,
  a_not_multiplicity_free,
  a_star_not_multiplicity_free,
  a_not_tridiagonal_in_dual_eigenbasis,  // no ordering of the E*_i works
  a_star_not_tridiagonal_in_eigenbasis,  // no ordering of the E_i works
};

std::string describe(Failure f);

struct PairRecognition {
  bool is_leonard_pair = false;
  /// Canonical system: the valid ordering whose serialized (theta, theta*)
  /// is lexicographically least.
  std::optional<LeonardSystem> witness;
  /// Every valid (E ordering, E* ordering) combination found.
  std::vector<LeonardSystem> systems;
  Failure failure = Failure::none;
  std::string failure_reason;
};

struct KnownSpectra {
  std::optional<Vector> a;
  std::optional<Vector> a_star;
};

/// Decides whether (A, A*) is a Leonard pair: both multiplicity-free and
/// idempotent orderings exist satisfying the block tridiagonality
/// conditions. Orderings come from the support graph of the off-diagonal
/// blocks E*_i A E*_j (resp. E_i A* E_j), which must be a path.
/// Spectra may be supplied when known in closed form; they are verified.
PairRecognition is_leonard_pair(const Matrix& a, const Matrix& a_star, const KnownSpectra& spectra = {});

/// System for the given eigenvalue orders; nullopt when the orders violate
/// the block conditions or the matrices are not multiplicity-free with
/// these eigenvalues.
std::optional<LeonardSystem> leonard_system(const Matrix& a, const Matrix& a_star, const Vector& theta,
                                            const Vector& theta_star);

/// Entrywise check of both block conditions for a system.
bool satisfies_block_conditions(const LeonardSystem& sys);

/// Columns u_0..u_d with u_i in (E*_0V+...+E*_iV) cap (E_iV+...+E_dV),
/// scaled so that S^{-1} A S has unit subdiagonal.
Matrix split_basis(const LeonardSystem& sys);

/// Inverse of the bidiagonal construction: theta, theta* from the orderings,
/// varphi from the split form, phi from the PA4 identity; PA3 is then
/// re-checked and a violation throws std::logic_error.
ParameterArray extract_parameter_array(const LeonardSystem& sys);

struct AskeyWilsonCoefficients {
  FieldElement beta, gamma, gamma_star, rho, rho_star, omega, eta, eta_star;
  bool unique = false;
};

/// Both relations hold exactly for (A, A*) with these coefficients.
bool satisfies_askey_wilson(const Matrix& a, const Matrix& a_star, const AskeyWilsonCoefficients& c);

/// Solves the two relations as a linear system in the eight scalars.
/// nullopt when the system is inconsistent. A given `beta` is imposed as an
/// extra equation.
std::optional<AskeyWilsonCoefficients> fit_askey_wilson(const Matrix& a, const Matrix& a_star,
                                                        const std::optional<FieldElement>& beta = std::nullopt);

enum class RootOfUnityStatus {
  not_root_of_unity,
  root_of_unity,
  unsatisfiable_in_finite_field,
};
std::string to_string(RootOfUnityStatus s);

/// Decides whether q with q + 1/q = beta is a root of unity. Over Q and
/// Q(sqrt m), q has degree at most 4 over Q, so only the roots of unity of
/// orders 1,2,3,4,5,6,8,10,12 can occur; their traces are tested exactly.
RootOfUnityStatus q_root_of_unity(const FieldElement& beta);

/// True when the unital algebra generated by a and a_star is all of
/// Mat_n: words are multiplied out breadth-first up to length n^2 with
/// early exit at full rank.
bool generates_full_matrix_algebra(const Matrix& a, const Matrix& a_star);

struct ConverseReport {
  bool relations_hold = false;
  RootOfUnityStatus q_status = RootOfUnityStatus::root_of_unity;
  bool a_multiplicity_free = false;
  bool a_star_multiplicity_free = false;
  bool irreducible = false;
  /// All hypotheses hold, so (A, A*) is a Leonard pair by the converse.
  bool conclusion = false;
  std::string note;
};

/// Throws std::invalid_argument when the coefficients do not satisfy the
/// relations for (A, A*).
ConverseReport check_converse_preconditions(const Matrix& a, const Matrix& a_star, const AskeyWilsonCoefficients& c);

}  // namespace lpair
