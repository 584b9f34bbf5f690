#include "lpair/leonard.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace lpair {

std::string describe(Failure f) {
  switch (f) {
    case Failure::none:
      return "";
    case Failure::a_not_multiplicity_free:
      return "A is not multiplicity-free over the field";
    case Failure::a_star_not_multiplicity_free:
      return "A* is not multiplicity-free over the field";
    case Failure::a_not_tridiagonal_in_dual_eigenbasis:
      return "no ordering of the A*-idempotents makes A irreducible tridiagonal";
    case Failure::a_star_not_tridiagonal_in_eigenbasis:
      return "no ordering of the A-idempotents makes A* irreducible tridiagonal";
  }
  return "";
}

namespace {

void require_compatible(const Matrix& a, const Matrix& a_star) {
  if (!a.is_square() || !a_star.is_square() || a.rows() != a_star.rows()) {
    throw std::invalid_argument("A and A* must be square of the same dimension");
  }
  if (a.rows() == 0) throw std::invalid_argument("dimension must be positive");
  if (!(a.field() == a_star.field())) throw FieldError("A and A* live over different fields");
}

std::optional<EigenData> spectral_data(const Matrix& m, const std::optional<Vector>& known) {
  if (known) {
    if (auto data = eigen_data_from(m, *known)) return data;
  }
  return is_multiplicity_free(m);
}

/// Orders of the vertices along the support graph of the off-diagonal
/// nonzero pattern of `b`, when that graph is a path; both directions.
std::vector<std::vector<std::size_t>> path_orderings(const Matrix& b) {
  const std::size_t n = b.rows();
  if (n == 1) return {{0}};
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool forward = !b(i, j).is_zero();
      const bool backward = !b(j, i).is_zero();
      // A block that is nonzero in only one direction cannot sit on the path
      if (forward != backward) return {};
      if (forward && i < j) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<std::size_t> ends;
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() > 2 || adj[v].empty()) return {};
    if (adj[v].size() == 1) ends.push_back(v);
  }
  if (ends.size() != 2) return {};
  std::vector<std::size_t> order{ends[0]};
  std::size_t prev = n;
  while (order.size() < n) {
    const std::size_t cur = order.back();
    std::size_t next = n;
    for (auto w : adj[cur]) {
      if (w != prev) next = w;
    }
    if (next == n) return {};  // disconnected
    prev = cur;
    order.push_back(next);
  }
  std::vector<std::size_t> reversed(order.rbegin(), order.rend());
  return {order, reversed};
}

EigenData permuted(const EigenData& data, const std::vector<std::size_t>& order) {
  EigenData out;
  std::vector<Vector> columns;
  for (auto k : order) {
    out.eigenvalues.push_back(data.eigenvalues[k]);
    columns.push_back(data.eigenvectors.column(k));
    out.idempotents.push_back(data.idempotents[k]);
  }
  out.eigenvectors = Matrix::from_columns(data.eigenvectors.field(), data.eigenvectors.rows(), columns);
  return out;
}

std::vector<std::string> serialized(const LeonardSystem& s) {
  std::vector<std::string> key;
  for (const auto& x : s.theta()) key.push_back(x.to_string());
  for (const auto& x : s.theta_star()) key.push_back(x.to_string());
  return key;
}

std::string tridiagonal_defect(const std::string& name, const Matrix& m) {
  if (m.rows() < 2 || !is_tridiagonal(m) || is_irreducible_tridiagonal(m) || is_diagonal(m)) return "";
  std::ostringstream os;
  os << name << " is tridiagonal but not irreducible (zero off-diagonal entries at";
  for (std::size_t i = 1; i < m.rows(); ++i) {
    if (m(i - 1, i).is_zero()) os << " (" << i - 1 << "," << i << ")";
    if (m(i, i - 1).is_zero()) os << " (" << i << "," << i - 1 << ")";
  }
  os << ")";
  return os.str();
}

PairRecognition reject(const Matrix& a, const Matrix& a_star, Failure failure) {
  PairRecognition out;
  out.failure = failure;
  std::vector<std::string> reasons{describe(failure) + " " + a.field().to_string()};
  for (const auto& extra : {tridiagonal_defect("A", a), tridiagonal_defect("A*", a_star)}) {
    if (!extra.empty()) reasons.push_back(extra);
  }
  if (a.rows() > 1 && !generates_full_matrix_algebra(a, a_star)) {
    // with a multiplicity-free member the algebra holds rank-one idempotents,
    // so a proper subalgebra means a common invariant subspace
    if (failure != Failure::a_not_multiplicity_free || is_multiplicity_free(a_star)) {
      reasons.emplace_back("the pair is reducible: A and A* share a proper invariant subspace");
    } else {
      reasons.emplace_back("A and A* do not generate the full matrix algebra");
    }
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < reasons.size(); ++k) os << (k ? "; " : "") << reasons[k];
  out.failure_reason = os.str();
  return out;
}

}  // namespace

PairRecognition is_leonard_pair(const Matrix& a, const Matrix& a_star, const KnownSpectra& spectra) {
  require_compatible(a, a_star);
  const auto eig = spectral_data(a, spectra.a);
  if (!eig) return reject(a, a_star, Failure::a_not_multiplicity_free);
  const auto eig_star = spectral_data(a_star, spectra.a_star);
  if (!eig_star) return reject(a, a_star, Failure::a_star_not_multiplicity_free);

  // E*_i A E*_j != 0 iff entry (i, j) of A written in the A*-eigenbasis is nonzero
  const Matrix a_in_dual = inverse(eig_star->eigenvectors) * a * eig_star->eigenvectors;
  const auto star_orders = path_orderings(a_in_dual);
  if (star_orders.empty()) return reject(a, a_star, Failure::a_not_tridiagonal_in_dual_eigenbasis);
  const Matrix a_star_in_primal = inverse(eig->eigenvectors) * a_star * eig->eigenvectors;
  const auto orders = path_orderings(a_star_in_primal);
  if (orders.empty()) return reject(a, a_star, Failure::a_star_not_tridiagonal_in_eigenbasis);

  PairRecognition out;
  out.is_leonard_pair = true;
  for (const auto& o : orders) {
    for (const auto& os : star_orders) {
      out.systems.push_back({a, a_star, permuted(*eig, o), permuted(*eig_star, os), a.rows() - 1});
    }
  }
  auto best = std::min_element(out.systems.begin(), out.systems.end(),
                               [](const LeonardSystem& x, const LeonardSystem& y) { return serialized(x) < serialized(y); });
  out.witness = *best;
  return out;
}

std::optional<LeonardSystem> leonard_system(const Matrix& a, const Matrix& a_star, const Vector& theta,
                                            const Vector& theta_star) {
  require_compatible(a, a_star);
  auto eig = eigen_data_from(a, theta);
  auto eig_star = eigen_data_from(a_star, theta_star);
  if (!eig || !eig_star) return std::nullopt;
  const Matrix a_in_dual = inverse(eig_star->eigenvectors) * a * eig_star->eigenvectors;
  const Matrix a_star_in_primal = inverse(eig->eigenvectors) * a_star * eig->eigenvectors;
  if (!is_irreducible_tridiagonal(a_in_dual) || !is_irreducible_tridiagonal(a_star_in_primal)) return std::nullopt;
  return LeonardSystem{a, a_star, std::move(*eig), std::move(*eig_star), a.rows() - 1};
}

bool satisfies_block_conditions(const LeonardSystem& sys) {
  const std::size_t n = sys.d + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap == 0) continue;
      const bool zero_iv = (sys.eigen_star.idempotents[i] * sys.a * sys.eigen_star.idempotents[j]).is_zero();
      const bool zero_v = (sys.eigen.idempotents[i] * sys.a_star * sys.eigen.idempotents[j]).is_zero();
      if (gap > 1 && (!zero_iv || !zero_v)) return false;
      if (gap == 1 && (zero_iv || zero_v)) return false;
    }
  }
  return true;
}

Matrix split_basis(const LeonardSystem& sys) {
  const std::size_t n = sys.d + 1;
  const FieldSpec& f = sys.a.field();
  const Matrix id = Matrix::identity(f, n);

  // (E*_0V + ... + E*_iV) cap (E_iV + ... + E_dV)
  auto split_line = [&](std::size_t i) {
    Matrix joint(f, n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k <= i; ++k) joint(r, k) = sys.eigen_star.eigenvectors(r, k);
      for (std::size_t k = i; k < n; ++k) joint(r, i + 1 + (k - i)) = -sys.eigen.eigenvectors(r, k);
    }
    const auto ns = nullspace(joint);
    if (ns.size() != 1) throw std::logic_error("degenerate split decomposition at i=" + std::to_string(i));
    Vector v(n, FieldElement::zero(f));
    for (std::size_t k = 0; k <= i; ++k) {
      for (std::size_t r = 0; r < n; ++r) v[r] += ns.front()[k] * sys.eigen_star.eigenvectors(r, k);
    }
    return v;
  };
  auto proportional = [](const Vector& x, const Vector& y) {
    Matrix pair = Matrix::from_columns(x.front().field(), x.size(), {x, y});
    return rank(pair) == 1;
  };

  std::vector<Vector> columns{split_line(0)};
  {
    auto& u0 = columns.front();
    auto first = std::find_if(u0.begin(), u0.end(), [](const FieldElement& x) { return !x.is_zero(); });
    if (first == u0.end()) throw std::logic_error("degenerate split decomposition at i=0");
    const FieldElement s = first->inverse();
    for (auto& x : u0) x *= s;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vector next = (sys.a - id * sys.theta()[i]).apply(columns.back());
    const Vector line = split_line(i + 1);
    if (std::all_of(next.begin(), next.end(), [](const FieldElement& x) { return x.is_zero(); }) ||
        !proportional(next, line)) {
      throw std::logic_error("degenerate split decomposition at i=" + std::to_string(i + 1));
    }
    columns.push_back(std::move(next));
  }
  return Matrix::from_columns(f, n, columns);
}

ParameterArray extract_parameter_array(const LeonardSystem& sys) {
  const Matrix s = split_basis(sys);
  const Matrix upper = inverse(s) * sys.a_star * s;
  ParameterArray pa;
  pa.field = sys.a.field();
  pa.d = sys.d;
  pa.theta = sys.theta();
  pa.theta_star = sys.theta_star();
  if (!is_upper_bidiagonal(upper)) throw std::logic_error("A* is not upper bidiagonal in the split basis");
  for (std::size_t i = 0; i <= pa.d; ++i) {
    if (upper(i, i) != pa.theta_star[i]) throw std::logic_error("split form has the wrong diagonal");
  }
  for (std::size_t i = 1; i <= pa.d; ++i) pa.varphi.push_back(upper(i - 1, i));
  if (pa.d >= 1) {
    const std::size_t d = pa.d;
    const FieldElement inv = (pa.theta[0] - pa.theta[d]).inverse();
    FieldElement partial = FieldElement::zero(pa.field);
    for (std::size_t i = 1; i <= d; ++i) {
      partial += (pa.theta[i - 1] - pa.theta[d - (i - 1)]) * inv;
      pa.phi.push_back(pa.varphi[0] * partial +
                       (pa.theta_star[i] - pa.theta_star[0]) * (pa.theta[d - i + 1] - pa.theta[0]));
    }
  }
  const auto report = validate(pa);
  if (!report.valid()) {
    throw std::logic_error("extracted sequence is not a parameter array: " +
                           (report.pa3.passed ? report.pa5.detail : report.pa3.detail));
  }
  return pa;
}

namespace {

struct AskeyWilsonWords {
  Matrix k1, k2;
  std::vector<Matrix> w1, w2;  // per unknown, in the order beta..eta*
};

AskeyWilsonWords askey_wilson_words(const Matrix& a, const Matrix& as) {
  const FieldSpec& f = a.field();
  const std::size_t n = a.rows();
  const Matrix zero(f, n), id = Matrix::identity(f, n);
  const Matrix a2 = a * a, as2 = as * as, a_as = a * as, as_a = as * a;
  AskeyWilsonWords w;
  w.k1 = a2 * as + as * a2;
  w.k2 = as2 * a + a * as2;
  //            beta         gamma         gamma*         rho  rho*  omega eta  eta*
  w.w1 = {a_as * a, a_as + as_a, a2, as, zero, a, id, zero};
  w.w2 = {as_a * as, as2, as_a + a_as, zero, a, as, zero, id};
  return w;
}

AskeyWilsonCoefficients from_vector(const Vector& x, bool unique) {
  return {x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], unique};
}

Vector to_vector(const AskeyWilsonCoefficients& c) {
  return {c.beta, c.gamma, c.gamma_star, c.rho, c.rho_star, c.omega, c.eta, c.eta_star};
}

}  // namespace

bool satisfies_askey_wilson(const Matrix& a, const Matrix& a_star, const AskeyWilsonCoefficients& c) {
  require_compatible(a, a_star);
  const auto w = askey_wilson_words(a, a_star);
  const Vector x = to_vector(c);
  Matrix lhs1 = w.k1, lhs2 = w.k2;
  for (std::size_t k = 0; k < 8; ++k) {
    lhs1 -= w.w1[k] * x[k];
    lhs2 -= w.w2[k] * x[k];
  }
  return lhs1.is_zero() && lhs2.is_zero();
}

std::optional<AskeyWilsonCoefficients> fit_askey_wilson(const Matrix& a, const Matrix& a_star,
                                                        const std::optional<FieldElement>& beta) {
  require_compatible(a, a_star);
  const auto w = askey_wilson_words(a, a_star);
  const std::size_t n = a.rows();
  Matrix system(a.field(), 2 * n * n + (beta ? 1 : 0), 8);
  Vector rhs;
  rhs.reserve(2 * n * n);
  std::size_t row = 0;
  for (const auto* block : {&w.w1, &w.w2}) {
    const Matrix& k = block == &w.w1 ? w.k1 : w.k2;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t u = 0; u < 8; ++u) system(row, u) = (*block)[u](i, j);
        rhs.push_back(k(i, j));
      }
    }
  }
  if (beta) {
    system(row, 0) = FieldElement::one(a.field());
    rhs.push_back(*beta);
  }
  const auto sol = solve_linear(system, rhs);
  if (sol.kind == LinearSolution::Kind::inconsistent) return std::nullopt;
  return from_vector(sol.particular, sol.kind == LinearSolution::Kind::unique);
}

std::string to_string(RootOfUnityStatus s) {
  switch (s) {
    case RootOfUnityStatus::not_root_of_unity:
      return "not-root-of-unity";
    case RootOfUnityStatus::root_of_unity:
      return "root-of-unity";
    case RootOfUnityStatus::unsatisfiable_in_finite_field:
      return "unsatisfiable-in-finite-field";
  }
  return "?";
}

RootOfUnityStatus q_root_of_unity(const FieldElement& beta) {
  const FieldSpec& f = beta.field();
  if (f.kind() == FieldKind::prime) return RootOfUnityStatus::unsatisfiable_in_finite_field;
  // minimal polynomials over Q of 2cos(2 pi k / n) for n in {1,2,3,4,5,6,8,10,12}
  const std::vector<std::vector<long>> traces = {{-2, 1}, {2, 1}, {0, 1}, {1, 1}, {-1, 1},
                                                 {-1, 1, 1}, {-2, 0, 1}, {-1, -1, 1}, {-3, 0, 1}};
  for (const auto& coeffs : traces) {
    Vector c;
    for (long x : coeffs) c.emplace_back(f, x);
    if (Polynomial(f, c).eval(beta).is_zero()) return RootOfUnityStatus::root_of_unity;
  }
  return RootOfUnityStatus::not_root_of_unity;
}

bool generates_full_matrix_algebra(const Matrix& a, const Matrix& a_star) {
  require_compatible(a, a_star);
  const std::size_t n = a.rows();
  const std::size_t target = n * n;
  const FieldSpec& f = a.field();
  // echelon rows of the span, keyed by pivot position
  std::vector<std::pair<std::size_t, Vector>> echelon;
  auto absorb = [&](const Matrix& m) {
    Vector v;
    v.reserve(target);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) v.push_back(m(i, j));
    }
    for (const auto& [pivot, row] : echelon) {
      if (v[pivot].is_zero()) continue;
      const FieldElement factor = v[pivot];
      for (std::size_t k = 0; k < target; ++k) {
        if (!row[k].is_zero()) v[k] -= factor * row[k];
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
    if (it == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const FieldElement inv = it->inverse();
    for (auto& x : v) x *= inv;
    for (auto& [p, row] : echelon) {
      if (row[pivot].is_zero()) continue;
      const FieldElement factor = row[pivot];
      for (std::size_t k = 0; k < target; ++k) row[k] -= factor * v[k];
    }
    echelon.emplace_back(pivot, std::move(v));
    return true;
  };
  std::deque<Matrix> frontier;
  const Matrix id = Matrix::identity(f, n);
  absorb(id);
  frontier.push_back(id);
  while (!frontier.empty() && echelon.size() < target) {
    const Matrix word = std::move(frontier.front());
    frontier.pop_front();
    for (const Matrix* g : {&a, &a_star}) {
      Matrix next = word * *g;
      if (absorb(next)) frontier.push_back(std::move(next));
      if (echelon.size() == target) break;
    }
  }
  return echelon.size() == target;
}

ConverseReport check_converse_preconditions(const Matrix& a, const Matrix& a_star, const AskeyWilsonCoefficients& c) {
  if (!satisfies_askey_wilson(a, a_star, c)) {
    throw std::invalid_argument("coefficients do not satisfy the Askey-Wilson relations for this pair");
  }
  ConverseReport r;
  r.relations_hold = true;
  r.q_status = q_root_of_unity(c.beta);
  r.a_multiplicity_free = is_multiplicity_free(a).has_value();
  r.a_star_multiplicity_free = is_multiplicity_free(a_star).has_value();
  r.irreducible = a.rows() == 1 || generates_full_matrix_algebra(a, a_star);
  r.conclusion = r.q_status == RootOfUnityStatus::not_root_of_unity && r.a_multiplicity_free &&
                 r.a_star_multiplicity_free && r.irreducible;
  switch (r.q_status) {
    case RootOfUnityStatus::root_of_unity:
      r.note = "q with q + 1/q = beta is a root of unity; the converse does not apply";
      break;
    case RootOfUnityStatus::unsatisfiable_in_finite_field:
      r.note = "every nonzero q is a root of unity over a finite field; hypothesis unsatisfiable";
      break;
    case RootOfUnityStatus::not_root_of_unity:
      r.note = r.conclusion ? "all hypotheses hold: (A, A*) is a Leonard pair" : "some hypothesis fails";
      break;
  }
  return r;
}

}  // namespace lpair
