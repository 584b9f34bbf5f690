#include "lpair/parray.hpp"

#include <algorithm>
#include <numeric>

namespace lpair {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

void ParameterArray::check_shape() const {
  if (theta.size() != d + 1 || theta_star.size() != d + 1 || varphi.size() != d || phi.size() != d) {
    throw std::invalid_argument("parameter array of diameter " + idx(d) + " needs " + idx(d + 1) +
                                " eigenvalues on each side and " + idx(d) + " split parameters on each side");
  }
  for (const Vector* seq : {&theta, &theta_star, &varphi, &phi}) {
    for (const auto& x : *seq) {
      if (!(x.field() == field)) throw FieldError("parameter array entry from " + x.field().to_string());
    }
  }
}

ValidityReport validate(const ParameterArray& pa) {
  pa.check_shape();
  const std::size_t d = pa.d;
  const FieldSpec& f = pa.field;
  ValidityReport report;

  for (std::size_t i = 0; i <= d && report.pa1.passed; ++i) {
    for (std::size_t j = i + 1; j <= d; ++j) {
      if (pa.theta[i] == pa.theta[j] || pa.theta_star[i] == pa.theta_star[j]) {
        report.pa1 = {false, i,
                      (pa.theta[i] == pa.theta[j] ? "theta_" : "theta*_") + idx(i) + " = " +
                          (pa.theta[i] == pa.theta[j] ? "theta_" : "theta*_") + idx(j)};
        break;
      }
    }
  }

  for (std::size_t j = 1; j <= d; ++j) {
    if (pa.varphi[j - 1].is_zero() || pa.phi[j - 1].is_zero()) {
      report.pa2 = {false, j, (pa.varphi[j - 1].is_zero() ? "varphi_" : "phi_") + idx(j) + " = 0"};
      break;
    }
  }

  if (d >= 1) {
    const FieldElement span = pa.theta[0] - pa.theta[d];
    if (span.is_zero()) {
      report.pa3 = {false, 1, "undefined: theta_0 = theta_d"};
      report.pa4 = report.pa3;
    } else {
      const FieldElement inv = span.inverse();
      FieldElement partial = FieldElement::zero(f);
      for (std::size_t i = 1; i <= d; ++i) {
        partial += (pa.theta[i - 1] - pa.theta[d - (i - 1)]) * inv;
        const FieldElement ds = pa.theta_star[i] - pa.theta_star[0];
        const FieldElement rhs3 = pa.phi[0] * partial + ds * (pa.theta[i - 1] - pa.theta[d]);
        const FieldElement rhs4 = pa.varphi[0] * partial + ds * (pa.theta[d - i + 1] - pa.theta[0]);
        if (report.pa3.passed && pa.varphi[i - 1] != rhs3) {
          report.pa3 = {false, i, "varphi_" + idx(i) + " = " + pa.varphi[i - 1].to_string() + ", expected " + rhs3.to_string()};
        }
        if (report.pa4.passed && pa.phi[i - 1] != rhs4) {
          report.pa4 = {false, i, "phi_" + idx(i) + " = " + pa.phi[i - 1].to_string() + ", expected " + rhs4.to_string()};
        }
      }
    }
  }

  // PA5 over 2 <= i <= d-1; undefined ratios are PA1 failures and are skipped here.
  std::optional<FieldElement> common;
  for (std::size_t i = 2; i + 1 <= d && report.pa5.passed; ++i) {
    const FieldElement den = pa.theta[i - 1] - pa.theta[i];
    const FieldElement den_star = pa.theta_star[i - 1] - pa.theta_star[i];
    if (den.is_zero() || den_star.is_zero()) continue;
    const FieldElement r = (pa.theta[i - 2] - pa.theta[i + 1]) / den;
    const FieldElement r_star = (pa.theta_star[i - 2] - pa.theta_star[i + 1]) / den_star;
    if (r != r_star) {
      report.pa5 = {false, i, "ratios differ at i=" + idx(i) + ": " + r.to_string() + " vs " + r_star.to_string()};
    } else if (common && *common != r) {
      report.pa5 = {false, i, "ratio at i=" + idx(i) + " is " + r.to_string() + ", earlier " + common->to_string()};
    } else {
      common = r;
    }
  }
  return report;
}

void require_valid(const ParameterArray& pa) {
  const auto report = validate(pa);
  const std::pair<const char*, const AxiomResult*> axioms[] = {
      {"PA1", &report.pa1}, {"PA2", &report.pa2}, {"PA3", &report.pa3}, {"PA4", &report.pa4}, {"PA5", &report.pa5}};
  for (const auto& [name, result] : axioms) {
    if (result->passed) continue;
    std::string msg = std::string("not a parameter array: ") + name + " fails";
    if (result->first_failure) msg += " at index " + std::to_string(*result->first_failure);
    if (!result->detail.empty()) msg += " (" + result->detail + ")";
    throw std::invalid_argument(msg);
  }
}

Matrix lower_bidiagonal(const Vector& diagonal) {
  Matrix m = Matrix::diagonal(diagonal);
  for (std::size_t i = 1; i < diagonal.size(); ++i) m(i, i - 1) = FieldElement::one(m.field());
  return m;
}

Matrix upper_bidiagonal(const Vector& diagonal, const Vector& superdiagonal) {
  Matrix m = Matrix::diagonal(diagonal);
  for (std::size_t i = 1; i < diagonal.size(); ++i) m(i - 1, i) = superdiagonal.at(i - 1);
  return m;
}

std::pair<Matrix, Matrix> construct_bidiagonal(const ParameterArray& pa) {
  require_valid(pa);
  return {lower_bidiagonal(pa.theta), upper_bidiagonal(pa.theta_star, pa.varphi)};
}

FieldElement tridiagonal_diagonal_entry(const ParameterArray& pa, std::size_t i) {
  const auto& ts = pa.theta_star;
  FieldElement a = pa.theta.at(i);
  if (i >= 1) a += pa.varphi[i - 1] / (ts[i] - ts[i - 1]);
  if (i + 1 <= pa.d) a += pa.varphi[i] / (ts[i] - ts[i + 1]);
  return a;
}

FieldElement tridiagonal_offdiagonal_product(const ParameterArray& pa, std::size_t i) {
  if (i < 1 || i > pa.d) throw std::out_of_range("off-diagonal index " + idx(i));
  const auto& ts = pa.theta_star;
  FieldElement num = pa.varphi[i - 1] * pa.phi[i - 1];
  FieldElement den = FieldElement::one(pa.field);
  for (std::size_t h = 0; h + 2 <= i; ++h) num *= ts[i - 1] - ts[h];
  for (std::size_t h = 0; h + 1 <= i; ++h) den *= ts[i] - ts[h];
  for (std::size_t h = i + 1; h <= pa.d; ++h) num *= ts[i] - ts[h];
  for (std::size_t h = i; h <= pa.d; ++h) den *= ts[i - 1] - ts[h];
  return num / den;
}

std::pair<Matrix, Matrix> construct_tridiagonal(const ParameterArray& pa, OffDiagonalSplit split) {
  require_valid(pa);
  Matrix a(pa.field, pa.d + 1);
  for (std::size_t i = 0; i <= pa.d; ++i) a(i, i) = tridiagonal_diagonal_entry(pa, i);
  for (std::size_t i = 1; i <= pa.d; ++i) {
    const FieldElement product = tridiagonal_offdiagonal_product(pa, i);
    std::optional<FieldElement> root;
    if (split == OffDiagonalSplit::symmetric) root = product.sqrt();
    if (root) {
      a(i, i - 1) = *root;
      a(i - 1, i) = *root;
    } else {
      a(i, i - 1) = FieldElement::one(pa.field);
      a(i - 1, i) = product;
    }
  }
  return {a, Matrix::diagonal(pa.theta_star)};
}

namespace {

// Coefficient rows of X G - G Y = 0 in the unknowns G_{ab} (index a*n+b).
void append_intertwining_rows(Matrix& system, std::size_t& row, const Matrix& x, const Matrix& y) {
  const std::size_t n = x.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j, ++row) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!x(i, k).is_zero()) system(row, k * n + j) += x(i, k);
        if (!y(k, j).is_zero()) system(row, i * n + k) -= y(k, j);
      }
    }
  }
}

Matrix to_square(const Vector& v, std::size_t n) {
  Matrix g(v.front().field(), n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g(a, b) = v[a * n + b];
  }
  return g;
}

bool invertible(const Matrix& g) { return rank(g) == g.rows(); }

}  // namespace

GSearchResult find_g(const ParameterArray& pa) {
  const auto report = validate(pa);
  if (!report.pa1_pa2()) throw std::invalid_argument("find_g requires PA1 and PA2");
  Vector reversed(pa.theta.rbegin(), pa.theta.rend());
  return find_intertwiner({{lower_bidiagonal(pa.theta), lower_bidiagonal(reversed)},
                           {upper_bidiagonal(pa.theta_star, pa.varphi), upper_bidiagonal(pa.theta_star, pa.phi)}});
}

GSearchResult find_intertwiner(const std::vector<std::pair<Matrix, Matrix>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("find_intertwiner needs at least one pair");
  const FieldSpec field = pairs.front().first.field();
  const std::size_t n = pairs.front().first.rows();
  for (const auto& [x, y] : pairs) {
    if (!x.is_square() || x.rows() != n || y.rows() != n || !y.is_square() || x.field() != field || y.field() != field) {
      throw std::invalid_argument("find_intertwiner needs square matrices of one size and field");
    }
  }

  // G^{-1} X G = Y  <=>  X G = G Y for invertible G
  Matrix system(field, pairs.size() * n * n, n * n);
  std::size_t row = 0;
  for (const auto& [x, y] : pairs) append_intertwining_rows(system, row, x, y);
  auto basis = nullspace(system);

  GSearchResult result;
  result.solution_dimension = basis.size();
  if (basis.empty()) return result;

  for (auto& v : basis) {
    auto first = std::find_if(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); });
    const FieldElement s = first->inverse();
    for (auto& x : v) x *= s;
  }
  // earliest nonzero pattern first
  auto pattern_less = [](const Vector& a, const Vector& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].is_zero() != b[k].is_zero()) return !a[k].is_zero();
    }
    return false;
  };
  std::stable_sort(basis.begin(), basis.end(), pattern_less);
  Matrix first = to_square(basis.front(), n);
  if (invertible(first)) {
    result.g = std::move(first);
    return result;
  }

  // 0/1 pencil: subsets of at most d+1 basis elements, by size then lexicographically
  constexpr std::size_t kPencilCap = 4096;
  std::size_t tried = 0;
  const std::size_t dim = basis.size();
  for (std::size_t size = 2; size <= std::min(dim, n) && tried < kPencilCap; ++size) {
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (tried < kPencilCap) {
      ++tried;
      Vector sum(n * n, FieldElement::zero(field));
      for (auto k : pick) {
        for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += basis[k][e];
      }
      Matrix g = to_square(sum, n);
      if (invertible(g)) {
        result.g = std::move(g);
        return result;
      }
      // next combination
      std::size_t pos = size;
      while (pos > 0 && pick[pos - 1] == dim - size + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t k = pos; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  result.pencil_exhausted = true;
  return result;
}

namespace {

Polynomial split_polynomial(const ParameterArray& pa, std::size_t i, bool dual) {
  if (i > pa.d) throw std::out_of_range("polynomial index " + idx(i) + " exceeds diameter " + idx(pa.d));
  const FieldSpec& f = pa.field;
  Polynomial sum(f);
  Polynomial basis = Polynomial::constant(FieldElement::one(f));
  FieldElement weight = FieldElement::one(f);
  for (std::size_t n = 0; n <= i; ++n) {
    if (n >= 1) {
      const FieldElement& root = dual ? pa.theta[pa.d - (n - 1)] : pa.theta[n - 1];
      basis *= Polynomial::linear_factor(root);
      weight *= pa.theta_star[i] - pa.theta_star[n - 1];
      weight /= dual ? pa.phi[n - 1] : pa.varphi[n - 1];
    }
    sum += basis * weight;
  }
  return sum;
}

void require_pa1_pa2(const ParameterArray& pa) {
  if (!validate(pa).pa1_pa2()) throw std::invalid_argument("polynomials require PA1 and PA2");
}

}  // namespace

Polynomial poly_u(const ParameterArray& pa, std::size_t i) {
  require_pa1_pa2(pa);
  return split_polynomial(pa, i, false);
}

Polynomial poly_u_dual(const ParameterArray& pa, std::size_t i) {
  require_pa1_pa2(pa);
  return split_polynomial(pa, i, true);
}

PolyCharacterization check_poly_characterization(const ParameterArray& pa) {
  require_pa1_pa2(pa);
  PolyCharacterization out;
  for (std::size_t i = 0; i <= pa.d; ++i) {
    const Polynomial u = split_polynomial(pa, i, false);
    const Polynomial v = split_polynomial(pa, i, true);
    std::optional<FieldElement> c;
    if (!v.is_zero() && u.degree() == v.degree()) {
      const FieldElement candidate = u.leading() / v.leading();
      if (!candidate.is_zero() && v * candidate == u) c = candidate;
    }
    if (!c && out.holds) {
      out.holds = false;
      out.first_failure = i;
    }
    out.scalars.push_back(c);
  }
  return out;
}

std::string to_string(FamilyClass c) {
  switch (c) {
    case FamilyClass::q_type:
      return "q-type";
    case FamilyClass::classical:
      return "classical";
    case FamilyClass::bannai_ito:
      return "bannai-ito";
    case FamilyClass::small_diameter:
      return "small-diameter";
    case FamilyClass::char2_special:
      return "char2-special";
  }
  return "?";
}

namespace {

/// Square-free part of a nonzero integer when it can be certified by trial
/// division up to `limit`; the unfactored cofactor must then be a square or 1
/// or prime-sized beyond limit^2.
std::optional<mpz_class> square_free_part(mpz_class n) {
  const int sign = sgn(n);
  n = abs(n);
  mpz_class part = 1;
  constexpr unsigned long kLimit = 100000;
  for (unsigned long p = 2; p <= kLimit && p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) part *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
      // square cofactor contributes nothing
    } else if (n < mpz_class(kLimit) * kLimit) {
      part *= n;  // prime
    } else {
      return std::nullopt;
    }
  }
  return part * sign;
}

void choose_q(Fingerprint& fp, const FieldElement& beta) {
  const FieldSpec& f = beta.field();
  const Polynomial quad(f, {FieldElement::one(f), -beta, FieldElement::one(f)});
  std::vector<Root> roots;
  try {
    roots = roots_in_field(quad);
  } catch (const FieldError&) {
    roots.clear();
  }
  auto pick = [&](std::vector<FieldElement> candidates, std::string field_name) {
    std::sort(candidates.begin(), candidates.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.to_string() < b.to_string(); });
    fp.q = candidates.front();
    fp.q_field = std::move(field_name);
  };
  if (!roots.empty()) {
    std::vector<FieldElement> c;
    for (const auto& r : roots) c.push_back(r.value);
    pick(c, f.to_string());
    return;
  }
  if (f.kind() == FieldKind::rationals) {
    const mpq_class disc = beta.rational_part() * beta.rational_part() - 4;
    const auto m = square_free_part(disc.get_num() * disc.get_den());
    if (m) {
      const FieldSpec ext = FieldSpec::quadratic(m->get_si());
      // sqrt(disc) = sqrt(num*den)/den = (k/den) sqrt(m) with num*den = k^2 m
      mpz_class k2 = disc.get_num() * disc.get_den() / *m;
      mpz_class k;
      mpz_sqrt(k.get_mpz_t(), k2.get_mpz_t());
      const mpq_class half_root(k, disc.get_den() * 2);
      const mpq_class half_beta = beta.rational_part() / 2;
      pick({FieldElement(ext, half_beta, half_root), FieldElement(ext, half_beta, mpq_class(-half_root))}, ext.to_string());
      return;
    }
    fp.q_field = "Q(sqrt(" + disc.get_str() + "))";
    return;
  }
  fp.q_field = f.kind() == FieldKind::prime ? "GF(" + std::to_string(f.modulus()) + "^2)" : "degree-4 extension of Q";
}

}  // namespace

Fingerprint fingerprint(const ParameterArray& pa) {
  require_valid(pa);
  Fingerprint fp;
  if (pa.d <= 2) {
    fp.family = FamilyClass::small_diameter;
    return fp;
  }
  const FieldSpec& f = pa.field;
  const FieldElement r = (pa.theta[0] - pa.theta[3]) / (pa.theta[1] - pa.theta[2]);
  const FieldElement beta = r - FieldElement::one(f);
  fp.beta_plus_one = r;
  fp.beta = beta;
  const FieldElement two(f, 2L);
  if (f.characteristic() == 2 && beta.is_zero()) {
    fp.family = FamilyClass::char2_special;
    fp.q = FieldElement::one(f);
    fp.q_field = f.to_string();
  } else if (beta == two) {
    fp.family = FamilyClass::classical;
    fp.q = FieldElement::one(f);
    fp.q_field = f.to_string();
  } else if (beta == -two) {
    fp.family = FamilyClass::bannai_ito;
    fp.q = -FieldElement::one(f);
    fp.q_field = f.to_string();
  } else {
    fp.family = FamilyClass::q_type;
    choose_q(fp, beta);
  }
  return fp;
}

ParameterArray affine_transform(const ParameterArray& pa, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, const FieldElement& e) {
  ParameterArray out = pa;
  for (auto& t : out.theta) t = a * t + b;
  for (auto& t : out.theta_star) t = c * t + e;
  const FieldElement ac = a * c;
  for (auto& x : out.varphi) x *= ac;
  for (auto& x : out.phi) x *= ac;
  return out;
}

ParameterArray complete_from_eigenvalues(Vector theta, Vector theta_star, const FieldElement& varphi1) {
  if (theta.empty() || theta.size() != theta_star.size()) throw std::invalid_argument("eigenvalue sequences must have equal positive length");
  ParameterArray pa;
  pa.field = theta.front().field();
  pa.d = theta.size() - 1;
  pa.theta = std::move(theta);
  pa.theta_star = std::move(theta_star);
  const std::size_t d = pa.d;
  if (d == 0) return pa;
  const FieldElement phi1 = varphi1 + (pa.theta_star[1] - pa.theta_star[0]) * (pa.theta[d] - pa.theta[0]);
  const FieldElement inv = (pa.theta[0] - pa.theta[d]).inverse();
  FieldElement partial = FieldElement::zero(pa.field);
  for (std::size_t i = 1; i <= d; ++i) {
    partial += (pa.theta[i - 1] - pa.theta[d - (i - 1)]) * inv;
    const FieldElement ds = pa.theta_star[i] - pa.theta_star[0];
    pa.varphi.push_back(phi1 * partial + ds * (pa.theta[i - 1] - pa.theta[d]));
    pa.phi.push_back(varphi1 * partial + ds * (pa.theta[d - i + 1] - pa.theta[0]));
  }
  return pa;
}

}  // namespace lpair
