#include <algorithm>
#include <set>
#include <string>

#include "lpair/generators.hpp"

namespace lpair {

namespace {

using Poly = std::vector<unsigned>;  // coefficients over GF(p), lowest first

std::pair<unsigned, unsigned> prime_power(unsigned q) {
  if (q < 2) throw GeneratorError("q must be a prime power, got " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw GeneratorError("q must be a prime power, got " + std::to_string(q));
  return {p, k};
}

Poly decode(unsigned a, unsigned p, unsigned k) {
  Poly out(k);
  for (unsigned i = 0; i < k; ++i, a /= p) out[i] = a % p;
  return out;
}

unsigned encode(const Poly& c, unsigned p) {
  unsigned a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p + c[i];
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// digits of `index`.
Poly monic(unsigned index, unsigned p, unsigned degree) {
  Poly c = decode(index, p, degree);
  c.push_back(1);
  return c;
}

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Poly find_irreducible(unsigned p, unsigned k) {
  std::set<Poly> reducible;
  for (unsigned a = 1; a <= k / 2; ++a) {
    for (unsigned i = 0; i < ipow(p, a); ++i)
      for (unsigned j = 0; j < ipow(p, k - a); ++j) reducible.insert(poly_mul(monic(i, p, a), monic(j, p, k - a), p));
  }
  for (unsigned i = 0; i < ipow(p, k); ++i) {
    Poly c = monic(i, p, k);
    if (!reducible.count(c)) return c;
  }
  throw std::logic_error("no irreducible polynomial found");
}

using Basis = std::vector<std::vector<unsigned>>;

/// Every subspace of GF(q)^n of dimension k as its reduced row-echelon basis,
/// ordered by pivot set and then by free entries.
void enumerate_rank(const SmallGaloisField& gf, unsigned n, unsigned k, std::vector<Basis>& out) {
  const unsigned q = gf.order();
  std::vector<unsigned> pivots(k);
  for (unsigned i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    std::vector<std::pair<unsigned, unsigned>> free_slots;
    for (unsigned r = 0; r < k; ++r)
      for (unsigned c = pivots[r] + 1; c < n; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_slots.emplace_back(r, c);
    std::vector<unsigned> digits(free_slots.size(), 0);
    while (true) {
      Basis b(k, std::vector<unsigned>(n, 0));
      for (unsigned r = 0; r < k; ++r) b[r][pivots[r]] = 1;
      for (std::size_t s = 0; s < free_slots.size(); ++s) b[free_slots[s].first][free_slots[s].second] = digits[s];
      out.push_back(std::move(b));
      std::size_t pos = digits.size();
      while (pos > 0 && digits[pos - 1] == q - 1) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
    // next k-combination of {0..n-1}
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pivots[static_cast<unsigned>(i)] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++pivots[static_cast<unsigned>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

/// v lies in the row space of the reduced echelon basis b.
bool in_row_space(const SmallGaloisField& gf, const std::vector<unsigned>& v, const Basis& b) {
  std::vector<unsigned> w(v.size(), 0);
  for (const auto& row : b) {
    std::size_t pivot = 0;
    while (row[pivot] == 0) ++pivot;
    unsigned c = v[pivot];
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = gf.add(w[j], gf.mul(c, row[j]));
  }
  return w == v;
}

bool contains(const SmallGaloisField& gf, const Basis& big, const Basis& small) {
  return std::all_of(small.begin(), small.end(), [&](const auto& v) { return in_row_space(gf, v, big); });
}

}  // namespace

SmallGaloisField::SmallGaloisField(unsigned q) {
  auto [p, k] = prime_power(q);
  p_ = p;
  degree_ = k;
  q_ = q;
  add_.resize(static_cast<std::size_t>(q) * q);
  mul_.resize(static_cast<std::size_t>(q) * q);
  Poly modulus = k > 1 ? find_irreducible(p, k) : Poly{0, 1};
  for (unsigned a = 0; a < q; ++a) {
    Poly pa = decode(a, p, k);
    for (unsigned b = 0; b < q; ++b) {
      Poly pb = decode(b, p, k);
      Poly sum(k);
      for (unsigned i = 0; i < k; ++i) sum[i] = (pa[i] + pb[i]) % p;
      add_[a * q + b] = encode(sum, p);
      Poly prod = poly_mul(pa, pb, p);
      for (std::size_t deg = prod.size(); deg-- > k;) {
        unsigned c = prod[deg];
        if (c == 0) continue;
        for (unsigned i = 0; i <= k; ++i) {
          std::size_t at = deg - k + i;
          prod[at] = (prod[at] + (p - c) * modulus[i]) % p;
        }
      }
      prod.resize(k);
      mul_[a * q + b] = encode(prod, p);
    }
  }
}

unsigned SmallGaloisField::neg(unsigned a) const {
  for (unsigned b = 0; b < q_; ++b)
    if (add(a, b) == 0) return b;
  throw std::logic_error("no additive inverse");
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

SubspaceLattice build_lattice(unsigned n, unsigned q) {
  if (n == 0 || n > 5) throw GeneratorError("lattice dimension n must lie in 1..5, got " + std::to_string(n));
  auto [p, k] = prime_power(q);
  (void)k;
  if (p > 7) throw GeneratorError("lattice q must be a power of a prime <= 7, got " + std::to_string(q));
  std::uint64_t size = 0;
  for (unsigned r = 0; r <= n; ++r) size += gaussian_binomial(n, r, q);
  if (size > kLatticeSizeLimit) {
    throw GeneratorError("lattice L_" + std::to_string(n) + "(" + std::to_string(q) + ") has " + std::to_string(size) +
                         " subspaces, above the limit of " + std::to_string(kLatticeSizeLimit));
  }

  SmallGaloisField gf(q);
  SubspaceLattice lat;
  lat.n = n;
  lat.q = q;
  std::vector<std::size_t> rank_start;
  for (unsigned r = 0; r <= n; ++r) {
    rank_start.push_back(lat.points.size());
    enumerate_rank(gf, n, r, lat.points);
  }
  rank_start.push_back(lat.points.size());
  for (const auto& b : lat.points) lat.dims.push_back(static_cast<unsigned>(b.size()));
  if (lat.points.size() != size) throw std::logic_error("subspace enumeration disagrees with the Gaussian binomials");

  // sqrt(q) = c sqrt(m) with m square-free
  long c = 1, m = static_cast<long>(q);
  for (long f = 2; f * f <= m;) {
    if (m % (f * f) == 0) {
      m /= f * f;
      c *= f;
    } else {
      ++f;
    }
  }
  lat.field = m == 1 ? FieldSpec::rationals() : FieldSpec::quadratic(m);
  lat.sqrt_q = m == 1 ? FieldElement(lat.field, c) : FieldElement(lat.field, 0, c);
  const FieldSpec& field = lat.field;
  const FieldElement& s = lat.sqrt_q;

  const std::size_t size_p = lat.points.size();
  lat.k = Matrix(field, size_p);
  lat.r = Matrix(field, size_p);
  lat.l = Matrix(field, size_p);
  FieldElement l_scale = s.pow(1 - static_cast<long>(n));
  FieldElement one = FieldElement::one(field);
  for (std::size_t x = 0; x < size_p; ++x) lat.k(x, x) = s.pow(static_cast<long>(n) - 2 * static_cast<long>(lat.dims[x]));
  for (unsigned r = 0; r < n; ++r) {
    for (std::size_t x = rank_start[r]; x < rank_start[r + 1]; ++x) {
      for (std::size_t y = rank_start[r + 1]; y < rank_start[r + 2]; ++y) {
        if (!contains(gf, lat.points[y], lat.points[x])) continue;
        lat.r(y, x) = one;      // R x includes y
        lat.l(x, y) = l_scale;  // L y includes x
      }
    }
  }

  FieldElement qf = s * s;
  Matrix k_inv(field, size_p);
  for (std::size_t x = 0; x < size_p; ++x) k_inv(x, x) = lat.k(x, x).inverse();
  if (lat.k * lat.l != lat.l * lat.k * qf) throw std::logic_error("lattice relation KL = qLK fails");
  if (lat.k * lat.r * qf != lat.r * lat.k) throw std::logic_error("lattice relation KR = q^{-1}RK fails");
  if (lat.l * lat.r - lat.r * lat.l != (lat.k - k_inv) * (s - s.inverse()).inverse()) {
    throw std::logic_error("lattice relation LR - RL = (K - K^{-1})/(q^{1/2} - q^{-1/2}) fails");
  }
  return lat;
}

bool lattice_forbidden(const SubspaceLattice& lat, const FieldElement& alpha_beta) {
  const long n = static_cast<long>(lat.n);
  for (long j = n - 1; j >= 1 - n; j -= 2)
    if (alpha_beta == lat.sqrt_q.pow(j)) return true;
  return false;
}

Matrix restrict_to(const Matrix& m, const Matrix& basis) {
  const std::size_t n = basis.rows(), c = basis.cols();
  Matrix image = m * basis;
  Matrix aug(m.field(), n, 2 * c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      aug(i, j) = basis(i, j);
      aug(i, c + j) = image(i, j);
    }
  }
  std::vector<std::size_t> pivots = row_reduce(aug);
  if (pivots.size() != c) throw std::logic_error("subspace is not invariant or basis is dependent");
  for (std::size_t j = 0; j < c; ++j)
    if (pivots[j] != j) throw std::logic_error("subspace is not invariant or basis is dependent");
  Matrix out(m.field(), c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = aug(i, c + j);
  return out;
}

LatticeDecomposition lattice_pair(const SubspaceLattice& lat, const FieldElement& alpha, const FieldElement& beta) {
  const FieldSpec& field = lat.field;
  if (alpha.field() != field || beta.field() != field) {
    throw GeneratorError("alpha and beta must lie in " + field.to_string());
  }
  if (alpha.is_zero() || beta.is_zero()) throw GeneratorError("alpha and beta must be nonzero");
  if (lattice_forbidden(lat, alpha * beta)) {
    throw GeneratorError("alpha*beta = " + (alpha * beta).to_string() + " lies in the forbidden set");
  }
  const FieldElement& s = lat.sqrt_q;
  FieldElement scale = (s - s.inverse()).inverse();
  const std::size_t size_p = lat.points.size();
  Matrix k_inv(field, size_p);
  for (std::size_t x = 0; x < size_p; ++x) k_inv(x, x) = lat.k(x, x).inverse();

  LatticeDecomposition out;
  out.a = lat.r * alpha + lat.k * scale;
  out.a_star = lat.l * beta + k_inv * scale;

  std::size_t total = 0;
  for (unsigned rank_k = 0; rank_k <= lat.n; ++rank_k) {
    std::vector<std::size_t> here, below;
    for (std::size_t x = 0; x < size_p; ++x) {
      if (lat.dims[x] == rank_k) here.push_back(x);
      if (rank_k > 0 && lat.dims[x] + 1 == rank_k) below.push_back(x);
    }
    std::vector<Vector> kernel;
    if (below.empty()) {
      for (std::size_t i = 0; i < here.size(); ++i) {
        Vector v(here.size(), FieldElement::zero(field));
        v[i] = FieldElement::one(field);
        kernel.push_back(v);
      }
    } else {
      Matrix block(field, below.size(), here.size());
      for (std::size_t i = 0; i < below.size(); ++i)
        for (std::size_t j = 0; j < here.size(); ++j) block(i, j) = lat.l(below[i], here[j]);
      kernel = nullspace(block);
    }
    for (const Vector& kv : kernel) {
      Vector v(size_p, FieldElement::zero(field));
      for (std::size_t j = 0; j < here.size(); ++j) v[here[j]] = kv[j];
      std::vector<Vector> cols;
      while (std::any_of(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); })) {
        cols.push_back(v);
        v = lat.r.apply(v);
      }
      LatticeComponent comp;
      comp.lowest_rank = rank_k;
      comp.d = cols.size() - 1;
      if (comp.d + 2 * rank_k != lat.n) throw std::logic_error("lattice component has unexpected diameter");
      comp.basis = Matrix::from_columns(field, size_p, cols);
      comp.a = restrict_to(out.a, comp.basis);
      comp.a_star = restrict_to(out.a_star, comp.basis);
      const long d = static_cast<long>(comp.d);
      Vector theta, theta_star;
      for (long i = 0; i <= d; ++i) {
        theta.push_back(s.pow(d - 2 * i) * scale);
        theta_star.push_back(s.pow(2 * i - d) * scale);
      }
      comp.recognition = is_leonard_pair(comp.a, comp.a_star, KnownSpectra{theta, theta_star});
      total += cols.size();
      out.components.push_back(std::move(comp));
    }
  }
  if (total != size_p) throw std::logic_error("lattice component dimensions do not sum to |P|");
  std::vector<Vector> all;
  for (const auto& comp : out.components)
    for (std::size_t j = 0; j < comp.basis.cols(); ++j) all.push_back(comp.basis.column(j));
  if (rank(Matrix::from_columns(field, size_p, all)) != size_p) {
    throw std::logic_error("lattice components do not span the module");
  }
  return out;
}

}  // namespace lpair
