#pragma once

// Seeded corpus of parameter arrays and the brute-force ordering oracle
// shared by the unit and acceptance suites.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lpair/generators.hpp"
#include "lpair/leonard.hpp"
#include "lpair/parray.hpp"

namespace lpair::testing {

struct CorpusEntry {
  std::string label;
  ParameterArray pa;
};

inline ParameterArray extract_canonical(const Matrix& a, const Matrix& a_star) {
  const PairRecognition rec = is_leonard_pair(a, a_star);
  if (!rec.is_leonard_pair) throw std::logic_error("corpus source is not a Leonard pair: " + rec.failure_reason);
  return extract_parameter_array(*rec.witness);
}

inline FieldElement random_nonzero(std::mt19937_64& rng, const FieldSpec& f) {
  while (true) {
    FieldElement x = random_element(rng, f);
    if (!x.is_zero()) return x;
  }
}

/// sl2 and U_q arrays over Q, three recurrence families over Q, GF(101) and
/// GF(5), and one affine perturbation of each.
inline std::vector<CorpusEntry> build_corpus(std::uint64_t seed = 20240601) {
  std::vector<CorpusEntry> base;
  const FieldSpec q_field = FieldSpec::rationals();
  for (std::size_t d = 0; d <= 8; ++d) {
    auto [a, as] = sl2_pair(d, q_field);
    base.push_back({"sl2 d=" + std::to_string(d), extract_canonical(a, as)});
  }
  for (const char* q : {"2", "3/2"}) {
    for (int eps : {1, -1}) {
      for (std::size_t d = 0; d <= 6; ++d) {
        const FieldElement qq = FieldElement::parse(q_field, q);
        for (long beta : {3L, 5L, 7L}) {
          UqPair p = uq_pair(qq, eps, d, FieldElement::one(q_field), FieldElement(q_field, beta));
          if (!p.avoids_forbidden) continue;
          base.push_back({"uq q=" + std::string(q) + " eps=" + std::to_string(eps) + " d=" + std::to_string(d),
                          extract_canonical(p.a, p.a_star)});
          break;
        }
      }
    }
  }
  std::mt19937_64 rng(seed);
  const RecurrenceFamily families[] = {RecurrenceFamily::classical, RecurrenceFamily::q_type,
                                       RecurrenceFamily::bannai_ito};
  const char* family_names[] = {"classical", "q-type", "bannai-ito"};
  for (const FieldSpec& f : {q_field, FieldSpec::prime(101), FieldSpec::prime(5)}) {
    const std::size_t max_d = f.kind() == FieldKind::prime && f.modulus() == 5 ? 4 : 8;
    for (int rep = 0; rep < 2; ++rep) {
      for (std::size_t fam = 0; fam < 3; ++fam) {
        for (std::size_t d = 0; d <= max_d; ++d) {
          base.push_back({std::string(family_names[fam]) + " " + f.to_string() + " d=" + std::to_string(d),
                          random_parameter_array(rng, f, d, families[fam])});
        }
      }
    }
  }
  std::vector<CorpusEntry> out = base;
  for (const auto& e : base) {
    const FieldSpec& f = e.pa.field;
    ParameterArray t = affine_transform(e.pa, random_nonzero(rng, f), random_element(rng, f), random_nonzero(rng, f),
                                        random_element(rng, f));
    out.push_back({e.label + " affine", t});
  }
  return out;
}

/// Every array obtained by adding 1 to one coordinate.
inline std::vector<ParameterArray> one_coordinate_mutations(const ParameterArray& pa) {
  std::vector<ParameterArray> out;
  const FieldElement one = FieldElement::one(pa.field);
  for (Vector ParameterArray::*seq : {&ParameterArray::theta, &ParameterArray::theta_star, &ParameterArray::varphi,
                                      &ParameterArray::phi}) {
    for (std::size_t i = 0; i < (pa.*seq).size(); ++i) {
      ParameterArray m = pa;
      (m.*seq)[i] += one;
      out.push_back(std::move(m));
    }
  }
  return out;
}

/// Block condition for one side: X_i Y X_j = 0 for |i-j| > 1 and != 0 for
/// |i-j| = 1, with the idempotents X taken in the given order.
inline bool ordering_ok(const std::vector<Matrix>& x, const Matrix& y, const std::vector<std::size_t>& order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap == 0) continue;
      const bool zero = (x[order[i]] * y * x[order[j]]).is_zero();
      if (gap == 1 && zero) return false;
      if (gap > 1 && !zero) return false;
    }
  }
  return true;
}

struct BruteForceVerdict {
  bool is_leonard_pair = false;
  std::size_t systems = 0;  // valid (E ordering, E* ordering) combinations
};

/// Tries all (d+1)! orderings of each idempotent family.
inline BruteForceVerdict brute_force_leonard(const Matrix& a, const Matrix& a_star) {
  BruteForceVerdict v;
  const auto ea = is_multiplicity_free(a);
  const auto es = is_multiplicity_free(a_star);
  if (!ea || !es) return v;
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::size_t star_ok = 0, plain_ok = 0;
  std::iota(order.begin(), order.end(), 0);
  do {
    if (ordering_ok(es->idempotents, a, order)) ++star_ok;
  } while (std::next_permutation(order.begin(), order.end()));
  std::iota(order.begin(), order.end(), 0);
  do {
    if (ordering_ok(ea->idempotents, a_star, order)) ++plain_ok;
  } while (std::next_permutation(order.begin(), order.end()));
  v.systems = star_ok * plain_ok;
  v.is_leonard_pair = v.systems > 0;
  return v;
}

/// Direct sum diag(x, y).
inline Matrix direct_sum(const Matrix& x, const Matrix& y) {
  Matrix out(x.field(), x.rows() + y.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) out(x.rows() + i, x.cols() + j) = y(i, j);
  return out;
}

inline Matrix random_matrix(std::mt19937_64& rng, const FieldSpec& f, std::size_t n) {
  Matrix m(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(rng, f);
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, const FieldSpec& f, std::size_t n) {
  while (true) {
    Matrix m = random_matrix(rng, f, n);
    if (rank(m) == n) return m;
  }
}

struct NonExample {
  std::string kind;
  Matrix a, a_star;
};

/// 100 seeded pairs of four kinds (random tridiagonal, multiplicity-free
/// but mis-patterned, reducible direct sums, defective), each confirmed
/// non-Leonard by the brute-force oracle; d <= 4.
inline std::vector<NonExample> build_non_examples(std::uint64_t seed = 777) {
  std::mt19937_64 rng(seed);
  std::vector<NonExample> out;
  const FieldSpec fields[] = {FieldSpec::rationals(), FieldSpec::prime(101)};
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  auto keep = [&](const std::string& kind, const Matrix& a, const Matrix& as) {
    if (brute_force_leonard(a, as).is_leonard_pair) return false;
    out.push_back({kind, a, as});
    return true;
  };
  for (int k = 0, made = 0; made < 25; ++k) {
    const FieldSpec& f = fields[k % 2];
    const std::size_t n = dim(rng);
    Matrix a(f, n);
    Vector diag;
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = random_element(rng, f);
      if (i > 0) {
        a(i, i - 1) = random_nonzero(rng, f);
        a(i - 1, i) = random_nonzero(rng, f);
      }
      diag.push_back(FieldElement(f, static_cast<long>(i) * 2 + 1));
    }
    made += keep("random tridiagonal", a, Matrix::diagonal(diag));
  }
  for (int k = 0, made = 0; made < 25; ++k) {
    const FieldSpec& f = fields[k % 2];
    const std::size_t n = dim(rng);
    Vector theta, theta_star;
    for (std::size_t i = 0; i < n; ++i) {
      theta.push_back(FieldElement(f, static_cast<long>(i)));
      theta_star.push_back(FieldElement(f, static_cast<long>(3 * i + 1)));
    }
    const Matrix g = random_invertible(rng, f, n);
    made += keep("multiplicity-free, wrong pattern", inverse(g) * Matrix::diagonal(theta) * g,
                 Matrix::diagonal(theta_star));
  }
  for (int k = 0, made = 0; made < 25; ++k) {
    const FieldSpec& f = fields[k % 2];
    const std::size_t d1 = k % 2, d2 = 1 + k % 3;
    ParameterArray p1 = random_parameter_array(rng, f, d1);
    ParameterArray p2 = random_parameter_array(rng, f, d2);
    auto [a1, s1] = construct_tridiagonal(p1);
    auto [a2, s2] = construct_tridiagonal(p2);
    made += keep("reducible direct sum", direct_sum(a1, a2), direct_sum(s1, s2));
  }
  for (int k = 0, made = 0; made < 25; ++k) {
    const FieldSpec& f = fields[k % 2];
    const std::size_t n = dim(rng);
    ParameterArray p = random_parameter_array(rng, f, n - 1);
    auto [a, as] = construct_bidiagonal(p);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    a(i, i) = a(i - 1, i - 1);  // repeated eigenvalue on a Jordan chain
    if (k % 2 == 0) {
      made += keep("defective A", a, as);
    } else {
      made += keep("defective A*", as, a);
    }
  }
  return out;
}

}  // namespace lpair::testing
