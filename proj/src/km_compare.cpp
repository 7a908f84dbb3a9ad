#include "levelflat/km_compare.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "levelflat/level_ideals.hpp"
#include "levelflat/symmetry.hpp"

namespace levelflat {

LambdaKey lambda_variable(unsigned var) {
  if (var >= kMaxLambdaVars) throw std::invalid_argument("too many lambda variables");
  return LambdaKey{1} << (kLambdaBits * var);
}

std::vector<unsigned> lambda_exponents(LambdaKey key, unsigned nvars) {
  std::vector<unsigned> out(nvars);
  for (unsigned i = 0; i < nvars; ++i) out[i] = (key >> (kLambdaBits * i)) & ((1u << kLambdaBits) - 1);
  return out;
}

unsigned lambda_degree(LambdaKey key, unsigned nvars) {
  unsigned d = 0;
  for (auto e : lambda_exponents(key, nvars)) d += e;
  return d;
}

bool lambda_grlex_less(LambdaKey a, LambdaKey b, unsigned nvars) {
  const unsigned da = lambda_degree(a, nvars), db = lambda_degree(b, nvars);
  if (da != db) return da < db;
  const auto ea = lambda_exponents(a, nvars), eb = lambda_exponents(b, nvars);
  return ea > eb;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in lambda arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in lambda arithmetic");
  return r;
}

// LambdaPolynomial

LambdaPolynomial LambdaPolynomial::constant(std::int64_t c) {
  LambdaPolynomial out;
  out.add_term(0, c);
  return out;
}

LambdaPolynomial LambdaPolynomial::variable(unsigned var) {
  LambdaPolynomial out;
  out.add_term(lambda_variable(var), 1);
  return out;
}

std::int64_t LambdaPolynomial::coeff(LambdaKey key) const {
  auto it = terms.find(key);
  return it == terms.end() ? 0 : it->second;
}

void LambdaPolynomial::add_term(LambdaKey key, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms.erase(it);
}

LambdaPolynomial& LambdaPolynomial::operator+=(const LambdaPolynomial& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}

LambdaPolynomial& LambdaPolynomial::operator-=(const LambdaPolynomial& o) {
  for (const auto& [k, c] : o.terms) add_term(k, checked_mul(c, -1));
  return *this;
}

LambdaPolynomial LambdaPolynomial::operator-() const {
  LambdaPolynomial out;
  for (const auto& [k, c] : terms) out.terms.emplace(k, checked_mul(c, -1));
  return out;
}

LambdaPolynomial operator*(const LambdaPolynomial& a, const LambdaPolynomial& b) {
  LambdaPolynomial out;
  if (a.is_zero() || b.is_zero()) return out;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) out.add_term(ka + kb, checked_mul(ca, cb));
  }
  return out;
}

std::int64_t LambdaPolynomial::evaluate(const std::vector<std::int64_t>& lambda) const {
  const unsigned nvars = static_cast<unsigned>(lambda.size());
  std::int64_t total = 0;
  for (const auto& [k, c] : terms) {
    std::int64_t term = c;
    const auto e = lambda_exponents(k, nvars);
    for (unsigned i = 0; i < nvars; ++i) {
      for (unsigned r = 0; r < e[i]; ++r) term = checked_mul(term, lambda[i]);
    }
    total = checked_add(total, term);
  }
  return total;
}

std::vector<std::int64_t> AlgebraLambdaPolynomial::coeff(LambdaKey key) const {
  auto it = terms.find(key);
  if (it != terms.end()) return it->second;
  return std::vector<std::int64_t>(std::size_t{p} * p * p * p, 0);
}

AlgebraElement<Integers> AlgebraLambdaPolynomial::coeff_element(LambdaKey key) const {
  AlgebraElement<Integers> out(p, Integers{});
  const auto c = coeff(key);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_class(static_cast<long>(c[i]));
  return out;
}

void require_kmd_prime(unsigned p) {
  if (p != 2 && p != 3) throw std::invalid_argument("the x-ideal construction supports p = 2 and p = 3 only");
}

LambdaMatrix generic_mult_matrix(unsigned p) {
  require_kmd_prime(p);
  const unsigned n = p * p;
  LambdaMatrix m(n, std::vector<LambdaPolynomial>(n));
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      for (unsigned c = 0; c < p; ++c) {
        for (unsigned d = 0; d < p; ++d) {
          const unsigned da = (a + p - c) % p, db = (b + p - d) % p;
          m[a + p * b][c + p * d] = LambdaPolynomial::variable(da + p * db);
        }
      }
    }
  }
  return m;
}

std::vector<LambdaPolynomial> char_poly_divfree(const LambdaMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("char_poly_divfree needs a square matrix");
  }
  // Descending coefficients of the characteristic polynomial of the leading
  // i x i block, extended one row and column at a time.
  std::vector<LambdaPolynomial> v{LambdaPolynomial::constant(1)};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t idx = i - 1;
    std::vector<LambdaPolynomial> q(i + 1);
    q[0] = LambdaPolynomial::constant(1);
    q[1] = -m[idx][idx];
    std::vector<LambdaPolynomial> w(idx);
    for (std::size_t r = 0; r < idx; ++r) w[r] = m[r][idx];
    for (std::size_t k = 2; k <= i; ++k) {
      LambdaPolynomial rw;
      for (std::size_t c = 0; c < idx; ++c) rw += m[idx][c] * w[c];
      q[k] = -rw;
      if (k == i) break;
      std::vector<LambdaPolynomial> next(idx);
      for (std::size_t r = 0; r < idx; ++r) {
        for (std::size_t c = 0; c < idx; ++c) next[r] += m[r][c] * w[c];
      }
      w = std::move(next);
    }
    std::vector<LambdaPolynomial> out(i + 1);
    for (std::size_t r = 0; r <= i; ++r) {
      for (std::size_t j = 0; j <= std::min(r, i - 1); ++j) out[r] += q[r - j] * v[j];
    }
    v = std::move(out);
  }
  std::reverse(v.begin(), v.end());
  return v;
}

std::vector<LambdaPolynomial> generic_function(unsigned p) {
  require_kmd_prime(p);
  std::vector<LambdaPolynomial> f;
  for (unsigned v = 0; v < p * p; ++v) f.push_back(LambdaPolynomial::variable(v));
  return f;
}

std::vector<LambdaPolynomial> constant_function(unsigned p, const std::vector<std::int64_t>& coeffs) {
  if (coeffs.size() != std::size_t{p} * p) throw std::invalid_argument("need p^2 coefficients");
  std::vector<LambdaPolynomial> f;
  for (auto c : coeffs) f.push_back(LambdaPolynomial::constant(c));
  return f;
}

std::size_t section_monomial(unsigned p, unsigned i, unsigned j, unsigned a, unsigned b) {
  return linear_index(mat2(std::int64_t{i} * a, std::int64_t{i} * b, std::int64_t{j} * a, std::int64_t{j} * b, p), p);
}

std::vector<AlgebraLambdaPolynomial> sections_product(unsigned p, const std::vector<LambdaPolynomial>& f) {
  require_kmd_prime(p);
  const unsigned n = p * p;
  if (f.size() != n) throw std::invalid_argument("f needs p^2 coefficients");
  const std::size_t dim = std::size_t{n} * n;

  std::vector<std::vector<std::size_t>> shift(dim, std::vector<std::size_t>(dim));
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t x = 0; x < dim; ++x) shift[m][x] = add_indices(x, m, p);
  }

  std::vector<AlgebraLambdaPolynomial> poly(1);
  poly[0].p = p;
  std::vector<std::int64_t> one(dim, 0);
  one[0] = 1;
  poly[0].terms.emplace(0, one);

  for (unsigned i = 0; i < p; ++i) {
    for (unsigned j = 0; j < p; ++j) {
      std::vector<AlgebraLambdaPolynomial> next(poly.size() + 1);
      for (auto& e : next) e.p = p;
      for (std::size_t k = 0; k < poly.size(); ++k) {
        // T * poly[k]
        for (const auto& [key, vec] : poly[k].terms) next[k + 1].terms[key] = vec;
      }
      for (std::size_t k = 0; k < poly.size(); ++k) {
        // -L * poly[k]
        auto& target = next[k].terms;
        for (const auto& [key, vec] : poly[k].terms) {
          for (unsigned ab = 0; ab < n; ++ab) {
            const auto& sh = shift[section_monomial(p, i, j, ab % p, ab / p)];
            for (const auto& [fk, fc] : f[ab].terms) {
              auto& dst = target.try_emplace(key + fk, dim, 0).first->second;
              const std::int64_t c = checked_mul(fc, -1);
              for (std::size_t x = 0; x < dim; ++x) {
                if (vec[x] != 0) dst[sh[x]] = checked_add(dst[sh[x]], checked_mul(c, vec[x]));
              }
            }
          }
        }
      }
      for (auto& e : next) {
        std::erase_if(e.terms, [](const auto& kv) {
          return std::all_of(kv.second.begin(), kv.second.end(), [](std::int64_t c) { return c == 0; });
        });
      }
      poly = std::move(next);
    }
  }
  return poly;
}

std::vector<AlgebraElement<Integers>> times_ideal_generators(unsigned p) {
  require_kmd_prime(p);
  const unsigned nvars = p * p;
  const auto lhs = char_poly_divfree(generic_mult_matrix(p));
  const auto rhs = sections_product(p, generic_function(p));
  if (lhs.size() != rhs.size()) throw std::logic_error("degree mismatch between the two sides");

  std::vector<AlgebraElement<Integers>> out;
  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    std::vector<LambdaKey> keys;
    for (const auto& [key, c] : lhs[k].terms) keys.push_back(key);
    for (const auto& [key, c] : rhs[k].terms) keys.push_back(key);
    std::sort(keys.begin(), keys.end(),
              [&](LambdaKey a, LambdaKey b) { return lambda_grlex_less(a, b, nvars); });
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto key : keys) {
      auto diff = rhs[k].coeff(key);
      diff[0] = checked_add(diff[0], checked_mul(lhs[k].coeff(key), -1));
      if (std::all_of(diff.begin(), diff.end(), [](std::int64_t c) { return c == 0; })) continue;
      if (!seen.insert(diff).second) continue;
      AlgebraElement<Integers> g(p, Integers{});
      for (std::size_t i = 0; i < diff.size(); ++i) g[i] = mpz_class(static_cast<long>(diff[i]));
      out.push_back(std::move(g));
    }
  }
  return out;
}

const char* to_string(KMDSide side) {
  switch (side) {
    case KMDSide::column: return "C^KMD";
    case KMDSide::row: return "R^KMD";
    case KMDSide::combined: return "I^KMD";
  }
  return "?";
}

IntegerMatrix ideal_lattice_closure(unsigned p, const std::vector<std::vector<mpz_class>>& generators) {
  const std::size_t dim = std::size_t{p} * p * p * p;
  LatticeEchelon e(dim);
  for (const auto& g : generators) e.insert(g);
  const std::size_t steps[4] = {1, p, std::size_t{p} * p, std::size_t{p} * p * p};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& row : e.rows()) {
      for (auto step : steps) {
        std::vector<mpz_class> shifted(dim);
        for (std::size_t i = 0; i < dim; ++i) shifted[add_indices(i, step, p)] = row[i];
        if (e.insert(std::move(shifted))) changed = true;
      }
    }
  }
  return e.hnf();
}

SubspaceBasis mod_p_image(const IntegerMatrix& lattice, unsigned p) {
  FieldMatrix m(p, lattice.rows(), lattice.cols());
  for (std::size_t r = 0; r < lattice.rows(); ++r) {
    for (std::size_t c = 0; c < lattice.cols(); ++c) {
      m.set(r, c, static_cast<std::int64_t>(mpz_fdiv_ui(lattice(r, c).get_mpz_t(), p)));
    }
  }
  return rref(std::move(m));
}

namespace {

std::vector<std::vector<mpz_class>> matrix_rows(const IntegerMatrix& m) {
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

KMDIdeal make_ideal(unsigned p, KMDSide side, IntegerMatrix lattice) {
  KMDIdeal out;
  out.p = p;
  out.side = side;
  out.mod_p = mod_p_image(lattice, p);
  out.lattice = std::move(lattice);
  return out;
}

}  // namespace

KMDIdeal build_times_ideal(unsigned p) {
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& g : times_ideal_generators(p)) rows.emplace_back(g.coeffs().begin(), g.coeffs().end());
  return make_ideal(p, KMDSide::column, ideal_lattice_closure(p, rows));
}

KMDIdeal dualize(const KMDIdeal& ideal) {
  if (ideal.side != KMDSide::column) throw std::invalid_argument("dualize expects the column-side ideal");
  const auto perm = iota_permutation(ideal.p);
  LatticeEchelon e(ideal.lattice.cols());
  for (std::size_t r = 0; r < ideal.lattice.rows(); ++r) {
    std::vector<mpz_class> v(ideal.lattice.cols());
    for (std::size_t i = 0; i < v.size(); ++i) v[perm(i)] = ideal.lattice(r, i);
    e.insert(std::move(v));
  }
  return make_ideal(ideal.p, KMDSide::row, e.hnf());
}

KMDIdeal combine(const KMDIdeal& column, const KMDIdeal& row) {
  if (column.side != KMDSide::column || row.side != KMDSide::row || column.p != row.p) {
    throw std::invalid_argument("combine expects C^KMD and R^KMD at the same p");
  }
  LatticeEchelon e(column.lattice.cols());
  for (auto&& v : matrix_rows(column.lattice)) e.insert(std::move(v));
  for (auto&& v : matrix_rows(row.lattice)) e.insert(std::move(v));
  return make_ideal(column.p, KMDSide::combined, e.hnf());
}

IntegerMatrix full_level_lattice(unsigned p) {
  const auto fam = GeneratorFamily<Integers>::make(p, Integers{});
  return hnf(ideal_generator_matrix(fam.all()));
}

KMDComparison compare_with_full(unsigned p) { return compare_with_full(build_times_ideal(p)); }

KMDComparison compare_with_full(const KMDIdeal& column) {
  const unsigned p = column.p;
  const auto row = dualize(column);
  const auto kmd = combine(column, row);
  const auto fam = GeneratorFamily<Integers>::make(p, Integers{});

  KMDComparison rep;
  rep.p = p;
  const auto gens = fam.all();
  rep.generators_total = gens.size();
  for (const auto& g : gens) {
    if (lattice_contains(kmd.lattice, g.coeffs())) ++rep.generators_contained;
  }
  const auto full = full_level_lattice(p);
  rep.lattices_equal = full == kmd.lattice;
  rep.rank_I = full.rows();
  rep.rank_KMD = kmd.lattice.rows();
  rep.dim_I_mod_p = mod_p_image(full, p).dim();
  rep.dim_KMD_mod_p = kmd.mod_p.dim();

  const auto c_lattice = hnf(ideal_generator_matrix(fam.columns));
  const auto r_lattice = hnf(ideal_generator_matrix(fam.rows));
  const auto c_mod_p = mod_p_image(c_lattice, p);
  rep.column_equal_over_Z = c_lattice == column.lattice;
  rep.column_equal_mod_p = c_mod_p == column.mod_p;
  rep.row_equal_over_Z = r_lattice == row.lattice;
  rep.row_equal_mod_p = mod_p_image(r_lattice, p) == row.mod_p;
  rep.dim_C_mod_p = c_mod_p.dim();
  rep.dim_CKMD_mod_p = column.mod_p.dim();
  return rep;
}

ChaiNormanReport chai_norman_check(unsigned p) {
  if (p != 2) throw std::invalid_argument("chai_norman_check is defined for p = 2");
  return chai_norman_check(build_times_ideal(p));
}

ChaiNormanReport chai_norman_check(const KMDIdeal& column) {
  if (column.side != KMDSide::column) throw std::invalid_argument("expects the column-side ideal");
  const std::size_t dim = std::size_t{column.p} * column.p * column.p * column.p;
  ChaiNormanReport rep;
  rep.p = column.p;
  rep.mod_p_fiber_dim = dim - column.mod_p.dim();
  rep.rational_fiber_dim = dim - rank_exact(column.lattice);
  rep.gl2_order = enumerate_gl2(column.p).size();
  rep.non_flat = rep.mod_p_fiber_dim > rep.rational_fiber_dim;
  return rep;
}

TraceReport trace_identity_check(unsigned p) {
  require_supported_prime(p);
  const Integers zz;
  // h*(X) acts on the p^2 sections diagonally, so its trace is the sum of
  // the diagonal entries X(h(i,j)) and likewise for Y.
  AlgebraElement<Integers> tx(p, zz), ty(p, zz);
  for (unsigned i = 0; i < p; ++i) {
    for (unsigned j = 0; j < p; ++j) {
      tx[section_monomial(p, i, j, 1, 0)] += 1;
      ty[section_monomial(p, i, j, 0, 1)] += 1;
    }
  }
  TraceReport rep;
  rep.p = p;
  rep.x_trace_matches = tx == phi_column(p, zz, 1, 0);
  rep.y_trace_matches = ty == phi_column(p, zz, 0, 1);
  // X permutes the basis X^a Y^b of B without fixed points.
  std::int64_t trace = 0;
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      if ((a + 1) % p == a) ++trace;
    }
  }
  rep.b_trace_zero = trace == 0;
  return rep;
}

std::uint64_t generic_fiber_count(unsigned p) {
  if (!is_prime(p) || p > 7) throw std::invalid_argument("generic_fiber_count needs a prime p <= 7");
  std::uint64_t count = 0;
  for (unsigned e = 0; e < p * p * p * p; ++e) {
    const unsigned m[4] = {e % p, (e / p) % p, (e / (p * p)) % p, e / (p * p * p)};
    bool ok = true;
    for (unsigned x = 0; x < p && ok; ++x) {
      for (unsigned y = 0; y < p && ok; ++y) {
        if (x == 0 && y == 0) continue;
        const bool row_zero = (x * m[0] + y * m[2]) % p == 0 && (x * m[1] + y * m[3]) % p == 0;
        const bool col_zero = (x * m[0] + y * m[1]) % p == 0 && (x * m[2] + y * m[3]) % p == 0;
        if (row_zero || col_zero) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace levelflat
