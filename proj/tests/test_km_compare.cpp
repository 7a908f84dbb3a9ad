#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "levelflat/km_compare.hpp"
#include "levelflat/level_ideals.hpp"
#include "levelflat/symmetry.hpp"
#include "support.hpp"

using namespace levelflat;
using namespace levelflat::testing;

namespace {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

std::int64_t leibniz_det(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::int64_t total = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// det(t - m) by Leibniz.
std::int64_t char_value(const IntMatrix& m, std::int64_t t) {
  IntMatrix a = m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = (i == j ? t : 0) - m[i][j];
  }
  return leibniz_det(a);
}

std::int64_t eval_poly(const std::vector<LambdaPolynomial>& coeffs, const std::vector<std::int64_t>& lambda,
                       std::int64_t t) {
  std::int64_t v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k].evaluate(lambda);
  return v;
}

LambdaMatrix constant_matrix(const IntMatrix& m) {
  LambdaMatrix out(m.size(), std::vector<LambdaPolynomial>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = LambdaPolynomial::constant(m[i][j]);
  return out;
}

IntMatrix evaluate(const LambdaMatrix& m, const std::vector<std::int64_t>& lambda) {
  IntMatrix out(m.size(), std::vector<std::int64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j].evaluate(lambda);
  return out;
}

std::vector<std::int64_t> random_lambda(unsigned n, std::int64_t bound) {
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = uniform(-bound, bound);
  return out;
}

}  // namespace

TEST(Lambda, KeysAndOrder) {
  const LambdaKey x0 = lambda_variable(0), x1 = lambda_variable(1);
  EXPECT_EQ(lambda_degree(x0 + x0 + x1, 4), 3u);
  EXPECT_EQ(lambda_exponents(x0 + x0 + x1, 3), (std::vector<unsigned>{2, 1, 0}));
  EXPECT_TRUE(lambda_grlex_less(x1, x0 + x1, 4));
  EXPECT_TRUE(lambda_grlex_less(x0, x1, 4));  // same degree: lambda_0 first
  EXPECT_FALSE(lambda_grlex_less(x0, x0, 4));
  EXPECT_THROW(lambda_variable(16), std::invalid_argument);
}

TEST(Lambda, ArithmeticAndOverflow) {
  const auto x = LambdaPolynomial::variable(0), y = LambdaPolynomial::variable(1);
  const auto sq = (x + y) * (x - y);
  EXPECT_EQ(sq, x * x - y * y);
  EXPECT_TRUE((sq - sq).is_zero());
  EXPECT_EQ(sq.evaluate({3, 2}), 5);
  EXPECT_THROW(checked_mul(std::int64_t{1} << 62, 4), std::overflow_error);
  EXPECT_THROW(checked_add(INT64_MAX, 1), std::overflow_error);
}

TEST(CharPoly, OneByOne) {
  const auto c = char_poly_divfree(constant_matrix({{7}}));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], LambdaPolynomial::constant(-7));
  EXPECT_EQ(c[1], LambdaPolynomial::constant(1));
}

TEST(CharPoly, AgreesWithLeibnizOnIntegerMatrices) {
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = uniform(1, 5);
    IntMatrix m(n, std::vector<std::int64_t>(n));
    for (auto& row : m)
      for (auto& x : row) x = uniform(-6, 6);
    const auto c = char_poly_divfree(constant_matrix(m));
    ASSERT_EQ(c.size(), n + 1);
    for (std::int64_t t = -3; t <= 3; ++t) EXPECT_EQ(eval_poly(c, {}, t), char_value(m, t));
    std::int64_t trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += m[i][i];
    EXPECT_EQ(c[n - 1].evaluate({}), -trace);
    EXPECT_EQ(c[0].evaluate({}), (n % 2 ? -1 : 1) * leibniz_det(m));
  }
}

TEST(CharPoly, DiagonalIsProductOfLinearFactors) {
  const IntMatrix m = {{2, 0, 0}, {0, -1, 0}, {0, 0, 3}};
  const auto c = char_poly_divfree(constant_matrix(m));
  // (T - 2)(T + 1)(T - 3) = T^3 - 4T^2 + T + 6
  const std::vector<std::int64_t> expected = {6, 1, -4, 1};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(c[k], LambdaPolynomial::constant(expected[k]));
}

TEST(CharPoly, SymbolicSpecializesCorrectly) {
  const auto m = generic_mult_matrix(2);
  const auto c = char_poly_divfree(m);
  for (int trial = 0; trial < 10; ++trial) {
    const auto lambda = random_lambda(4, 4);
    const auto numeric = evaluate(m, lambda);
    for (std::int64_t t = -2; t <= 2; ++t) EXPECT_EQ(eval_poly(c, lambda, t), char_value(numeric, t));
  }
}

TEST(MultMatrix, TrivialSpecializations) {
  for (unsigned p : {2u, 3u}) {
    const auto m = generic_mult_matrix(p);
    const unsigned n = p * p;
    std::vector<std::int64_t> lambda(n, 0);
    for (const auto& row : evaluate(m, lambda))
      for (auto x : row) EXPECT_EQ(x, 0);
    lambda[0] = 1;
    const auto id = evaluate(m, lambda);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) EXPECT_EQ(id[i][j], i == j ? 1 : 0);
    // f = X permutes the basis without fixed points, so Tr(X) = 0.
    std::fill(lambda.begin(), lambda.end(), 0);
    lambda[1] = 1;
    const auto x = evaluate(m, lambda);
    std::int64_t trace = 0;
    for (unsigned i = 0; i < n; ++i) trace += x[i][i];
    EXPECT_EQ(trace, 0);
  }
  EXPECT_THROW(generic_mult_matrix(5), std::invalid_argument);
}

TEST(MultMatrix, ColumnsAreProducts) {
  // Column (c, d) holds the coefficients of f * X^c Y^d.
  const unsigned p = 3;
  const auto m = generic_mult_matrix(p);
  const auto lambda = random_lambda(9, 5);
  const auto num = evaluate(m, lambda);
  for (unsigned c = 0; c < p; ++c) {
    for (unsigned d = 0; d < p; ++d) {
      std::vector<std::int64_t> prod(9, 0);
      for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < p; ++b) prod[(a + c) % p + p * ((b + d) % p)] += lambda[a + p * b];
      for (unsigned r = 0; r < 9; ++r) EXPECT_EQ(num[r][c + p * d], prod[r]);
    }
  }
}

TEST(Sections, ConstantOneGivesBinomialPower) {
  for (unsigned p : {2u, 3u}) {
    const unsigned n = p * p;
    std::vector<std::int64_t> one(n, 0);
    one[0] = 1;
    const auto poly = sections_product(p, constant_function(p, one));
    ASSERT_EQ(poly.size(), n + 1);
    for (unsigned k = 0; k <= n; ++k) {
      auto c = poly[k].coeff(0);
      const std::int64_t expected = ((n - k) % 2 ? -1 : 1) * binom(n, k);
      EXPECT_EQ(c[0], expected);
      c[0] = 0;
      EXPECT_TRUE(std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; }));
    }
  }
}

TEST(Sections, TraceOfXAndY) {
  const Integers zz;
  for (unsigned p : {2u, 3u}) {
    const unsigned n = p * p;
    std::vector<std::int64_t> x(n, 0), y(n, 0);
    x[1] = 1;
    y[p] = 1;
    const auto px = sections_product(p, constant_function(p, x));
    const auto py = sections_product(p, constant_function(p, y));
    EXPECT_EQ(px[n - 1].coeff_element(0), phi_column(p, zz, 1, 0).scaled(mpz_class(-1)));
    EXPECT_EQ(py[n - 1].coeff_element(0), phi_column(p, zz, 0, 1).scaled(mpz_class(-1)));
  }
}

TEST(Sections, GenericSpecializesToConstant) {
  const unsigned p = 2;
  const auto generic = sections_product(p, generic_function(p));
  for (int trial = 0; trial < 5; ++trial) {
    const auto lambda = random_lambda(4, 3);
    const auto direct = sections_product(p, constant_function(p, lambda));
    for (std::size_t k = 0; k < generic.size(); ++k) {
      std::vector<std::int64_t> sum(16, 0);
      for (const auto& [key, vec] : generic[k].terms) {
        LambdaPolynomial mono;
        mono.add_term(key, 1);
        const auto w = mono.evaluate(lambda);
        for (std::size_t i = 0; i < 16; ++i) sum[i] += w * vec[i];
      }
      EXPECT_EQ(sum, direct[k].coeff(0));
    }
  }
}

TEST(Sections, HomogeneousInLambda) {
  for (unsigned p : {2u, 3u}) {
    const unsigned n = p * p;
    const auto rhs = sections_product(p, generic_function(p));
    const auto lhs = char_poly_divfree(generic_mult_matrix(p));
    for (unsigned k = 0; k <= n; ++k) {
      for (const auto& [key, v] : rhs[k].terms) EXPECT_EQ(lambda_degree(key, n), n - k);
      for (const auto& [key, v] : lhs[k].terms) EXPECT_EQ(lambda_degree(key, n), n - k);
    }
  }
}

TEST(TimesIdeal, ContainsTraceElementsAndColumns) {
  const unsigned p = 2;
  const Integers zz;
  const auto column = build_times_ideal(p);
  EXPECT_TRUE(lattice_contains(column.lattice, phi_column(p, zz, 1, 0).coeffs()));
  const auto fam = GeneratorFamily<Integers>::make(p, zz);
  for (const auto& c : fam.columns) EXPECT_TRUE(lattice_contains(column.lattice, c.coeffs()));
  const LevelIdeals L(p);
  EXPECT_TRUE(is_subspace_of(L.span_C({0, 1, 2}).basis, column.mod_p));
  EXPECT_EQ(column.mod_p.dim(), 8u);
  EXPECT_TRUE(is_ideal(column.mod_p, p));
}

TEST(TimesIdeal, ClosureOfSingleGenerator) {
  const Integers zz;
  const auto c0 = phi_column(3, zz, 1, 0);
  const auto lattice = ideal_lattice_closure(3, {std::vector<mpz_class>(c0.coeffs().begin(), c0.coeffs().end())});
  const std::vector<AlgebraElement<Integers>> gens{c0};
  EXPECT_EQ(lattice, hnf(ideal_generator_matrix(gens)));
  EXPECT_EQ(lattice.rows(), 9u);
}

TEST(TimesIdeal, DualizeAndCombine) {
  const auto column = build_times_ideal(2);
  const auto row = dualize(column);
  EXPECT_EQ(row.side, KMDSide::row);
  EXPECT_EQ(row.mod_p.dim(), column.mod_p.dim());
  EXPECT_EQ(row.rank(), column.rank());
  EXPECT_THROW(dualize(row), std::invalid_argument);
  // iota twice is the identity on lattices.
  const auto perm = iota_permutation(2);
  LatticeEchelon back(16);
  for (std::size_t r = 0; r < row.lattice.rows(); ++r) {
    std::vector<mpz_class> v(16);
    for (std::size_t i = 0; i < 16; ++i) v[perm(i)] = row.lattice(r, i);
    back.insert(v);
  }
  EXPECT_EQ(back.hnf(), column.lattice);
  const Integers zz;
  EXPECT_TRUE(lattice_contains(row.lattice, iota(phi_column(2, zz, 1, 0)).coeffs()));
  const auto both = combine(column, row);
  EXPECT_EQ(both.side, KMDSide::combined);
  EXPECT_THROW(combine(row, column), std::invalid_argument);
}

TEST(TimesIdeal, CombinedIsStableUnderBothActions) {
  const auto column = build_times_ideal(2);
  const auto both = combine(column, dualize(column));
  const ActionTables t(2);
  for (std::size_t e = 0; e < t.group.size(); ++e) {
    EXPECT_EQ(t.left[e].apply(both.mod_p), both.mod_p);
    EXPECT_EQ(t.right[e].apply(both.mod_p), both.mod_p);
  }
}

TEST(Comparison, EqualityAtP2) {
  const auto rep = compare_with_full(2);
  EXPECT_GT(rep.generators_total, 0u);
  EXPECT_EQ(rep.generators_contained, rep.generators_total);
  EXPECT_TRUE(rep.lattices_equal);
  EXPECT_EQ(rep.rank_KMD, rep.rank_I);
  EXPECT_EQ(rep.rank_I, 10u);
  EXPECT_EQ(rep.dim_KMD_mod_p, rep.dim_I_mod_p);
  EXPECT_EQ(rep.dim_CKMD_mod_p, 8u);
  EXPECT_TRUE(rep.column_equal_mod_p);
  EXPECT_TRUE(rep.pass());
}

TEST(Comparison, NonFlatnessAtP2) {
  const auto rep = chai_norman_check(2);
  EXPECT_EQ(rep.mod_p_fiber_dim, 8u);
  EXPECT_EQ(rep.rational_fiber_dim, 6u);
  EXPECT_EQ(rep.gl2_order, 6u);
  EXPECT_TRUE(rep.non_flat);
  EXPECT_THROW(chai_norman_check(3), std::invalid_argument);
}

TEST(Trace, AllSupportedPrimes) {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) EXPECT_TRUE(trace_identity_check(p).pass()) << p;
  const auto ident = trace_identity_check(2);
  EXPECT_TRUE(ident.x_trace_matches);
  EXPECT_THROW(trace_identity_check(4), std::invalid_argument);
}

TEST(GenericFiber, CountsMatchGL2) {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    std::uint64_t invertible = 0;
    for (unsigned e = 0; e < p * p * p * p; ++e) {
      const unsigned a = e % p, b = e / p % p, c = e / (p * p) % p, d = e / (p * p * p);
      invertible += (a * d + p * p - b * c) % p != 0;
    }
    EXPECT_EQ(generic_fiber_count(p), invertible);
    EXPECT_EQ(generic_fiber_count(p), std::uint64_t{p * p - 1} * (p * p - p));
  }
  EXPECT_EQ(generic_fiber_count(2), 6u);
  EXPECT_EQ(generic_fiber_count(3), 48u);
  EXPECT_THROW(generic_fiber_count(11), std::invalid_argument);
}

TEST(KmdLong, EqualityAtP3) {
  const auto column = build_times_ideal(3);
  const auto rep = compare_with_full(column);
  EXPECT_EQ(rep.generators_contained, rep.generators_total);
  EXPECT_TRUE(rep.lattices_equal);
  EXPECT_EQ(rep.dim_KMD_mod_p, 33u);
  EXPECT_EQ(rep.rank_I, 33u);
}
