#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "levelflat/level_ideals.hpp"
#include "support.hpp"

using namespace levelflat;
using namespace levelflat::testing;

namespace {

// F_2 span of {g * m} over generators g and monomials m at p = 2, as a set of
// 16-bit masks, built by doubling.  Independent of the row-reduction code.
std::size_t brute_ideal_dim_p2(const std::vector<AlgebraElement<PrimeField>>& gens) {
  std::set<std::uint32_t> span{0};
  for (const auto& g : gens) {
    for (std::size_t m = 0; m < 16; ++m) {
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < 16; ++i) {
        if (g[i]) v ^= 1u << add_indices(i, m, 2);
      }
      if (span.count(v)) continue;
      std::vector<std::uint32_t> shifted;
      for (auto s : span) shifted.push_back(s ^ v);
      span.insert(shifted.begin(), shifted.end());
    }
  }
  std::size_t d = 0;
  while ((std::size_t{1} << d) < span.size()) ++d;
  return d;
}

IndexSet from_mask(unsigned mask, unsigned n) {
  IndexSet J;
  for (unsigned i = 0; i < n; ++i) {
    if (mask >> i & 1) J.push_back(i);
  }
  return J;
}

// Number of f in B = F_p[x,y]/(x^p, y^p) with x f and y f of degree >= d.
std::size_t brute_annihilator_size(unsigned p, unsigned d) {
  const unsigned n = p * p;
  std::size_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= p;
  std::size_t count = 0;
  std::vector<unsigned> f(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& e : f) {
      e = c % p;
      c /= p;
    }
    bool ok = true;
    for (unsigned a = 0; a < p && ok; ++a) {
      for (unsigned b = 0; b < p && ok; ++b) {
        if (f[a + p * b] == 0) continue;
        // x * x^a y^b and y * x^a y^b, each a single monomial or zero
        if (a + 1 < p && a + 1 + b < d) ok = false;
        if (b + 1 < p && a + b + 1 < d) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST(Formulas, PaperValues) {
  EXPECT_EQ(expected_full_dim(2), 10);
  EXPECT_EQ(expected_full_dim(3), 33);
  EXPECT_EQ(expected_full_dim(5), 145);
  EXPECT_EQ(expected_full_dim(7), 385);
  EXPECT_EQ(expected_single_family_dim(3, 2), 17);
  EXPECT_EQ(expected_mixed_dim(2, 1), 9);
}

TEST(Formulas, GradedPiecesSumToFullDim) {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    std::int64_t total = 0;
    for (unsigned i = 1; i <= 2 * p + 2; ++i) total += expected_graded_dim(p, i);
    EXPECT_EQ(total, expected_full_dim(p));
    // Partial sums over the column part give dim C(J) for #J = n.
    std::int64_t partial = 0;
    for (unsigned n = 1; n <= p + 1; ++n) {
      partial += expected_graded_dim(p, n);
      EXPECT_EQ(partial, expected_single_family_dim(p, n));
    }
  }
  EXPECT_THROW(expected_graded_dim(2, 0), std::invalid_argument);
  EXPECT_THROW(expected_graded_dim(2, 7), std::invalid_argument);
}

TEST(Spans, P2AgainstBruteForce) {
  const LevelIdeals L(2);
  const auto& fam = L.family();
  for (unsigned mask = 0; mask < 8; ++mask) {
    const auto J = from_mask(mask, 3);
    std::vector<AlgebraElement<PrimeField>> cs, rs, mixed = fam.columns;
    for (auto i : J) {
      cs.push_back(fam.columns[i]);
      rs.push_back(fam.rows[i]);
      mixed.push_back(fam.rows[i]);
    }
    EXPECT_EQ(L.span_C(J).dim(), brute_ideal_dim_p2(cs)) << format_index_set(J);
    EXPECT_EQ(L.span_R(J).dim(), brute_ideal_dim_p2(rs));
    EXPECT_EQ(L.C_plus_RJ(J).dim(), brute_ideal_dim_p2(mixed));
  }
  EXPECT_EQ(L.span_I().dim(), brute_ideal_dim_p2(fam.all()));
}

TEST(Spans, FullIdealDimensions) {
  for (unsigned p : {2u, 3u, 5u}) {
    const LevelIdeals L(p);
    EXPECT_EQ(std::int64_t(L.span_I().dim()), expected_full_dim(p));
    EXPECT_TRUE(is_ideal(L.span_I().basis, p));
    for (unsigned i = 0; i <= p; ++i) {
      EXPECT_EQ(L.principal(Side::column, i).dim(), p * p);
      EXPECT_EQ(L.principal(Side::row, i).dim(), p * p);
    }
  }
}

TEST(Spans, AllPairsGenerateTheSameIdeal) {
  for (unsigned p : {2u, 3u}) {
    const LevelIdeals L(p);
    EXPECT_EQ(L.span_I_all_pairs().basis, L.span_I().basis);
  }
}

TEST(Spans, DimensionFormulasP3) {
  const LevelIdeals L(3);
  std::map<std::size_t, std::set<std::size_t>> by_k;
  for (unsigned mask = 0; mask < 16; ++mask) {
    const auto J = from_mask(mask, 4);
    const auto rep = L.dim_formula_check(J);
    by_k[J.size()].insert(rep.dim_C);
    EXPECT_EQ(std::int64_t(rep.dim_C), rep.expected_single);
    EXPECT_EQ(rep.dim_R, rep.dim_C);
    EXPECT_EQ(rep.dim_C_plus_RJ, rep.dim_CJ_plus_R);
    if (!J.empty()) {
      EXPECT_TRUE(rep.pass()) << format_index_set(J);
    }
  }
  for (const auto& [k, dims] : by_k) EXPECT_EQ(dims.size(), 1u) << k;
}

TEST(Spans, MixedFormulaAtEmptySet) {
  // C + R(empty) = C has dim (p+1)p^2 - binom(p+2, 3), not the mixed formula.
  for (unsigned p : {2u, 3u}) {
    const LevelIdeals L(p);
    const auto rep = L.dim_formula_check({});
    EXPECT_EQ(std::int64_t(rep.dim_C_plus_RJ), expected_single_family_dim(p, p + 1));
    EXPECT_NE(std::int64_t(rep.dim_C_plus_RJ), rep.expected_mixed);
  }
}

TEST(Spans, StrictAndFullCases) {
  const LevelIdeals L(3);
  const auto I = L.span_I().basis;
  EXPECT_LT(L.span_C({0, 1, 2, 3}).dim(), I.dim());
  EXPECT_LT(L.span_R({0, 1, 2, 3}).dim(), I.dim());
  EXPECT_LT(L.C_plus_RJ({1, 3}).dim(), I.dim());
  EXPECT_EQ(L.C_plus_RJ({0, 2, 3}).basis, I);
  EXPECT_EQ(L.CJ_plus_R({1, 2, 3}).basis, I);
}

TEST(Spans, BadIndexSetsRejected) {
  const LevelIdeals L(2);
  EXPECT_THROW(L.span_C({3}), std::invalid_argument);
  EXPECT_THROW(L.span_C({1, 1}), std::invalid_argument);
  EXPECT_THROW(L.intersection_check({2}), std::invalid_argument);
  EXPECT_THROW(L.intersection_check({}), std::invalid_argument);
  EXPECT_THROW(L.key_lemma_instance_check({0}, Side::column), std::invalid_argument);
  EXPECT_THROW(L.filtration_dims({0, 1}, {0, 1, 2}), std::invalid_argument);
}

TEST(IsIdeal, DetectsNonIdeals) {
  const unsigned p = 3;
  FieldMatrix m(p, 1, 81);
  m.set(0, 0, 1);
  EXPECT_FALSE(is_ideal(rref(m), p));
  EXPECT_TRUE(is_ideal(SubspaceBasis::full(p, 81), p));
  EXPECT_TRUE(is_ideal(SubspaceBasis(p, 81), p));
}

TEST(Intersections, AllSubsetsSmallPrimes) {
  for (unsigned p : {2u, 3u}) {
    const LevelIdeals L(p);
    for (unsigned mask = 1; mask < (1u << p); ++mask) {
      const auto rep = L.intersection_check(from_mask(mask, p));
      EXPECT_TRUE(rep.pass()) << p << ' ' << format_index_set(rep.J);
    }
  }
}

TEST(Intersections, PowersOfMaximalIdeal) {
  // dim c m^n = #{(a, b) : a + b >= n, a, b < p}.
  const LevelIdeals L(3);
  for (unsigned n = 0; n <= 5; ++n) {
    std::size_t count = 0;
    for (unsigned a = 0; a < 3; ++a)
      for (unsigned b = 0; b < 3; ++b) count += a + b >= n;
    EXPECT_EQ(L.principal_power(Side::column, n).dim(), count);
    EXPECT_EQ(L.principal_power(Side::row, n).dim(), count);
  }
  EXPECT_EQ(L.principal_power(Side::column, 0), L.principal(Side::column, 3));
}

TEST(KeyLemma, InstancesHold) {
  const LevelIdeals L(3);
  for (IndexSet J : {IndexSet{1}, IndexSet{2}, IndexSet{1, 2}}) {
    EXPECT_EQ(L.key_lemma_instance_check(J, Side::column).outcome, KeyLemmaOutcome::holds);
    EXPECT_EQ(L.key_lemma_instance_check(J, Side::row).outcome, KeyLemmaOutcome::holds);
  }
  EXPECT_EQ(L.key_lemma_instance_check({}, Side::row).outcome, KeyLemmaOutcome::vacuous);
  EXPECT_EQ(L.key_lemma_instance_check({}, Side::column).outcome, KeyLemmaOutcome::holds);
}

TEST(Filtration, GradedDimensionsForRandomOrders) {
  for (unsigned p : {2u, 3u}) {
    const LevelIdeals L(p);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<unsigned> sigma(p + 1), tau(p + 1);
      std::iota(sigma.begin(), sigma.end(), 0u);
      std::iota(tau.begin(), tau.end(), 0u);
      std::shuffle(sigma.begin(), sigma.end(), rng());
      std::shuffle(tau.begin(), tau.end(), rng());
      const auto dims = L.filtration_dims(sigma, tau);
      ASSERT_EQ(dims.size(), 2 * p + 2);
      for (unsigned i = 0; i < dims.size(); ++i) EXPECT_EQ(std::int64_t(dims[i]), expected_graded_dim(p, i + 1));
    }
  }
}

TEST(Division, AgreesWithBruteForce) {
  for (unsigned p : {2u, 3u}) {
    for (unsigned d = 1; d <= 2 * p + 3; ++d) {
      const auto rep = division_lemma_check(p, d);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < rep.annihilator_dim; ++i) expected *= p;
      EXPECT_EQ(brute_annihilator_size(p, d), expected) << p << ' ' << d;
    }
  }
}

TEST(Division, HoldsExactlyBelowTwiceP) {
  // x^(p-1) y^(p-1) kills m_B but leaves m_B^(d-1) once d >= 2p.
  for (unsigned p : {2u, 3u, 5u}) {
    for (unsigned d = 1; d <= 2 * p + 3; ++d) {
      const auto rep = division_lemma_check(p, d);
      EXPECT_EQ(rep.equal, d < 2 * p) << p << ' ' << d;
      if (d >= 2 * p) {
        EXPECT_EQ(rep.annihilator_dim, 1u);
        EXPECT_EQ(rep.power_dim, 0u);
      }
    }
  }
  EXPECT_THROW(division_lemma_check(2, 0), std::invalid_argument);
  EXPECT_THROW(division_lemma_check(2, 8), std::invalid_argument);
}
