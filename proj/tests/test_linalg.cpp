#include <gtest/gtest.h>

#include <algorithm>

#include "levelflat/linalg.hpp"
#include "support.hpp"

using namespace levelflat;
using namespace levelflat::testing;

TEST(Primes, Basics) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(1073741827));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(next_prime(13), 17u);
  EXPECT_EQ(reduce_mod(-1, 7), 6u);
  EXPECT_EQ(reduce_mod(-14, 7), 0u);
  for (std::uint32_t a = 1; a < 13; ++a) EXPECT_EQ(a * inverse_mod(a, 13) % 13, 1u);
}

TEST(FieldMatrix, RejectsCompositeModulus) {
  EXPECT_THROW(FieldMatrix(4, 2, 2), std::invalid_argument);
  EXPECT_THROW(FieldMatrix(1, 2, 2), std::invalid_argument);
}

TEST(Rref, DimensionMatchesBruteForceSpan) {
  for (std::uint32_t q : {2u, 3u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto m = random_field_matrix(q, uniform(1, 5), uniform(1, 6), 40);
      const auto span = brute_span(m);
      EXPECT_EQ(rref(m).dim(), log_q(span.size(), q));
    }
  }
}

TEST(Rref, CanonicalUnderRowOperations) {
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t q = trial % 2 ? 5 : 7;
    const auto m = random_field_matrix(q, uniform(1, 6), uniform(1, 8), 30);
    const auto base = rref(m);
    FieldMatrix shuffled(q, 0, m.cols());
    std::vector<std::size_t> order(m.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng());
    std::vector<std::uint32_t> row(m.cols());
    for (auto r : order) {
      const std::uint32_t s = static_cast<std::uint32_t>(uniform(1, q - 1));
      for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c) * s % q;
      shuffled.append_row(row);
    }
    EXPECT_EQ(rref(shuffled), base);
    EXPECT_EQ(rref(base.basis()), base);
    for (std::size_t r = 0; r < base.dim(); ++r) EXPECT_EQ(base.basis()(r, base.pivots()[r]), 1u);
  }
}

TEST(Rref, VandermondeRank) {
  // n distinct points in F_q give rank min(n, cols).
  const std::uint32_t q = 11;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t cols = 1; cols <= 8; ++cols) {
      FieldMatrix m(q, n, cols);
      for (std::size_t r = 0; r < n; ++r) {
        std::int64_t x = 1;
        for (std::size_t c = 0; c < cols; ++c) {
          m.set(r, c, x);
          x = x * static_cast<std::int64_t>(r + 1) % q;
        }
      }
      EXPECT_EQ(rref(m).dim(), std::min(n, cols));
    }
  }
}

TEST(Subspace, ContainsAgreesWithEnumeration) {
  const std::uint32_t q = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_field_matrix(q, uniform(1, 3), 4, 30);
    const auto s = rref(m);
    const auto span = brute_span(m);
    std::vector<std::uint32_t> v(4);
    for (int x = 0; x < 81; ++x) {
      int y = x;
      for (auto& e : v) {
        e = y % 3;
        y /= 3;
      }
      EXPECT_EQ(contains(s, v), span.count(v) == 1);
    }
  }
}

TEST(Subspace, SumAndIntersectionAgreeWithEnumeration) {
  for (std::uint32_t q : {2u, 3u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = uniform(2, 5);
      const auto a = random_field_matrix(q, uniform(1, 3), n, 30);
      const auto b = random_field_matrix(q, uniform(1, 3), n, 30);
      const auto sa = brute_span(a), sb = brute_span(b);
      std::vector<std::vector<std::uint32_t>> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      const auto inter = subspace_intersection(rref(a), rref(b));
      EXPECT_EQ(inter.dim(), log_q(common.size(), q));
      for (const auto& v : common) EXPECT_TRUE(contains(inter, v));

      FieldMatrix both = a;
      for (std::size_t r = 0; r < b.rows(); ++r) both.append_row(b.row(r));
      EXPECT_EQ(subspace_sum(rref(a), rref(b)).dim(), log_q(brute_span(both).size(), q));
      EXPECT_EQ(subspace_sum(rref(a), rref(b)).dim() + inter.dim(), rref(a).dim() + rref(b).dim());
      EXPECT_TRUE(is_subspace_of(inter, rref(a)));
      EXPECT_TRUE(is_subspace_of(inter, rref(b)));
    }
  }
}

TEST(Subspace, MismatchedAmbientThrows) {
  EXPECT_THROW(subspace_sum(SubspaceBasis(3, 2), SubspaceBasis(3, 3)), std::invalid_argument);
  EXPECT_THROW(subspace_intersection(SubspaceBasis(3, 2), SubspaceBasis(5, 2)), std::invalid_argument);
  EXPECT_THROW(contains(SubspaceBasis(3, 2), std::vector<std::uint32_t>{1}), std::invalid_argument);
}

TEST(LeftKernel, AgreesWithEnumeration) {
  const std::uint32_t q = 2;
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = random_field_matrix(q, uniform(1, 6), uniform(1, 5), 40);
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << m.rows()); ++mask) {
      bool zero = true;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::uint32_t s = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) s ^= (mask >> r & 1) * m(r, c);
        zero = zero && s == 0;
      }
      count += zero;
    }
    const auto k = left_kernel(m);
    EXPECT_EQ(std::size_t{1} << k.dim(), count);
    EXPECT_EQ(k.dim() + rref(m).dim(), m.rows());
  }
}

TEST(IntegerRank, SmallHandExamples) {
  EXPECT_EQ(rank_exact(IntegerMatrix::from_rows(2, {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank_exact(IntegerMatrix::from_rows(3, {{2, 4, 6}, {3, 6, 9}, {1, 0, 1}})), 2u);
  EXPECT_EQ(rank_exact(IntegerMatrix(3, 4)), 0u);
  // rank 2 over Q, rank 1 mod 2
  const auto m = IntegerMatrix::from_rows(2, {{2, 0}, {0, 1}});
  EXPECT_EQ(rank_exact(m), 2u);
  EXPECT_EQ(rank_mod(m, 2), 1u);
}

TEST(IntegerRank, ProductsOfThinFactors) {
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = uniform(2, 7), k = uniform(1, 4), m = uniform(2, 7);
    const auto a = random_integer_matrix(n, k, -50, 50);
    const auto b = random_integer_matrix(k, m, -50, 50);
    IntegerMatrix prod(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t t = 0; t < k; ++t) prod(i, j) += a(i, t) * b(t, j);
      }
    }
    const auto r = rank_exact(prod);
    EXPECT_LE(r, std::min({n, k, m}));
    const auto cons = rank_multimodular(prod, default_aux_primes(0));
    EXPECT_EQ(cons.rank, r);
    EXPECT_TRUE(cons.unanimous);
  }
}

TEST(IntegerRank, VandermondeOverZ) {
  for (std::size_t n = 1; n <= 6; ++n) {
    IntegerMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      mpz_class x = 1;
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = x;
        x *= static_cast<long>(r) + 2;
      }
    }
    EXPECT_EQ(rank_exact(m), n);
  }
}

TEST(AuxPrimes, DefaultsAreLargeDistinctPrimes) {
  const auto ps = default_aux_primes(7);
  ASSERT_EQ(ps.size(), 3u);
  for (auto q : ps) {
    EXPECT_TRUE(is_prime(q));
    EXPECT_GT(q, 1u << 30);
  }
  EXPECT_LT(ps[0], ps[1]);
  EXPECT_LT(ps[1], ps[2]);
}

TEST(Hnf, TextbookExample) {
  const auto a = IntegerMatrix::from_rows(4, {{2, 3, 6, 2}, {5, 6, 1, 6}, {8, 3, 1, 1}});
  const auto expected = IntegerMatrix::from_rows(4, {{1, 0, 50, -11}, {0, 3, 28, -2}, {0, 0, 61, -13}});
  EXPECT_EQ(hnf(a), expected);
}

TEST(Hnf, GeneratesWholeLattice) {
  const auto a = IntegerMatrix::from_rows(2, {{2, 0}, {0, 3}, {1, 1}});
  EXPECT_EQ(hnf(a), IntegerMatrix::from_rows(2, {{1, 0}, {0, 1}}));
}

TEST(Hnf, IndependentOfGeneratorOrderAndIdempotent) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_integer_matrix(uniform(1, 5), uniform(1, 5), -9, 9);
    const auto h = hnf(a);
    IntegerMatrix reversed(0, a.cols());
    for (std::size_t r = a.rows(); r-- > 0;) reversed.append_row(a.row(r));
    EXPECT_EQ(hnf(reversed), h);
    EXPECT_EQ(hnf(h), h);
    EXPECT_EQ(h.rows(), rank_exact(a));
    for (std::size_t r = 0; r < a.rows(); ++r) EXPECT_TRUE(lattice_contains(h, a.row(r)));
  }
}

TEST(Lattice, MembershipOfCombinations) {
  const auto a = IntegerMatrix::from_rows(3, {{2, 0, 0}, {0, 3, 1}});
  const auto h = hnf(a);
  std::vector<mpz_class> v = {4, -9, -3};
  EXPECT_TRUE(lattice_contains(h, v));
  v = {1, 0, 0};
  EXPECT_FALSE(lattice_contains(h, v));
  v = {0, 3, 2};
  EXPECT_FALSE(lattice_contains(h, v));
}

TEST(Lattice, InsertReportsGrowthFromGcdStep) {
  LatticeEchelon e(2);
  EXPECT_TRUE(e.insert({2, 0}));
  EXPECT_FALSE(e.insert({4, 0}));
  EXPECT_TRUE(e.insert({3, 0}));
  EXPECT_TRUE(e.contains({1, 0}));
  EXPECT_EQ(e.rank(), 1u);
}
