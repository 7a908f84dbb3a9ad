// Column and row generators of the full-level ideal and the subspaces they
// span inside A = F_p[S,T,U,V]/(S^p-1, ...) = F_p[s,t,u,v]/(s^p, ...).
//
// c_i = Phi_p(S T^i) Phi_p(U V^i) for 0 <= i < p, c_p = Phi_p(T) Phi_p(V),
// r_i = iota(c_i).  Index sets J are subsets of {0, ..., p}.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "levelflat/group_algebra.hpp"
#include "levelflat/linalg.hpp"
#include "levelflat/symmetry.hpp"

namespace levelflat {

using IndexSet = std::vector<unsigned>;

enum class Side { column, row };

template <class Ring>
struct GeneratorFamily {
  unsigned p;
  std::vector<AlgebraElement<Ring>> columns;  // c_0, ..., c_p
  std::vector<AlgebraElement<Ring>> rows;     // r_0, ..., r_p

  static GeneratorFamily make(unsigned p, const Ring& ring) {
    GeneratorFamily out{p, {}, {}};
    for (unsigned i = 0; i <= p; ++i) {
      const auto [a, b] = p1_point(i, p);
      out.columns.push_back(phi_column(p, ring, a, b));
      out.rows.push_back(iota(out.columns.back()));
    }
    return out;
  }

  /// Both generator kinds for every nonzero (a, b), p^2 - 1 of each.
  static std::vector<AlgebraElement<Ring>> all_pairs(unsigned p, const Ring& ring) {
    std::vector<AlgebraElement<Ring>> out;
    for (unsigned a = 0; a < p; ++a) {
      for (unsigned b = 0; b < p; ++b) {
        if (a == 0 && b == 0) continue;
        out.push_back(phi_column(p, ring, a, b));
        out.push_back(phi_row(p, ring, a, b));
      }
    }
    return out;
  }

  std::vector<AlgebraElement<Ring>> all() const {
    auto out = columns;
    out.insert(out.end(), rows.begin(), rows.end());
    return out;
  }
};

struct IdealSubspace {
  SubspaceBasis basis;
  std::string provenance;

  std::size_t dim() const { return basis.dim(); }
};

/// k p^2 - binom(k + 1, 3): dim C(J) = dim R(J) for #J = k.
std::int64_t expected_single_family_dim(unsigned p, std::int64_t k);
/// p^3 + p^2 - p - binom(p - k + 2, 3): dim(C + R(J)) = dim(C(J) + R).
std::int64_t expected_mixed_dim(unsigned p, std::int64_t k);
/// p^3 + p^2 - p.
std::int64_t expected_full_dim(unsigned p);
/// Graded piece i (1 <= i <= 2p + 2) of the column-then-row filtration.
std::int64_t expected_graded_dim(unsigned p, unsigned i);

/// Closed under multiplication by S, T, U and V.
bool is_ideal(const SubspaceBasis& s, unsigned p);

struct DimFormulaReport {
  IndexSet J;
  std::size_t k = 0;
  std::size_t dim_C = 0, dim_R = 0, dim_C_plus_RJ = 0, dim_CJ_plus_R = 0;
  std::int64_t expected_single = 0, expected_mixed = 0;

  bool pass() const {
    return std::int64_t(dim_C) == expected_single && std::int64_t(dim_R) == expected_single &&
           std::int64_t(dim_C_plus_RJ) == expected_mixed && std::int64_t(dim_CJ_plus_R) == expected_mixed;
  }
};

struct IntersectionReport {
  IndexSet J;
  std::size_t k = 0;
  bool column_contained = false;  // C(J) cap cA in c m_(s,u)^(2p-k-1)
  std::size_t column_dim = 0;
  std::int64_t column_expected = 0;  // binom(k + 1, 2)
  bool row_contained = false;        // (C + R(J)) cap rA in r m_(s,t)^(p-k)
  std::size_t row_dim = 0;
  std::int64_t row_expected = 0;  // p^2 - binom(p - k + 1, 2)

  bool pass() const {
    return column_contained && row_contained && std::int64_t(column_dim) == column_expected &&
           std::int64_t(row_dim) == row_expected;
  }
};

enum class KeyLemmaOutcome { holds, fails, vacuous };

const char* to_string(KeyLemmaOutcome o);

struct KeyLemmaReport {
  IndexSet J;
  Side side = Side::column;
  unsigned m = 0;
  KeyLemmaOutcome outcome = KeyLemmaOutcome::vacuous;
};

/// The subspaces of A generated by column and row generators.  All
/// principal ideals c_i A and r_i A are computed once on construction.
class LevelIdeals {
 public:
  explicit LevelIdeals(unsigned p);

  unsigned p() const { return p_; }
  const PrimeField& field() const { return field_; }
  const GeneratorFamily<PrimeField>& family() const { return family_; }
  std::size_t ambient_dim() const { return std::size_t{p_} * p_ * p_ * p_; }

  const SubspaceBasis& principal(Side side, unsigned i) const;

  IdealSubspace span_C(const IndexSet& J) const;
  IdealSubspace span_R(const IndexSet& J) const;
  IdealSubspace C_plus_RJ(const IndexSet& J) const;
  IdealSubspace CJ_plus_R(const IndexSet& J) const;
  IdealSubspace span_I() const;
  /// I generated by both generator kinds at every nonzero (a, b).
  IdealSubspace span_I_all_pairs() const;

  /// sub cap cA (Side::column) or sub cap rA (Side::row), c = c_p, r = r_p.
  SubspaceBasis intersect_with_principal(const SubspaceBasis& sub, Side which) const;
  /// c m_(s,u)^n or r m_(s,t)^n.
  SubspaceBasis principal_power(Side which, unsigned n) const;

  DimFormulaReport dim_formula_check(const IndexSet& J) const;

  /// J must lie in {0, ..., p - 1} with 1 <= #J <= p.
  IntersectionReport intersection_check(const IndexSet& J) const;

  /// Dimensions of gr_1, ..., gr_{2p+2} for the filtration
  /// F_n = sum_{i<n} c_sigma(i) A (n <= p + 1), C + sum_{i<=n-p-2} r_tau(i) A.
  std::vector<std::size_t> filtration_dims(const std::vector<unsigned>& sigma,
                                           const std::vector<unsigned>& tau) const;

  /// Instance of the key lemma (column side) or its iota-mirror (row side)
  /// for the ideal C(J') (resp. C + R(J')) with J' in {1, ..., p - 1}.  The
  /// hypothesis exponent is m = 2p - #J' - 1 (resp. p - #J').
  KeyLemmaReport key_lemma_instance_check(const IndexSet& J, Side side) const;

 private:
  SubspaceBasis sum_of(Side side, const IndexSet& J, SubspaceBasis start) const;

  unsigned p_;
  PrimeField field_;
  GeneratorFamily<PrimeField> family_;
  std::vector<SubspaceBasis> column_spans_;
  std::vector<SubspaceBasis> row_spans_;
};

struct DivisionReport {
  unsigned p = 0;
  unsigned d = 0;
  std::size_t annihilator_dim = 0;
  std::size_t power_dim = 0;
  bool equal = false;
};

/// In B = F_p[x, y]/(x^p, y^p), compares {f : f m_B in m_B^d} with
/// m_B^(d-1).  Throws std::invalid_argument unless 1 <= d <= 2p + 3.
DivisionReport division_lemma_check(unsigned p, unsigned d);

std::string format_index_set(const IndexSet& J);

}  // namespace levelflat
