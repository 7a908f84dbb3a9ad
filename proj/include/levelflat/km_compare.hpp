// The x-homomorphism ideal of Hom((Z/p)^2, mu_p x mu_p) over Z.
//
// For the generic f = sum lambda_ab X^a Y^b in B = A[X, Y]/(X^p - 1, Y^p - 1)
// the ideal is generated by the coefficients (in T and in the lambda) of
//   prod_{(i,j)} (T - f(h(i,j)))  -  det(T - M_f),
// where M_f is multiplication by f on B and h(i,j) sends X to S^i U^j and
// Y to T^i V^j.  Only p = 2 and p = 3 are supported.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "levelflat/group_algebra.hpp"
#include "levelflat/linalg.hpp"

namespace levelflat {

/// Monomial in the lambda variables, 4 bits of exponent per variable.
/// Variable a + p*b is lambda_ab.  Products add keys.
using LambdaKey = std::uint64_t;

inline constexpr unsigned kLambdaBits = 4;
inline constexpr unsigned kMaxLambdaVars = 16;

LambdaKey lambda_variable(unsigned var);
unsigned lambda_degree(LambdaKey key, unsigned nvars);
std::vector<unsigned> lambda_exponents(LambdaKey key, unsigned nvars);
/// Graded lexicographic order, variables ranked by index.
bool lambda_grlex_less(LambdaKey a, LambdaKey b, unsigned nvars);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Sparse polynomial in the lambda variables with integer coefficients.
struct LambdaPolynomial {
  std::unordered_map<LambdaKey, std::int64_t> terms;

  static LambdaPolynomial constant(std::int64_t c);
  static LambdaPolynomial variable(unsigned var);

  bool is_zero() const { return terms.empty(); }
  std::int64_t coeff(LambdaKey key) const;
  void add_term(LambdaKey key, std::int64_t c);

  LambdaPolynomial& operator+=(const LambdaPolynomial& o);
  LambdaPolynomial& operator-=(const LambdaPolynomial& o);
  LambdaPolynomial operator-() const;
  friend LambdaPolynomial operator+(LambdaPolynomial a, const LambdaPolynomial& b) { return a += b; }
  friend LambdaPolynomial operator-(LambdaPolynomial a, const LambdaPolynomial& b) { return a -= b; }
  friend LambdaPolynomial operator*(const LambdaPolynomial& a, const LambdaPolynomial& b);

  /// Value at integer lambda.
  std::int64_t evaluate(const std::vector<std::int64_t>& lambda) const;

  bool operator==(const LambdaPolynomial&) const = default;
};

/// Sparse polynomial in lambda with coefficients in A_Z, each a dense
/// vector of length p^4.
struct AlgebraLambdaPolynomial {
  unsigned p = 0;
  std::unordered_map<LambdaKey, std::vector<std::int64_t>> terms;

  std::vector<std::int64_t> coeff(LambdaKey key) const;
  AlgebraElement<Integers> coeff_element(LambdaKey key) const;
};

using LambdaMatrix = std::vector<std::vector<LambdaPolynomial>>;

/// Supported range of the lambda machinery.
void require_kmd_prime(unsigned p);

/// Matrix of multiplication by the generic f on B in the basis X^a Y^b
/// (index a + p*b): entry [(a,b)][(c,d)] = lambda_(a-c, b-d).
LambdaMatrix generic_mult_matrix(unsigned p);

/// Coefficients of det(T - M) in ascending powers of T, by Berkowitz's
/// division-free algorithm.
std::vector<LambdaPolynomial> char_poly_divfree(const LambdaMatrix& m);

/// The generic f: entry a + p*b is lambda_ab.
std::vector<LambdaPolynomial> generic_function(unsigned p);
/// A specific f given by integer coefficients of X^a Y^b.
std::vector<LambdaPolynomial> constant_function(unsigned p, const std::vector<std::int64_t>& coeffs);

/// Linear index in A of f(h(i,j)) for f = X^a Y^b: S^(ia) T^(ib) U^(ja) V^(jb).
std::size_t section_monomial(unsigned p, unsigned i, unsigned j, unsigned a, unsigned b);

/// Coefficients in ascending powers of T of prod_{(i,j)} (T - f(h(i,j))).
/// f is given by its coefficients of X^a Y^b at index a + p*b.
std::vector<AlgebraLambdaPolynomial> sections_product(unsigned p, const std::vector<LambdaPolynomial>& f);

/// One generator per (T-degree, lambda-monomial) of sections_product minus
/// char_poly, zeros and duplicates removed, in grlex order within each degree.
std::vector<AlgebraElement<Integers>> times_ideal_generators(unsigned p);

enum class KMDSide { column, row, combined };
const char* to_string(KMDSide side);

struct KMDIdeal {
  unsigned p = 0;
  KMDSide side = KMDSide::column;
  IntegerMatrix lattice{0, 0};  // Hermite normal form
  SubspaceBasis mod_p{2, 0};

  std::size_t rank() const { return lattice.rows(); }
};

/// Hermite basis of the smallest ideal of A_Z containing the given vectors.
IntegerMatrix ideal_lattice_closure(unsigned p, const std::vector<std::vector<mpz_class>>& generators);

/// Image of a lattice in A_Z inside A_Z / p.
SubspaceBasis mod_p_image(const IntegerMatrix& lattice, unsigned p);

KMDIdeal build_times_ideal(unsigned p);
/// Applies iota to a column-side ideal.  Throws on any other side.
KMDIdeal dualize(const KMDIdeal& ideal);
KMDIdeal combine(const KMDIdeal& column, const KMDIdeal& row);

/// Hermite basis of I_Z, generated by the 2(p+1) column and row generators.
IntegerMatrix full_level_lattice(unsigned p);

struct KMDComparison {
  unsigned p = 0;
  std::size_t generators_total = 0;
  std::size_t generators_contained = 0;
  bool lattices_equal = false;
  std::size_t rank_I = 0, rank_KMD = 0;
  std::size_t dim_I_mod_p = 0, dim_KMD_mod_p = 0;
  // C = C^KMD and R = R^KMD, reported, not asserted.
  bool column_equal_mod_p = false, column_equal_over_Z = false;
  bool row_equal_mod_p = false, row_equal_over_Z = false;
  std::size_t dim_C_mod_p = 0, dim_CKMD_mod_p = 0;

  bool pass() const { return generators_contained == generators_total && lattices_equal; }
};

KMDComparison compare_with_full(unsigned p);
/// Same, reusing an already built column-side ideal.
KMDComparison compare_with_full(const KMDIdeal& column);

struct ChaiNormanReport {
  unsigned p = 0;
  std::size_t mod_p_fiber_dim = 0;     // p^4 - dim C^KMD mod p
  std::size_t rational_fiber_dim = 0;  // p^4 - rank over Q
  std::size_t gl2_order = 0;
  bool non_flat = false;
};

ChaiNormanReport chai_norman_check(unsigned p = 2);
ChaiNormanReport chai_norman_check(const KMDIdeal& column);

struct TraceReport {
  unsigned p = 0;
  bool x_trace_matches = false;  // Tr(h*(X)) = Phi_p(S) Phi_p(U)
  bool y_trace_matches = false;  // Tr(h*(Y)) = Phi_p(T) Phi_p(V)
  bool b_trace_zero = false;     // Tr(X) = 0 on B

  bool pass() const { return x_trace_matches && y_trace_matches && b_trace_zero; }
};

/// p prime in [2, 13].
TraceReport trace_identity_check(unsigned p);

/// 2x2 matrices over F_p whose nontrivial row and column combinations are
/// all nonzero.  p <= 7.
std::uint64_t generic_fiber_count(unsigned p);

}  // namespace levelflat
