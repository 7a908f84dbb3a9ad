// The group algebra R[S,T,U,V]/(S^p-1, T^p-1, U^p-1, V^p-1).
//
// Elements are dense coefficient vectors of length p^4.  The monomial
// S^i T^j U^k V^l has exponent matrix [[i, j], [k, l]] and linear index
// i + p*j + p^2*k + p^3*l.  The same index order is used for the shifted
// basis s^i t^j u^k v^l with s = S - 1, t = T - 1, u = U - 1, v = V - 1.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "levelflat/linalg.hpp"

namespace levelflat {

/// 2x2 matrix over Z/p stored row-major as {a, b, c, d} = [[a, b], [c, d]].
struct Mat2 {
  std::array<std::uint32_t, 4> e{};

  std::uint32_t operator()(int r, int c) const { return e[2 * r + c]; }
  bool operator==(const Mat2&) const = default;
  auto operator<=>(const Mat2&) const = default;
};

Mat2 mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, unsigned p);
Mat2 multiply(const Mat2& x, const Mat2& y, unsigned p);
Mat2 transpose(const Mat2& x);
std::uint32_t determinant(const Mat2& x, unsigned p);

/// Exponents [[i, j], [k, l]] of the monomial S^i T^j U^k V^l.
using ExponentMatrix = Mat2;

std::size_t linear_index(const ExponentMatrix& e, unsigned p);
ExponentMatrix exponent_of(std::size_t index, unsigned p);
/// Linear index of the product of two monomials.
std::size_t add_indices(std::size_t a, std::size_t b, unsigned p);

/// Throws std::invalid_argument unless p is a prime in [2, 13].
void require_supported_prime(unsigned p);

/// Product formula prod_{i=1}^{k} (n + 1 - i) / i, with binom(n, 0) = 1.
/// Vanishes for 0 <= n < k. Negative k throws.
std::int64_t binom(std::int64_t n, std::int64_t k);

// Coefficient rings.  Each provides value_type and the handful of operations
// AlgebraElement needs.

class PrimeField {
 public:
  using value_type = std::uint32_t;
  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const { return q_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return reduce_mod(v, q_); }
  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % q_); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + q_ - b) % q_); }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>(std::uint64_t{a} * b % q_); }
  bool is_zero(value_type a) const { return a == 0; }
  std::string name() const { return "F" + std::to_string(q_); }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t q_;
};

class Integers {
 public:
  using value_type = mpz_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return mpz_class(static_cast<long>(v)); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a == 0; }
  std::string name() const { return "Z"; }
  bool operator==(const Integers&) const = default;
};

class Rationals {
 public:
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool is_zero(const value_type& a) const { return a == 0; }
  std::string name() const { return "Q"; }
  bool operator==(const Rationals&) const = default;
};

enum class Basis { group, shifted };

inline const char* to_string(Basis b) { return b == Basis::group ? "group" : "shifted"; }

template <class Ring>
class AlgebraElement {
 public:
  using value_type = typename Ring::value_type;

  /// The zero element.
  AlgebraElement(unsigned p, Ring ring, Basis basis = Basis::group)
      : p_(p), ring_(std::move(ring)), basis_(basis) {
    require_supported_prime(p);
    coeffs_.assign(std::size_t{p} * p * p * p, ring_.zero());
  }

  static AlgebraElement one(unsigned p, Ring ring, Basis basis = Basis::group) {
    AlgebraElement out(p, std::move(ring), basis);
    out.coeffs_[0] = out.ring_.one();
    return out;
  }

  static AlgebraElement monomial(unsigned p, Ring ring, const ExponentMatrix& e, Basis basis = Basis::group) {
    AlgebraElement out(p, std::move(ring), basis);
    out.coeffs_[linear_index(e, p)] = out.ring_.one();
    return out;
  }

  unsigned p() const { return p_; }
  const Ring& ring() const { return ring_; }
  Basis basis() const { return basis_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const value_type> coeffs() const { return coeffs_; }
  const value_type& operator[](std::size_t i) const { return coeffs_[i]; }
  value_type& operator[](std::size_t i) { return coeffs_[i]; }
  const value_type& coeff(const ExponentMatrix& e) const { return coeffs_[linear_index(e, p_)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!ring_.is_zero(c)) return false;
    }
    return true;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_.add(coeffs_[i], o.coeffs_[i]);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = ring_.sub(coeffs_[i], o.coeffs_[i]);
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

  AlgebraElement scaled(const value_type& s) const {
    AlgebraElement out = *this;
    for (auto& c : out.coeffs_) c = ring_.mul(c, s);
    return out;
  }

  bool operator==(const AlgebraElement& o) const {
    return p_ == o.p_ && ring_ == o.ring_ && basis_ == o.basis_ && coeffs_ == o.coeffs_;
  }

  void check_compatible(const AlgebraElement& o) const {
    if (p_ != o.p_ || !(ring_ == o.ring_)) throw std::invalid_argument("elements of different algebras");
    if (basis_ != o.basis_) throw std::invalid_argument("elements expressed in different bases");
  }

 private:
  unsigned p_;
  Ring ring_;
  Basis basis_;
  std::vector<value_type> coeffs_;
};

/// Product in the group basis: exponents add mod p.
template <class Ring>
AlgebraElement<Ring> mul(const AlgebraElement<Ring>& f, const AlgebraElement<Ring>& g) {
  f.check_compatible(g);
  if (f.basis() != Basis::group) {
    throw std::invalid_argument("multiplication needs group-basis operands; convert first");
  }
  const auto& ring = f.ring();
  const unsigned p = f.p();
  AlgebraElement<Ring> out(p, ring);
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!ring.is_zero(g[j])) support.push_back(j);
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (ring.is_zero(f[i])) continue;
    for (std::size_t j : support) {
      const std::size_t k = add_indices(i, j, p);
      out[k] = ring.add(out[k], ring.mul(f[i], g[j]));
    }
  }
  return out;
}

template <class Ring>
AlgebraElement<Ring> operator*(const AlgebraElement<Ring>& f, const AlgebraElement<Ring>& g) {
  return mul(f, g);
}

/// f times the group-basis monomial with the given linear index.
template <class Ring>
AlgebraElement<Ring> multiply_by_monomial(const AlgebraElement<Ring>& f, std::size_t index) {
  if (f.basis() != Basis::group) throw std::invalid_argument("group basis required");
  AlgebraElement<Ring> out(f.p(), f.ring());
  for (std::size_t i = 0; i < f.size(); ++i) out[add_indices(i, index, f.p())] = f[i];
  return out;
}

/// Sum over (m, n) in (Z/p)^2 of the monomials with exponent matrix
/// [[m*a, m*b], [n*a, n*b]], i.e. Phi_p(S^a T^b) * Phi_p(U^a V^b).
template <class Ring>
AlgebraElement<Ring> phi_column(unsigned p, const Ring& ring, std::int64_t a, std::int64_t b) {
  AlgebraElement<Ring> out(p, ring);
  const std::uint32_t ra = reduce_mod(a, p), rb = reduce_mod(b, p);
  if (ra == 0 && rb == 0) throw std::invalid_argument("phi_column needs a nonzero pair");
  for (std::uint32_t m = 0; m < p; ++m) {
    for (std::uint32_t n = 0; n < p; ++n) {
      const auto e = mat2(std::int64_t{m} * ra, std::int64_t{m} * rb, std::int64_t{n} * ra, std::int64_t{n} * rb, p);
      auto& c = out[linear_index(e, p)];
      c = ring.add(c, ring.one());
    }
  }
  return out;
}

/// Phi_p(S^a U^b) * Phi_p(T^a V^b): exponent matrices [[m*a, n*a], [m*b, n*b]].
template <class Ring>
AlgebraElement<Ring> phi_row(unsigned p, const Ring& ring, std::int64_t a, std::int64_t b) {
  AlgebraElement<Ring> out(p, ring);
  const std::uint32_t ra = reduce_mod(a, p), rb = reduce_mod(b, p);
  if (ra == 0 && rb == 0) throw std::invalid_argument("phi_row needs a nonzero pair");
  for (std::uint32_t m = 0; m < p; ++m) {
    for (std::uint32_t n = 0; n < p; ++n) {
      const auto e = mat2(std::int64_t{m} * ra, std::int64_t{n} * ra, std::int64_t{m} * rb, std::int64_t{n} * rb, p);
      auto& c = out[linear_index(e, p)];
      c = ring.add(c, ring.one());
    }
  }
  return out;
}

namespace detail {

// Applies the p x p matrix `kernel` (row = output exponent, col = input
// exponent) along every one of the four variable axes.
template <class Ring>
std::vector<typename Ring::value_type> tensor_transform(std::span<const typename Ring::value_type> in, unsigned p,
                                                        const Ring& ring,
                                                        const std::vector<std::vector<std::int64_t>>& kernel) {
  using V = typename Ring::value_type;
  std::vector<V> cur(in.begin(), in.end());
  std::vector<V> next(cur.size(), ring.zero());
  std::vector<std::vector<V>> k(p, std::vector<V>(p));
  for (unsigned r = 0; r < p; ++r) {
    for (unsigned c = 0; c < p; ++c) k[r][c] = ring.from_int(kernel[r][c]);
  }
  std::size_t stride = 1;
  for (int axis = 0; axis < 4; ++axis, stride *= p) {
    std::fill(next.begin(), next.end(), ring.zero());
    for (std::size_t idx = 0; idx < cur.size(); ++idx) {
      if (ring.is_zero(cur[idx])) continue;
      const std::size_t digit = (idx / stride) % p;
      const std::size_t base = idx - digit * stride;
      for (unsigned out_d = 0; out_d < p; ++out_d) {
        if (ring.is_zero(k[out_d][digit])) continue;
        auto& slot = next[base + out_d * stride];
        slot = ring.add(slot, ring.mul(k[out_d][digit], cur[idx]));
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace detail

/// Group-basis coefficients to shifted-basis coefficients, using
/// S^n = sum_a binom(n, a) s^a in each variable.
template <class Ring>
AlgebraElement<Ring> to_shifted(const AlgebraElement<Ring>& f) {
  if (f.basis() != Basis::group) throw std::invalid_argument("to_shifted expects a group-basis element");
  const unsigned p = f.p();
  std::vector<std::vector<std::int64_t>> kernel(p, std::vector<std::int64_t>(p));
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned n = 0; n < p; ++n) kernel[a][n] = binom(n, a);
  }
  AlgebraElement<Ring> out(p, f.ring(), Basis::shifted);
  auto coeffs = detail::tensor_transform(f.coeffs(), p, f.ring(), kernel);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = std::move(coeffs[i]);
  return out;
}

/// Inverse of to_shifted: s^a = sum_n binom(a, n) (-1)^(a-n) S^n.
template <class Ring>
AlgebraElement<Ring> from_shifted(const AlgebraElement<Ring>& f) {
  if (f.basis() != Basis::shifted) throw std::invalid_argument("from_shifted expects a shifted-basis element");
  const unsigned p = f.p();
  std::vector<std::vector<std::int64_t>> kernel(p, std::vector<std::int64_t>(p));
  for (unsigned n = 0; n < p; ++n) {
    for (unsigned a = 0; a < p; ++a) {
      const int sign = (static_cast<int>(a) - static_cast<int>(n)) % 2 == 0 ? 1 : -1;
      kernel[n][a] = sign * binom(a, n);
    }
  }
  AlgebraElement<Ring> out(p, f.ring(), Basis::group);
  auto coeffs = detail::tensor_transform(f.coeffs(), p, f.ring(), kernel);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = std::move(coeffs[i]);
  return out;
}

/// The universal homomorphism h = [[S, T], [U, V]].  The point h(a, b) is
/// (S^a T^b, U^a V^b); each coordinate is returned as an exponent matrix.
struct UniversalHom {
  unsigned p;
  std::pair<ExponentMatrix, ExponentMatrix> evaluate(std::int64_t a, std::int64_t b) const {
    return {mat2(a, b, 0, 0, p), mat2(0, 0, a, b, p)};
  }
};

enum class ShiftedVar { s = 0, t = 1, u = 2, v = 3 };

/// Span of cofactor * x^a y^b over shifted monomials in the two given
/// variables with a + b >= min_degree and a, b <= p - 1, as a subspace of
/// the group-basis coordinates.  Needs coefficients in F_p.
SubspaceBasis shifted_monomial_span(std::array<ShiftedVar, 2> vars, unsigned min_degree,
                                    const AlgebraElement<PrimeField>& cofactor);

/// The ideal generated by `gens`, as the span of {g * m} over all monomials m.
SubspaceBasis ideal_span(std::span<const AlgebraElement<PrimeField>> gens);

/// Distinct rows g * m over generators g and monomials m, as an integer
/// matrix whose row lattice is the ideal generated over Z.
IntegerMatrix ideal_generator_matrix(std::span<const AlgebraElement<Integers>> gens);

AlgebraElement<PrimeField> reduce_mod(const AlgebraElement<Integers>& f, std::uint32_t q);

/// Coefficients of an element of F_q as a row vector.
std::vector<std::uint32_t> as_row(const AlgebraElement<PrimeField>& f);
/// Row vector of length p^4 back into an element.
AlgebraElement<PrimeField> from_row(unsigned p, const PrimeField& field, std::span<const std::uint32_t> row,
                                    Basis basis = Basis::group);

AlgebraElement<Integers> from_integer_row(unsigned p, std::span<const mpz_class> row, Basis basis = Basis::group);

// JSON form {p, ring, basis, coeffs}.  Integer coefficients that fit in 64
// bits are written as numbers, larger ones as decimal strings; rationals are
// strings "n/d".

nlohmann::json to_json(const AlgebraElement<PrimeField>& f);
nlohmann::json to_json(const AlgebraElement<Integers>& f);
nlohmann::json to_json(const AlgebraElement<Rationals>& f);

AlgebraElement<PrimeField> prime_field_element_from_json(const nlohmann::json& j);
AlgebraElement<Integers> integer_element_from_json(const nlohmann::json& j);

}  // namespace levelflat
