// The two commuting GL_2(F_p) actions on the group algebra and the
// Cartier-duality involution.
//
// Every automorphism here sends monomials to monomials, so each is stored as
// a permutation of the p^4 monomial indices.  Conventions, on exponent
// matrices E = [[i, j], [k, l]]:
//
//   act_left(g, f)   g in Aut((Z/p)^2), a left action:   E -> E * g^t
//   act_right(f, d)  d in Aut(mu_p x mu_p), a right action: E -> d^t * E
//   iota(f)          transpose:                           E -> E^t
//
// With g = [[1, 0], [1, 1]] the left action is S -> ST, T -> T, U -> UV,
// V -> V, and iota(g.f) = iota(f).g^t holds for all g and f.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "levelflat/group_algebra.hpp"
#include "levelflat/linalg.hpp"

namespace levelflat {

class GL2Element {
 public:
  /// Throws std::invalid_argument if det(m) = 0 mod p.
  GL2Element(const Mat2& m, unsigned p);

  static GL2Element identity(unsigned p) { return GL2Element(mat2(1, 0, 0, 1, p), p); }

  const Mat2& matrix() const { return m_; }
  unsigned p() const { return p_; }

  GL2Element operator*(const GL2Element& o) const;
  GL2Element inverse() const;
  GL2Element transposed() const { return GL2Element(transpose(m_), p_); }

  /// Image of the column vector (a, b).
  std::pair<std::uint32_t, std::uint32_t> apply(std::int64_t a, std::int64_t b) const;

  bool operator==(const GL2Element&) const = default;

 private:
  Mat2 m_;
  unsigned p_;
};

/// All of GL_2(F_p), (p^2 - 1)(p^2 - p) elements, in lexicographic order of
/// their entries.  p must be a prime <= 13.
std::vector<GL2Element> enumerate_gl2(unsigned p);

class MonomialPermutation {
 public:
  /// image[i] is where monomial i goes.  Throws unless bijective.
  explicit MonomialPermutation(std::vector<std::uint32_t> image);

  static MonomialPermutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::uint32_t operator()(std::size_t i) const { return image_[i]; }

  /// Apply *this first, then next.
  MonomialPermutation then(const MonomialPermutation& next) const;
  MonomialPermutation inverse() const;

  template <class Ring>
  AlgebraElement<Ring> apply(const AlgebraElement<Ring>& f) const {
    if (f.basis() != Basis::group) throw std::invalid_argument("monomial permutations act on the group basis");
    if (f.size() != size()) throw std::invalid_argument("permutation size mismatch");
    AlgebraElement<Ring> out(f.p(), f.ring());
    for (std::size_t i = 0; i < f.size(); ++i) out[image_[i]] = f[i];
    return out;
  }

  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> row) const;
  SubspaceBasis apply(const SubspaceBasis& s) const;

  bool operator==(const MonomialPermutation&) const = default;

 private:
  std::vector<std::uint32_t> image_;
};

MonomialPermutation left_action_permutation(const GL2Element& g);
MonomialPermutation right_action_permutation(const GL2Element& d);
MonomialPermutation iota_permutation(unsigned p);

template <class Ring>
AlgebraElement<Ring> act_left(const GL2Element& g, const AlgebraElement<Ring>& f) {
  return left_action_permutation(g).apply(f);
}

template <class Ring>
AlgebraElement<Ring> act_right(const AlgebraElement<Ring>& f, const GL2Element& d) {
  return right_action_permutation(d).apply(f);
}

template <class Ring>
AlgebraElement<Ring> iota(const AlgebraElement<Ring>& f) {
  return iota_permutation(f.p()).apply(f);
}

/// Permutation tables for every element of GL_2(F_p), built once.
struct ActionTables {
  explicit ActionTables(unsigned p);

  unsigned p;
  std::vector<GL2Element> group;
  std::vector<MonomialPermutation> left;
  std::vector<MonomialPermutation> right;
  MonomialPermutation transpose;
};

/// The representative of the projective class of (a, b) among
/// (1, 0), (1, 1), ..., (1, p - 1), (0, 1).  Throws on (0, 0).
std::pair<std::uint32_t, std::uint32_t> p1_representative(std::int64_t a, std::int64_t b, unsigned p);

/// Label in {0, ..., p}: (1, i) -> i and (0, 1) -> p.
unsigned p1_label(std::int64_t a, std::int64_t b, unsigned p);

/// The pair labelled i, inverse of p1_label.
std::pair<std::uint32_t, std::uint32_t> p1_point(unsigned label, unsigned p);

}  // namespace levelflat
