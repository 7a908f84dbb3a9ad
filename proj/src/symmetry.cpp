#include "levelflat/symmetry.hpp"

#include <algorithm>
#include <stdexcept>

namespace levelflat {

GL2Element::GL2Element(const Mat2& m, unsigned p) : m_(m), p_(p) {
  if (determinant(m, p) == 0) throw std::invalid_argument("matrix is not invertible mod p");
}

GL2Element GL2Element::operator*(const GL2Element& o) const {
  if (p_ != o.p_) throw std::invalid_argument("GL2 elements over different primes");
  return GL2Element(multiply(m_, o.m_, p_), p_);
}

GL2Element GL2Element::inverse() const {
  const std::int64_t inv = inverse_mod(determinant(m_, p_), p_);
  const auto& e = m_.e;
  return GL2Element(mat2(inv * e[3], -inv * e[1], -inv * e[2], inv * e[0], p_), p_);
}

std::pair<std::uint32_t, std::uint32_t> GL2Element::apply(std::int64_t a, std::int64_t b) const {
  const auto& e = m_.e;
  return {reduce_mod(e[0] * a + e[1] * b, p_), reduce_mod(e[2] * a + e[3] * b, p_)};
}

std::vector<GL2Element> enumerate_gl2(unsigned p) {
  require_supported_prime(p);
  std::vector<GL2Element> out;
  out.reserve(static_cast<std::size_t>(p * p - 1) * (p * p - p));
  for (std::size_t idx = 0; idx < std::size_t{p} * p * p * p; ++idx) {
    const auto m = exponent_of(idx, p);
    if (determinant(m, p) != 0) out.emplace_back(m, p);
  }
  std::sort(out.begin(), out.end(), [](const GL2Element& x, const GL2Element& y) { return x.matrix() < y.matrix(); });
  return out;
}

MonomialPermutation::MonomialPermutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (auto i : image_) {
    if (i >= image_.size() || hit[i]) throw std::invalid_argument("not a permutation");
    hit[i] = true;
  }
}

MonomialPermutation MonomialPermutation::identity(std::size_t n) {
  std::vector<std::uint32_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = static_cast<std::uint32_t>(i);
  return MonomialPermutation(std::move(image));
}

MonomialPermutation MonomialPermutation::then(const MonomialPermutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint32_t> image(size());
  for (std::size_t i = 0; i < size(); ++i) image[i] = next.image_[image_[i]];
  return MonomialPermutation(std::move(image));
}

MonomialPermutation MonomialPermutation::inverse() const {
  std::vector<std::uint32_t> image(size());
  for (std::size_t i = 0; i < size(); ++i) image[image_[i]] = static_cast<std::uint32_t>(i);
  return MonomialPermutation(std::move(image));
}

std::vector<std::uint32_t> MonomialPermutation::apply(std::span<const std::uint32_t> row) const {
  if (row.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint32_t> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[image_[i]] = row[i];
  return out;
}

SubspaceBasis MonomialPermutation::apply(const SubspaceBasis& s) const {
  FieldMatrix rows(s.modulus(), 0, s.ambient_dim());
  for (std::size_t r = 0; r < s.dim(); ++r) rows.append_row(apply(s.basis().row(r)));
  return rref(std::move(rows));
}

namespace {

template <class F>
MonomialPermutation exponent_map(unsigned p, F&& f) {
  const std::size_t n = std::size_t{p} * p * p * p;
  std::vector<std::uint32_t> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = static_cast<std::uint32_t>(linear_index(f(exponent_of(i, p)), p));
  }
  return MonomialPermutation(std::move(image));
}

}  // namespace

MonomialPermutation left_action_permutation(const GL2Element& g) {
  const unsigned p = g.p();
  const Mat2 gt = transpose(g.matrix());
  return exponent_map(p, [&](const Mat2& e) { return multiply(e, gt, p); });
}

MonomialPermutation right_action_permutation(const GL2Element& d) {
  const unsigned p = d.p();
  const Mat2 dt = transpose(d.matrix());
  return exponent_map(p, [&](const Mat2& e) { return multiply(dt, e, p); });
}

MonomialPermutation iota_permutation(unsigned p) {
  require_supported_prime(p);
  return exponent_map(p, [](const Mat2& e) { return transpose(e); });
}

ActionTables::ActionTables(unsigned prime)
    : p(prime), group(enumerate_gl2(prime)), transpose(iota_permutation(prime)) {
  left.reserve(group.size());
  right.reserve(group.size());
  for (const auto& g : group) {
    left.push_back(left_action_permutation(g));
    right.push_back(right_action_permutation(g));
  }
}

std::pair<std::uint32_t, std::uint32_t> p1_representative(std::int64_t a, std::int64_t b, unsigned p) {
  const std::uint32_t ra = reduce_mod(a, p), rb = reduce_mod(b, p);
  if (ra == 0 && rb == 0) throw std::invalid_argument("the zero pair has no projective class");
  if (ra == 0) return {0, 1};
  const std::uint64_t inv = inverse_mod(ra, p);
  return {1, static_cast<std::uint32_t>(rb * inv % p)};
}

unsigned p1_label(std::int64_t a, std::int64_t b, unsigned p) {
  const auto [x, y] = p1_representative(a, b, p);
  return x == 0 ? p : y;
}

std::pair<std::uint32_t, std::uint32_t> p1_point(unsigned label, unsigned p) {
  if (label > p) throw std::invalid_argument("P^1 label out of range");
  if (label == p) return {0, 1};
  return {1, label};
}

}  // namespace levelflat
