// Generators and brute-force oracles shared by the unit tests.
#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "levelflat/group_algebra.hpp"
#include "levelflat/linalg.hpp"

namespace levelflat::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng()() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline FieldMatrix random_field_matrix(std::uint32_t q, std::size_t rows, std::size_t cols, int zero_percent = 0) {
  FieldMatrix m(q, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (uniform(0, 99) < zero_percent) continue;
      m.set(r, c, uniform(0, q - 1));
    }
  }
  return m;
}

/// Every F_q-linear combination of the rows, by enumeration.
inline std::set<std::vector<std::uint32_t>> brute_span(const FieldMatrix& m) {
  const std::uint32_t q = m.modulus();
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> coeffs(m.rows(), 0);
  while (true) {
    std::vector<std::uint32_t> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = (v[c] + coeffs[r] * m(r, c)) % q;
    }
    out.insert(v);
    std::size_t i = 0;
    while (i < coeffs.size() && ++coeffs[i] == q) coeffs[i++] = 0;
    if (i == coeffs.size()) break;
  }
  return out;
}

inline std::size_t log_q(std::size_t n, std::uint32_t q) {
  std::size_t d = 0;
  while (n > 1) {
    n /= q;
    ++d;
  }
  return d;
}

template <class Ring>
AlgebraElement<Ring> random_element(unsigned p, const Ring& ring, std::int64_t lo, std::int64_t hi) {
  AlgebraElement<Ring> f(p, ring);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = ring.from_int(uniform(lo, hi));
  return f;
}

inline IntegerMatrix random_integer_matrix(std::size_t rows, std::size_t cols, long lo, long hi) {
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(uniform(lo, hi));
  }
  return m;
}

}  // namespace levelflat::testing
