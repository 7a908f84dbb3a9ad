// Exact dense linear algebra over prime fields and over the integers.
//
// FieldMatrix and SubspaceBasis carry every F_q computation in the project.
// The modulus is a runtime value so that the same code serves the
// characteristic p of the algebra and the auxiliary primes used for
// multi-modular rank certificates.  IntegerMatrix, Bareiss rank and the
// Hermite normal form handle lattice questions over Z.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace levelflat {

bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Inverse of a modulo the prime q; a must be nonzero mod q.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q);

/// Reduces a signed integer into [0, q).
std::uint32_t reduce_mod(std::int64_t value, std::uint32_t q);

class FieldMatrix {
 public:
  /// Zero matrix. Throws std::invalid_argument unless q is prime.
  FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols);

  static FieldMatrix from_rows(std::uint32_t q, std::size_t cols,
                               const std::vector<std::vector<std::int64_t>>& rows);

  std::uint32_t modulus() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) {
    data_[r * cols_ + c] = reduce_mod(value, q_);
  }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  /// Appends a row whose entries are already reduced into [0, q).
  void append_row(std::span<const std::uint32_t> values);
  void swap_rows(std::size_t a, std::size_t b);
  void truncate_rows(std::size_t n);

  bool operator==(const FieldMatrix&) const = default;

 private:
  std::uint32_t q_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// A subspace of F_q^n held as its canonical reduced row-echelon basis.
/// Two SubspaceBasis values describe the same subspace iff they compare equal.
class SubspaceBasis {
 public:
  /// The zero subspace of F_q^ambient_dim.
  SubspaceBasis(std::uint32_t q, std::size_t ambient_dim);

  static SubspaceBasis full(std::uint32_t q, std::size_t ambient_dim);

  std::uint32_t modulus() const { return basis_.modulus(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const FieldMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the basis; the result is zero iff v lies in the span.
  std::vector<std::uint32_t> reduce(std::span<const std::uint32_t> v) const;

  bool operator==(const SubspaceBasis&) const = default;

 private:
  friend SubspaceBasis rref(FieldMatrix m);
  SubspaceBasis(FieldMatrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  FieldMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical RREF of the row space of m. Pivots are chosen leftmost column
/// first, lowest row index first.
SubspaceBasis rref(FieldMatrix m);

/// Throws std::invalid_argument on mismatched modulus or ambient dimension.
SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);

/// Zassenhaus intersection. Same errors as subspace_sum.
SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b);

/// Throws std::invalid_argument if v has the wrong length.
bool contains(const SubspaceBasis& a, std::span<const std::uint32_t> v);

/// a is a subspace of b.
bool is_subspace_of(const SubspaceBasis& a, const SubspaceBasis& b);

/// {x : x * m = 0}, the space of row vectors killed by m.
SubspaceBasis left_kernel(const FieldMatrix& m);

class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix from_rows(std::size_t cols, const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const mpz_class> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const mpz_class> values);

  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> data_;
};

/// Rank of m reduced modulo ell. Throws std::invalid_argument if ell is not prime.
std::size_t rank_mod(const IntegerMatrix& m, std::uint32_t ell);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_exact(const IntegerMatrix& m);

struct ConsensusRank {
  std::size_t rank = 0;
  bool unanimous = false;
  std::vector<std::size_t> per_prime;
};

/// Maximum of the ranks modulo each prime; each one is a lower bound for the
/// rational rank.
ConsensusRank rank_multimodular(const IntegerMatrix& m, std::span<const std::uint32_t> primes);

/// Three primes above 2^30, none equal to `avoid`.
std::vector<std::uint32_t> default_aux_primes(std::uint32_t avoid);

/// Integer row-echelon basis of a lattice, built by inserting vectors one at a
/// time.  Pivots are positive; hnf() finishes the canonical reduction.
class LatticeEchelon {
 public:
  explicit LatticeEchelon(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns true if the lattice grew.
  bool insert(std::vector<mpz_class> v);
  bool contains(std::vector<mpz_class> v) const;

  /// Rows in pivot order, unreduced above the pivots.
  std::vector<std::vector<mpz_class>> rows() const;

  IntegerMatrix hnf() const;

 private:
  std::size_t cols_;
  std::map<std::size_t, std::vector<mpz_class>> rows_;
};

/// Row-style Hermite normal form: zero rows dropped, pivot columns strictly
/// increasing, pivots positive, entries above each pivot in [0, pivot).
IntegerMatrix hnf(const IntegerMatrix& m);

/// Membership of v in the row lattice of a matrix already in HNF.
bool lattice_contains(const IntegerMatrix& hnf_basis, std::span<const mpz_class> v);

}  // namespace levelflat
