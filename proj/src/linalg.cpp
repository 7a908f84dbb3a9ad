#include "levelflat/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace levelflat {

namespace {

void require_prime(std::uint64_t q) {
  if (!is_prime(q)) {
    throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
  }
}

void require_compatible(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.modulus() != b.modulus()) {
    throw std::invalid_argument("subspaces over different fields");
  }
  if (a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument("subspaces of different ambient dimension");
  }
}

// row_dst -= factor * row_src over columns [from, end).
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t q, std::size_t from) {
  const std::uint64_t neg = q - factor;
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (src[c] != 0) {
      dst[c] = static_cast<std::uint32_t>((dst[c] + neg * src[c]) % q);
    }
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q, new_r = a % q;
  if (new_r == 0) throw std::domain_error("zero has no inverse");
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - quot * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - quot * new_r};
  }
  return reduce_mod(t, q);
}

std::uint32_t reduce_mod(std::int64_t value, std::uint32_t q) {
  std::int64_t r = value % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  return static_cast<std::uint32_t>(r);
}

// FieldMatrix

FieldMatrix::FieldMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  require_prime(q);
}

FieldMatrix FieldMatrix::from_rows(std::uint32_t q, std::size_t cols,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  FieldMatrix m(q, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged row");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FieldMatrix::append_row(std::span<const std::uint32_t> values) {
  if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void FieldMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
}

void FieldMatrix::truncate_rows(std::size_t n) {
  if (n < rows_) {
    rows_ = n;
    data_.resize(n * cols_);
  }
}

// SubspaceBasis

SubspaceBasis::SubspaceBasis(std::uint32_t q, std::size_t ambient_dim) : basis_(q, 0, ambient_dim) {}

SubspaceBasis SubspaceBasis::full(std::uint32_t q, std::size_t ambient_dim) {
  FieldMatrix id(q, ambient_dim, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) id.set(i, i, 1);
  return rref(std::move(id));
}

std::vector<std::uint32_t> SubspaceBasis::reduce(std::span<const std::uint32_t> v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("vector length mismatch");
  std::vector<std::uint32_t> w(v.begin(), v.end());
  const auto q = modulus();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::uint32_t f = w[pivots_[i]];
    if (f != 0) axpy_mod(w, basis_.row(i), f, q, pivots_[i]);
  }
  return w;
}

SubspaceBasis rref(FieldMatrix m) {
  const std::uint32_t q = m.modulus();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && m(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    m.swap_rows(sel, rank);

    auto pivot_row = m.row(rank);
    const std::uint64_t inv = inverse_mod(pivot_row[col], q);
    for (std::size_t c = col; c < cols; ++c) {
      pivot_row[c] = static_cast<std::uint32_t>(pivot_row[c] * inv % q);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::uint32_t f = m(r, col);
      if (f != 0) axpy_mod(m.row(r), m.row(rank), f, q, col);
    }
    pivots.push_back(col);
    ++rank;
  }
  m.truncate_rows(rank);
  return SubspaceBasis(std::move(m), std::move(pivots));
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_compatible(a, b);
  FieldMatrix stacked = a.basis();
  for (std::size_t r = 0; r < b.dim(); ++r) stacked.append_row(b.basis().row(r));
  return rref(std::move(stacked));
}

SubspaceBasis subspace_intersection(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_compatible(a, b);
  const std::size_t n = a.ambient_dim();
  const std::uint32_t q = a.modulus();
  // Rows [a | a] and [b | 0]; after reduction the rows with zero left half
  // carry a basis of the intersection in their right half.
  FieldMatrix block(q, 0, 2 * n);
  std::vector<std::uint32_t> buf(2 * n);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    auto row = a.basis().row(r);
    std::copy(row.begin(), row.end(), buf.begin());
    std::copy(row.begin(), row.end(), buf.begin() + n);
    block.append_row(buf);
  }
  for (std::size_t r = 0; r < b.dim(); ++r) {
    auto row = b.basis().row(r);
    std::copy(row.begin(), row.end(), buf.begin());
    std::fill(buf.begin() + n, buf.end(), 0);
    block.append_row(buf);
  }
  SubspaceBasis reduced = rref(std::move(block));
  FieldMatrix inter(q, 0, n);
  for (std::size_t r = 0; r < reduced.dim(); ++r) {
    if (reduced.pivots()[r] >= n) {
      auto row = reduced.basis().row(r);
      inter.append_row(row.subspan(n));
    }
  }
  return rref(std::move(inter));
}

bool contains(const SubspaceBasis& a, std::span<const std::uint32_t> v) {
  const auto w = a.reduce(v);
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

bool is_subspace_of(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_compatible(a, b);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    if (!contains(b, a.basis().row(r))) return false;
  }
  return true;
}

SubspaceBasis left_kernel(const FieldMatrix& m) {
  // Reduce [m | I]; rows whose left half vanishes span the left kernel.
  const std::size_t n = m.rows();
  const std::size_t k = m.cols();
  const std::uint32_t q = m.modulus();
  FieldMatrix aug(q, n, k + n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) aug.set(r, c, m(r, c));
    aug.set(r, k + r, 1);
  }
  SubspaceBasis reduced = rref(std::move(aug));
  FieldMatrix ker(q, 0, n);
  for (std::size_t r = 0; r < reduced.dim(); ++r) {
    if (reduced.pivots()[r] >= k) ker.append_row(reduced.basis().row(r).subspan(k));
  }
  return rref(std::move(ker));
}

// IntegerMatrix

IntegerMatrix IntegerMatrix::from_rows(std::size_t cols, const std::vector<std::vector<long>>& rows) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void IntegerMatrix::append_row(std::span<const mpz_class> values) {
  if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::size_t rank_mod(const IntegerMatrix& m, std::uint32_t ell) {
  FieldMatrix f(ell, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = f.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row[c] = static_cast<std::uint32_t>(mpz_fdiv_ui(m(r, c).get_mpz_t(), ell));
    }
  }
  return rref(std::move(f)).dim();
}

std::size_t rank_exact(const IntegerMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows);
  for (std::size_t r = 0; r < rows; ++r) a[r].assign(m.row(r).begin(), m.row(r).end());

  // After each step the live entries are minors of the original matrix, so
  // the division by the previous pivot is exact.
  mpz_class prev = 1;
  mpz_class t;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[rank]);
    const mpz_class& piv = a[rank][col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto& row = a[r];
      const mpz_class lead = row[col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        mpz_mul(row[c].get_mpz_t(), row[c].get_mpz_t(), piv.get_mpz_t());
        if (lead != 0 && a[rank][c] != 0) {
          mpz_mul(t.get_mpz_t(), lead.get_mpz_t(), a[rank][c].get_mpz_t());
          mpz_sub(row[c].get_mpz_t(), row[c].get_mpz_t(), t.get_mpz_t());
        }
        mpz_divexact(row[c].get_mpz_t(), row[c].get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

ConsensusRank rank_multimodular(const IntegerMatrix& m, std::span<const std::uint32_t> primes) {
  ConsensusRank out;
  for (auto ell : primes) out.per_prime.push_back(rank_mod(m, ell));
  if (!out.per_prime.empty()) {
    out.rank = *std::max_element(out.per_prime.begin(), out.per_prime.end());
    out.unanimous = std::all_of(out.per_prime.begin(), out.per_prime.end(),
                                [&](std::size_t r) { return r == out.rank; });
  }
  return out;
}

std::vector<std::uint32_t> default_aux_primes(std::uint32_t avoid) {
  std::vector<std::uint32_t> out;
  std::uint64_t c = 1ULL << 30;
  while (out.size() < 3) {
    c = next_prime(c);
    if (c != avoid) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

// Lattices

namespace {

std::size_t leading_index(const std::vector<mpz_class>& v, std::size_t from = 0) {
  for (std::size_t c = from; c < v.size(); ++c) {
    if (v[c] != 0) return c;
  }
  return v.size();
}

}  // namespace

bool LatticeEchelon::insert(std::vector<mpz_class> v) {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  mpz_class g, x, y, t;
  bool grew = false;
  std::size_t c = leading_index(v);
  while (c < cols_) {
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      if (v[c] < 0) {
        for (auto& e : v) e = -e;
      }
      rows_.emplace(c, std::move(v));
      return true;
    }
    auto& row = it->second;
    const mpz_class a = row[c];
    const mpz_class b = v[c];
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      const mpz_class quot = b / a;
      for (std::size_t k = c; k < cols_; ++k) {
        if (row[k] != 0) v[k] -= quot * row[k];
      }
    } else {
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      grew = true;
      const mpz_class a_g = a / g;
      const mpz_class b_g = b / g;
      for (std::size_t k = c; k < cols_; ++k) {
        const mpz_class rk = row[k];
        const mpz_class vk = v[k];
        row[k] = x * rk + y * vk;
        v[k] = a_g * vk - b_g * rk;
      }
    }
    c = leading_index(v, c + 1);
  }
  return grew;
}

bool LatticeEchelon::contains(std::vector<mpz_class> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::size_t c = leading_index(v);
  while (c < cols_) {
    auto it = rows_.find(c);
    if (it == rows_.end()) return false;
    const auto& row = it->second;
    if (!mpz_divisible_p(v[c].get_mpz_t(), row[c].get_mpz_t())) return false;
    const mpz_class quot = v[c] / row[c];
    for (std::size_t k = c; k < cols_; ++k) {
      if (row[k] != 0) v[k] -= quot * row[k];
    }
    c = leading_index(v, c + 1);
  }
  return true;
}

std::vector<std::vector<mpz_class>> LatticeEchelon::rows() const {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(rows_.size());
  for (const auto& [col, row] : rows_) out.push_back(row);
  return out;
}

IntegerMatrix LatticeEchelon::hnf() const {
  auto rs = rows();
  std::vector<std::size_t> piv;
  for (const auto& [col, row] : rows_) piv.push_back(col);
  mpz_class quot;
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const std::size_t cj = piv[j];
    for (std::size_t i = 0; i < j; ++i) {
      mpz_fdiv_q(quot.get_mpz_t(), rs[i][cj].get_mpz_t(), rs[j][cj].get_mpz_t());
      if (quot == 0) continue;
      for (std::size_t k = cj; k < cols_; ++k) {
        if (rs[j][k] != 0) rs[i][k] -= quot * rs[j][k];
      }
    }
  }
  IntegerMatrix out(0, cols_);
  for (const auto& r : rs) out.append_row(r);
  return out;
}

IntegerMatrix hnf(const IntegerMatrix& m) {
  LatticeEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    e.insert(std::vector<mpz_class>(m.row(r).begin(), m.row(r).end()));
  }
  return e.hnf();
}

bool lattice_contains(const IntegerMatrix& hnf_basis, std::span<const mpz_class> v) {
  LatticeEchelon e(hnf_basis.cols());
  for (std::size_t r = 0; r < hnf_basis.rows(); ++r) {
    e.insert(std::vector<mpz_class>(hnf_basis.row(r).begin(), hnf_basis.row(r).end()));
  }
  return e.contains(std::vector<mpz_class>(v.begin(), v.end()));
}

}  // namespace levelflat
