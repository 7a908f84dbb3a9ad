#include "levelflat/level_ideals.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace levelflat {

std::int64_t expected_single_family_dim(unsigned p, std::int64_t k) {
  return k * p * p - binom(k + 1, 3);
}

std::int64_t expected_mixed_dim(unsigned p, std::int64_t k) {
  return expected_full_dim(p) - binom(std::int64_t{p} - k + 2, 3);
}

std::int64_t expected_full_dim(unsigned p) {
  const std::int64_t q = p;
  return q * q * q + q * q - q;
}

std::int64_t expected_graded_dim(unsigned p, unsigned i) {
  if (i == 0 || i > 2 * p + 2) throw std::invalid_argument("graded index out of range");
  if (i <= p + 1) return std::int64_t{p} * p - binom(i, 2);
  if (i == p + 2) return binom(p, 2);
  return binom(2 * std::int64_t{p} + 3 - i, 2);
}

bool is_ideal(const SubspaceBasis& s, unsigned p) {
  const std::size_t n = s.ambient_dim();
  std::vector<std::uint32_t> shifted(n);
  std::size_t step = 1;
  for (int var = 0; var < 4; ++var, step *= p) {
    for (std::size_t r = 0; r < s.dim(); ++r) {
      const auto row = s.basis().row(r);
      for (std::size_t i = 0; i < n; ++i) shifted[add_indices(i, step, p)] = row[i];
      if (!contains(s, shifted)) return false;
    }
  }
  return true;
}

const char* to_string(KeyLemmaOutcome o) {
  switch (o) {
    case KeyLemmaOutcome::holds: return "holds";
    case KeyLemmaOutcome::fails: return "fails";
    case KeyLemmaOutcome::vacuous: return "vacuous";
  }
  return "?";
}

std::string format_index_set(const IndexSet& J) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
  os << '}';
  return os.str();
}

namespace {

void require_index_set(const IndexSet& J, unsigned max_index) {
  std::vector<bool> seen(max_index + 1, false);
  for (auto i : J) {
    if (i > max_index) throw std::invalid_argument("index " + std::to_string(i) + " out of range");
    if (seen[i]) throw std::invalid_argument("repeated index in J");
    seen[i] = true;
  }
}

IndexSet full_range(unsigned p) {
  IndexSet out(p + 1);
  for (unsigned i = 0; i <= p; ++i) out[i] = i;
  return out;
}

}  // namespace

LevelIdeals::LevelIdeals(unsigned p)
    : p_(p), field_(p), family_(GeneratorFamily<PrimeField>::make(p, PrimeField(p))) {
  for (unsigned i = 0; i <= p; ++i) {
    column_spans_.push_back(ideal_span(std::span(&family_.columns[i], 1)));
    row_spans_.push_back(ideal_span(std::span(&family_.rows[i], 1)));
  }
}

const SubspaceBasis& LevelIdeals::principal(Side side, unsigned i) const {
  if (i > p_) throw std::invalid_argument("generator index out of range");
  return side == Side::column ? column_spans_[i] : row_spans_[i];
}

SubspaceBasis LevelIdeals::sum_of(Side side, const IndexSet& J, SubspaceBasis start) const {
  require_index_set(J, p_);
  FieldMatrix rows = start.basis();
  for (auto i : J) {
    const auto& b = principal(side, i).basis();
    for (std::size_t r = 0; r < b.rows(); ++r) rows.append_row(b.row(r));
  }
  return rref(std::move(rows));
}

IdealSubspace LevelIdeals::span_C(const IndexSet& J) const {
  return {sum_of(Side::column, J, SubspaceBasis(p_, ambient_dim())), "C" + format_index_set(J)};
}

IdealSubspace LevelIdeals::span_R(const IndexSet& J) const {
  return {sum_of(Side::row, J, SubspaceBasis(p_, ambient_dim())), "R" + format_index_set(J)};
}

IdealSubspace LevelIdeals::C_plus_RJ(const IndexSet& J) const {
  auto C = sum_of(Side::column, full_range(p_), SubspaceBasis(p_, ambient_dim()));
  return {sum_of(Side::row, J, std::move(C)), "C+R" + format_index_set(J)};
}

IdealSubspace LevelIdeals::CJ_plus_R(const IndexSet& J) const {
  auto R = sum_of(Side::row, full_range(p_), SubspaceBasis(p_, ambient_dim()));
  return {sum_of(Side::column, J, std::move(R)), "C" + format_index_set(J) + "+R"};
}

IdealSubspace LevelIdeals::span_I() const {
  auto C = sum_of(Side::column, full_range(p_), SubspaceBasis(p_, ambient_dim()));
  return {sum_of(Side::row, full_range(p_), std::move(C)), "I"};
}

IdealSubspace LevelIdeals::span_I_all_pairs() const {
  const auto gens = GeneratorFamily<PrimeField>::all_pairs(p_, field_);
  return {ideal_span(gens), "I(all pairs)"};
}

SubspaceBasis LevelIdeals::intersect_with_principal(const SubspaceBasis& sub, Side which) const {
  return subspace_intersection(sub, principal(which, p_));
}

SubspaceBasis LevelIdeals::principal_power(Side which, unsigned n) const {
  if (which == Side::column) {
    return shifted_monomial_span({ShiftedVar::s, ShiftedVar::u}, n, family_.columns[p_]);
  }
  return shifted_monomial_span({ShiftedVar::s, ShiftedVar::t}, n, family_.rows[p_]);
}

DimFormulaReport LevelIdeals::dim_formula_check(const IndexSet& J) const {
  DimFormulaReport rep;
  rep.J = J;
  rep.k = J.size();
  rep.dim_C = span_C(J).dim();
  rep.dim_R = span_R(J).dim();
  rep.dim_C_plus_RJ = C_plus_RJ(J).dim();
  rep.dim_CJ_plus_R = CJ_plus_R(J).dim();
  rep.expected_single = expected_single_family_dim(p_, rep.k);
  rep.expected_mixed = expected_mixed_dim(p_, rep.k);
  return rep;
}

IntersectionReport LevelIdeals::intersection_check(const IndexSet& J) const {
  require_index_set(J, p_ - 1);
  if (J.empty()) throw std::invalid_argument("intersection check needs 1 <= #J <= p");
  IntersectionReport rep;
  rep.J = J;
  rep.k = J.size();
  const unsigned k = static_cast<unsigned>(rep.k);

  const auto col = intersect_with_principal(span_C(J).basis, Side::column);
  rep.column_dim = col.dim();
  rep.column_contained = is_subspace_of(col, principal_power(Side::column, 2 * p_ - k - 1));
  rep.column_expected = binom(k + 1, 2);

  const auto row = intersect_with_principal(C_plus_RJ(J).basis, Side::row);
  rep.row_dim = row.dim();
  rep.row_contained = is_subspace_of(row, principal_power(Side::row, p_ - k));
  rep.row_expected = std::int64_t{p_} * p_ - binom(std::int64_t{p_} - k + 1, 2);
  return rep;
}

std::vector<std::size_t> LevelIdeals::filtration_dims(const std::vector<unsigned>& sigma,
                                                      const std::vector<unsigned>& tau) const {
  auto is_perm = [&](const std::vector<unsigned>& v) {
    if (v.size() != p_ + 1) return false;
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    return sorted == full_range(p_);
  };
  if (!is_perm(sigma) || !is_perm(tau)) throw std::invalid_argument("sigma and tau must permute {0, ..., p}");

  std::vector<std::size_t> graded;
  SubspaceBasis current(p_, ambient_dim());
  std::size_t prev = 0;
  auto step = [&](const SubspaceBasis& next) {
    current = subspace_sum(current, next);
    graded.push_back(current.dim() - prev);
    prev = current.dim();
  };
  for (auto i : sigma) step(principal(Side::column, i));
  for (auto i : tau) step(principal(Side::row, i));
  return graded;
}

KeyLemmaReport LevelIdeals::key_lemma_instance_check(const IndexSet& J, Side side) const {
  require_index_set(J, p_ - 1);
  if (std::find(J.begin(), J.end(), 0u) != J.end()) throw std::invalid_argument("J' must not contain 0");
  KeyLemmaReport rep;
  rep.J = J;
  rep.side = side;
  const unsigned k = static_cast<unsigned>(J.size());
  SubspaceBasis ideal = side == Side::column ? span_C(J).basis : C_plus_RJ(J).basis;
  rep.m = side == Side::column ? 2 * p_ - k - 1 : p_ - k;

  const auto hyp = intersect_with_principal(ideal, side);
  if (!is_subspace_of(hyp, principal_power(side, rep.m))) {
    rep.outcome = KeyLemmaOutcome::vacuous;
    return rep;
  }
  const auto enlarged = subspace_sum(ideal, principal(side, 0));
  const auto concl = intersect_with_principal(enlarged, side);
  rep.outcome = is_subspace_of(concl, principal_power(side, rep.m - 1)) ? KeyLemmaOutcome::holds
                                                                        : KeyLemmaOutcome::fails;
  return rep;
}

DivisionReport division_lemma_check(unsigned p, unsigned d) {
  require_supported_prime(p);
  if (d < 1 || d > 2 * p + 3) throw std::invalid_argument("d must satisfy 1 <= d <= 2p + 3");
  // Basis x^a y^b of B at index a + p b.  Row e of `images` holds the images
  // of x * e and y * e, restricted to monomials of degree < d.
  const std::size_t n = std::size_t{p} * p;
  FieldMatrix images(p, n, 2 * n);
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      const std::size_t e = a + std::size_t{p} * b;
      if (a + 1 < p && a + 1 + b < d) images.set(e, (a + 1) + std::size_t{p} * b, 1);
      if (b + 1 < p && a + b + 1 < d) images.set(e, n + a + std::size_t{p} * (b + 1), 1);
    }
  }
  const SubspaceBasis ann = left_kernel(images);

  FieldMatrix power_rows(p, 0, n);
  std::vector<std::uint32_t> unit(n);
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      if (a + b + 1 < d) continue;  // keep degree >= d - 1
      std::fill(unit.begin(), unit.end(), 0);
      unit[a + std::size_t{p} * b] = 1;
      power_rows.append_row(unit);
    }
  }
  const SubspaceBasis power = rref(std::move(power_rows));
  return {p, d, ann.dim(), power.dim(), ann == power};
}

}  // namespace levelflat
