#include "levelflat/group_algebra.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace levelflat {

Mat2 mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, unsigned p) {
  return Mat2{{reduce_mod(a, p), reduce_mod(b, p), reduce_mod(c, p), reduce_mod(d, p)}};
}

Mat2 multiply(const Mat2& x, const Mat2& y, unsigned p) {
  auto dot = [&](int r, int c) {
    return std::int64_t{x(r, 0)} * y(0, c) + std::int64_t{x(r, 1)} * y(1, c);
  };
  return mat2(dot(0, 0), dot(0, 1), dot(1, 0), dot(1, 1), p);
}

Mat2 transpose(const Mat2& x) { return Mat2{{x.e[0], x.e[2], x.e[1], x.e[3]}}; }

std::uint32_t determinant(const Mat2& x, unsigned p) {
  return reduce_mod(std::int64_t{x.e[0]} * x.e[3] - std::int64_t{x.e[1]} * x.e[2], p);
}

std::size_t linear_index(const ExponentMatrix& e, unsigned p) {
  const std::size_t q = p;
  return e.e[0] + q * (e.e[1] + q * (e.e[2] + q * e.e[3]));
}

ExponentMatrix exponent_of(std::size_t index, unsigned p) {
  ExponentMatrix e;
  for (auto& x : e.e) {
    x = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return e;
}

std::size_t add_indices(std::size_t a, std::size_t b, unsigned p) {
  std::size_t out = 0;
  std::size_t place = 1;
  for (int axis = 0; axis < 4; ++axis) {
    out += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return out;
}

void require_supported_prime(unsigned p) {
  if (p < 2 || p > 13 || !is_prime(p)) {
    throw std::invalid_argument("p must be a prime in [2, 13], got " + std::to_string(p));
  }
}

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("binom: negative k");
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // out holds binom(n, i - 1); the next step divides exactly.
    out = out * (n + 1 - i) / i;
  }
  return out;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("PrimeField: " + std::to_string(q) + " is not prime");
}

SubspaceBasis shifted_monomial_span(std::array<ShiftedVar, 2> vars, unsigned min_degree,
                                    const AlgebraElement<PrimeField>& cofactor) {
  const unsigned p = cofactor.p();
  if (cofactor.ring().modulus() != p) {
    throw std::invalid_argument("shifted monomial spans need coefficients in F_p");
  }
  if (vars[0] == vars[1]) throw std::invalid_argument("two distinct variables required");
  if (min_degree > 2 * p - 1) throw std::invalid_argument("min_degree out of range [0, 2p-1]");
  if (cofactor.basis() != Basis::group) throw std::invalid_argument("cofactor must be in the group basis");

  const PrimeField& field = cofactor.ring();
  FieldMatrix rows(p, 0, cofactor.size());
  for (unsigned a = 0; a < p; ++a) {
    for (unsigned b = 0; b < p; ++b) {
      if (a + b < min_degree) continue;
      std::array<std::uint32_t, 4> exps{};
      exps[static_cast<int>(vars[0])] = a;
      exps[static_cast<int>(vars[1])] = b;
      const auto shifted = AlgebraElement<PrimeField>::monomial(p, field, Mat2{exps}, Basis::shifted);
      rows.append_row(as_row(mul(cofactor, from_shifted(shifted))));
    }
  }
  return rref(std::move(rows));
}

namespace {

struct RowHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

SubspaceBasis ideal_span(std::span<const AlgebraElement<PrimeField>> gens) {
  if (gens.empty()) throw std::invalid_argument("ideal_span needs at least one generator to fix the algebra");
  const unsigned p = gens.front().p();
  const auto q = gens.front().ring().modulus();
  const std::size_t n = gens.front().size();
  std::unordered_set<std::vector<std::uint32_t>, RowHash> seen;
  FieldMatrix rows(q, 0, n);
  std::vector<std::uint32_t> buf(n);
  for (const auto& g : gens) {
    if (g.basis() != Basis::group || g.p() != p || g.ring().modulus() != q) {
      throw std::invalid_argument("ideal generators must share p, field and group basis");
    }
    if (g.is_zero()) continue;
    for (std::size_t m = 0; m < n; ++m) {
      std::fill(buf.begin(), buf.end(), 0);
      for (std::size_t i = 0; i < n; ++i) buf[add_indices(i, m, p)] = g[i];
      if (seen.insert(buf).second) rows.append_row(buf);
    }
  }
  return rref(std::move(rows));
}

IntegerMatrix ideal_generator_matrix(std::span<const AlgebraElement<Integers>> gens) {
  if (gens.empty()) throw std::invalid_argument("ideal_generator_matrix needs at least one generator");
  const unsigned p = gens.front().p();
  const std::size_t n = gens.front().size();
  std::set<std::vector<mpz_class>> seen;
  IntegerMatrix out(0, n);
  std::vector<mpz_class> buf(n);
  for (const auto& g : gens) {
    if (g.basis() != Basis::group || g.p() != p) {
      throw std::invalid_argument("ideal generators must share p and the group basis");
    }
    if (g.is_zero()) continue;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t i = 0; i < n; ++i) buf[add_indices(i, m, p)] = g[i];
      if (seen.insert(buf).second) out.append_row(buf);
    }
  }
  return out;
}

AlgebraElement<PrimeField> reduce_mod(const AlgebraElement<Integers>& f, std::uint32_t q) {
  const PrimeField field(q);
  AlgebraElement<PrimeField> out(f.p(), field, f.basis());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(f[i].get_mpz_t(), q));
  }
  return out;
}

std::vector<std::uint32_t> as_row(const AlgebraElement<PrimeField>& f) {
  return {f.coeffs().begin(), f.coeffs().end()};
}

AlgebraElement<PrimeField> from_row(unsigned p, const PrimeField& field, std::span<const std::uint32_t> row,
                                    Basis basis) {
  AlgebraElement<PrimeField> out(p, field, basis);
  if (row.size() != out.size()) throw std::invalid_argument("row length is not p^4");
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = field.from_int(row[i]);
  return out;
}

AlgebraElement<Integers> from_integer_row(unsigned p, std::span<const mpz_class> row, Basis basis) {
  AlgebraElement<Integers> out(p, Integers{}, basis);
  if (row.size() != out.size()) throw std::invalid_argument("row length is not p^4");
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i];
  return out;
}

// JSON

namespace {

nlohmann::json header(unsigned p, const std::string& ring, Basis basis) {
  return {{"p", p}, {"ring", ring}, {"basis", to_string(basis)}};
}

nlohmann::json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(static_cast<long>(j.get<std::int64_t>()));
}

Basis basis_from_json(const nlohmann::json& j) {
  const auto b = j.at("basis").get<std::string>();
  if (b == "group") return Basis::group;
  if (b == "shifted") return Basis::shifted;
  throw std::invalid_argument("unknown basis '" + b + "'");
}

}  // namespace

nlohmann::json to_json(const AlgebraElement<PrimeField>& f) {
  auto j = header(f.p(), f.ring().name(), f.basis());
  j["coeffs"] = std::vector<std::uint32_t>(f.coeffs().begin(), f.coeffs().end());
  return j;
}

nlohmann::json to_json(const AlgebraElement<Integers>& f) {
  auto j = header(f.p(), f.ring().name(), f.basis());
  auto coeffs = nlohmann::json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(integer_to_json(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

nlohmann::json to_json(const AlgebraElement<Rationals>& f) {
  auto j = header(f.p(), f.ring().name(), f.basis());
  auto coeffs = nlohmann::json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(c.get_str());
  j["coeffs"] = std::move(coeffs);
  return j;
}

AlgebraElement<PrimeField> prime_field_element_from_json(const nlohmann::json& j) {
  const auto ring = j.at("ring").get<std::string>();
  if (ring.size() < 2 || ring[0] != 'F') throw std::invalid_argument("not a prime-field element: " + ring);
  const PrimeField field(static_cast<std::uint32_t>(std::stoul(ring.substr(1))));
  AlgebraElement<PrimeField> out(j.at("p").get<unsigned>(), field, basis_from_json(j));
  const auto& coeffs = j.at("coeffs");
  if (coeffs.size() != out.size()) throw std::invalid_argument("coefficient count is not p^4");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.from_int(coeffs[i].get<std::int64_t>());
  return out;
}

AlgebraElement<Integers> integer_element_from_json(const nlohmann::json& j) {
  if (j.at("ring").get<std::string>() != "Z") throw std::invalid_argument("not an integer element");
  AlgebraElement<Integers> out(j.at("p").get<unsigned>(), Integers{}, basis_from_json(j));
  const auto& coeffs = j.at("coeffs");
  if (coeffs.size() != out.size()) throw std::invalid_argument("coefficient count is not p^4");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = integer_from_json(coeffs[i]);
  return out;
}

}  // namespace levelflat
