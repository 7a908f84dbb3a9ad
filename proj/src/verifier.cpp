#include "levelflat/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "levelflat/km_compare.hpp"
#include "levelflat/symmetry.hpp"

namespace levelflat {

using nlohmann::json;

const char* to_string(Suite s) {
  switch (s) {
    case Suite::all: return "all";
    case Suite::flatness: return "flatness";
    case Suite::dims: return "dims";
    case Suite::intersections: return "intersections";
    case Suite::symmetry: return "symmetry";
    case Suite::division: return "division";
    case Suite::kmd: return "kmd";
  }
  return "?";
}

Suite suite_from_string(const std::string& s) {
  for (auto v : {Suite::all, Suite::flatness, Suite::dims, Suite::intersections, Suite::symmetry,
                 Suite::division, Suite::kmd}) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown suite '" + s + "'");
}

SubsetPolicy RunConfig::effective_policy() const {
  if (subset_policy) return *subset_policy;
  return p <= 3 ? SubsetPolicy::all : SubsetPolicy::sample;
}

void RunConfig::validate() const {
  if (!is_prime(p) || p > 13) throw std::invalid_argument("--p must be a prime between 2 and 13");
  if (samples == 0) throw std::invalid_argument("--samples must be at least 1");
  for (auto ell : aux_primes) {
    if (!is_prime(ell)) throw std::invalid_argument("aux prime " + std::to_string(ell) + " is not prime");
    if (ell == p) throw std::invalid_argument("aux primes must differ from p");
  }
}

json RunConfig::to_json() const {
  return {{"p", p},
          {"suite", levelflat::to_string(suite)},
          {"subset_policy", effective_policy() == SubsetPolicy::all ? "all" : "sample"},
          {"samples", samples},
          {"seed", seed},
          {"aux_primes", aux_primes},
          {"long_tests", long_tests}};
}

int exit_code(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.status == Status::fail; }) ? 1
                                                                                                              : 0;
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEVELFLAT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<unsigned> random_permutation(unsigned n, std::mt19937_64& rng) {
  std::vector<unsigned> v(n);
  std::iota(v.begin(), v.end(), 0u);
  for (unsigned i = n; i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return v;
}

std::vector<IndexSet> choose_subsets(unsigned n, unsigned min_size, unsigned max_size, SubsetPolicy policy,
                                     unsigned samples, std::mt19937_64& rng) {
  if (n > 20) throw std::invalid_argument("choose_subsets: n too large");
  std::vector<IndexSet> out;
  for (unsigned k = min_size; k <= std::min(max_size, n); ++k) {
    const auto count = binom(n, k);
    if (policy == SubsetPolicy::all || count <= std::int64_t{samples}) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) != k) continue;
        IndexSet J;
        for (unsigned i = 0; i < n; ++i) {
          if (mask >> i & 1) J.push_back(i);
        }
        out.push_back(std::move(J));
      }
      continue;
    }
    std::set<IndexSet> seen;
    while (seen.size() < samples) {
      auto perm = random_permutation(n, rng);
      IndexSet J(perm.begin(), perm.begin() + k);
      std::sort(J.begin(), J.end());
      if (seen.insert(J).second) out.push_back(std::move(J));
    }
  }
  return out;
}

FlatnessCertificate flatness_certificate(unsigned p, std::vector<std::uint32_t> aux_primes,
                                         const LevelIdeals* ideals) {
  if (!is_prime(p) || p > 7) throw std::invalid_argument("flatness certificate needs a prime p <= 7");
  FlatnessCertificate cert;
  cert.p = p;
  cert.expected = expected_full_dim(p);
  std::unique_ptr<LevelIdeals> own;
  if (!ideals) {
    own = std::make_unique<LevelIdeals>(p);
    ideals = own.get();
  }
  cert.r_p = ideals->span_I().dim();
  const auto fam = GeneratorFamily<Integers>::make(p, Integers{});
  const auto m = ideal_generator_matrix(fam.all());
  if (p <= 5) {
    cert.r_Q = rank_exact(m);
  } else {
    cert.exact = false;
    cert.aux_primes = aux_primes.empty() ? default_aux_primes(p) : std::move(aux_primes);
    const auto cons = rank_multimodular(m, cert.aux_primes);
    cert.r_Q = cons.rank;
    cert.unanimous = cons.unanimous;
    cert.per_prime = cons.per_prime;
  }
  return cert;
}

CheckResult flatness_check(const FlatnessCertificate& cert) {
  json params = {{"method", cert.exact ? "exact" : "probabilistic"}};
  if (!cert.exact) {
    params["aux_primes"] = cert.aux_primes;
    params["per_prime"] = cert.per_prime;
    params["unanimous"] = cert.unanimous;
  }
  return make_result("flatness.certificate", cert.p, params,
                     {{"r_p", cert.expected}, {"r_Q", cert.expected}, {"flat", true}},
                     {{"r_p", cert.r_p}, {"r_Q", cert.r_Q}, {"flat", cert.certified()}});
}

namespace {

using Task = std::function<std::vector<CheckResult>()>;

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Wraps a single-result computation with timing and error capture.
Task single(std::string id, unsigned p, json params, std::function<CheckResult()> fn) {
  return [id = std::move(id), p, params = std::move(params), fn = std::move(fn)]() {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = make_result(id, p, params, "no error", std::string("error: ") + e.what());
    }
    r.elapsed_ms = ms_since(t0);
    return std::vector<CheckResult>{std::move(r)};
  };
}

Task skipped(std::string id, unsigned p, std::string reason) {
  return [=]() { return std::vector<CheckResult>{make_skipped(id, p, json::object(), reason)}; };
}

json index_json(const IndexSet& J) { return json(J); }

AlgebraElement<PrimeField> random_element(unsigned p, std::mt19937_64& rng) {
  AlgebraElement<PrimeField> f(p, PrimeField(p));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<std::uint32_t>(rng() % p);
  return f;
}

struct Context {
  const RunConfig& config;
  unsigned p;
  std::shared_ptr<const LevelIdeals> ideals;  // null when p > 7
  std::mt19937_64 rng;
};

void add_symmetry(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (!ctx.ideals) {
    tasks.push_back(skipped("symmetry", p, "symmetry suite runs for p <= 7"));
    return;
  }
  auto tables = std::make_shared<const ActionTables>(p);
  const bool exhaustive = ctx.config.effective_policy() == SubsetPolicy::all;
  const std::size_t order = tables->group.size();
  const unsigned sample_count = std::max(ctx.config.samples, 20u);

  std::vector<std::size_t> elems;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (exhaustive) {
    elems.resize(order);
    std::iota(elems.begin(), elems.end(), std::size_t{0});
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) pairs.emplace_back(a, b);
    }
  } else {
    for (unsigned i = 0; i < sample_count; ++i) {
      elems.push_back(ctx.rng() % order);
      pairs.emplace_back(ctx.rng() % order, ctx.rng() % order);
    }
  }
  const json params = {{"policy", exhaustive ? "all" : "sample"}, {"elements", elems.size()}, {"pairs", pairs.size()}};

  tasks.push_back(single("symmetry.left_action", p, params, [=] {
    bool ok = true;
    for (auto [a, b] : pairs) {
      const auto gh = left_action_permutation(tables->group[a] * tables->group[b]);
      ok = ok && gh == tables->left[b].then(tables->left[a]);
    }
    return make_result("symmetry.left_action", p, params, true, ok);
  }));
  tasks.push_back(single("symmetry.right_action", p, params, [=] {
    bool ok = true;
    for (auto [a, b] : pairs) {
      const auto gh = right_action_permutation(tables->group[a] * tables->group[b]);
      ok = ok && gh == tables->right[a].then(tables->right[b]);
    }
    return make_result("symmetry.right_action", p, params, true, ok);
  }));
  tasks.push_back(single("symmetry.commute", p, params, [=] {
    bool ok = true;
    for (auto [a, b] : pairs) {
      ok = ok && tables->left[a].then(tables->right[b]) == tables->right[b].then(tables->left[a]);
    }
    return make_result("symmetry.commute", p, params, true, ok);
  }));

  std::vector<std::pair<AlgebraElement<PrimeField>, AlgebraElement<PrimeField>>> operands;
  const unsigned ring_samples = exhaustive ? 4u : 2u;
  for (unsigned i = 0; i < ring_samples; ++i) operands.emplace_back(random_element(p, ctx.rng), random_element(p, ctx.rng));
  std::vector<std::size_t> ring_elems = elems;
  if (ring_elems.size() > 24) ring_elems.resize(24);
  tasks.push_back(single("symmetry.ring_automorphism", p, params, [=] {
    bool ok = true;
    for (const auto& [f, g] : operands) {
      const auto fg = f * g;
      for (auto e : ring_elems) {
        for (const auto* perm : {&tables->left[e], &tables->right[e]}) {
          ok = ok && perm->apply(fg) == perm->apply(f) * perm->apply(g);
        }
      }
      ok = ok && tables->transpose.apply(fg) == tables->transpose.apply(f) * tables->transpose.apply(g);
    }
    return make_result("symmetry.ring_automorphism", p, params, true, ok);
  }));
  tasks.push_back(single("symmetry.iota_compat", p, params, [=] {
    bool ok = true;
    for (auto e : elems) {
      const auto rhs = tables->transpose.then(right_action_permutation(tables->group[e].transposed()));
      ok = ok && tables->left[e].then(tables->transpose) == rhs;
    }
    return make_result("symmetry.iota_compat", p, params, true, ok);
  }));

  auto ideals = ctx.ideals;
  tasks.push_back(single("symmetry.stabilizes_cA", p, params, [=] {
    bool ok = true;
    for (unsigned i = 0; i <= p; ++i) {
      const auto& span = ideals->principal(Side::column, i);
      for (auto e : elems) ok = ok && tables->right[e].apply(span) == span;
    }
    return make_result("symmetry.stabilizes_cA", p, params, true, ok);
  }));
  tasks.push_back(single("symmetry.stabilizes_rA", p, params, [=] {
    bool ok = true;
    for (unsigned i = 0; i <= p; ++i) {
      const auto& span = ideals->principal(Side::row, i);
      for (auto e : elems) ok = ok && tables->left[e].apply(span) == span;
    }
    return make_result("symmetry.stabilizes_rA", p, params, true, ok);
  }));

  tasks.push_back(single("symmetry.unipotent", p, json::object(), [=] {
    const auto& fam = ideals->family();
    const GL2Element lower(mat2(1, 0, 1, 1, p), p), upper(mat2(1, 1, 0, 1, p), p);
    bool cycles_c = true, cycles_r = true;
    for (unsigned i = 0; i < p; ++i) {
      cycles_c = cycles_c && act_left(lower, fam.columns[i]) == fam.columns[(i + 1) % p];
      cycles_r = cycles_r && act_right(fam.rows[i], upper) == fam.rows[(i + 1) % p];
    }
    auto fixes = [](const MonomialPermutation& perm, const SubspaceBasis& span) {
      for (std::size_t r = 0; r < span.dim(); ++r) {
        const auto row = span.basis().row(r);
        const auto img = perm.apply(row);
        if (!std::equal(img.begin(), img.end(), row.begin())) return false;
      }
      return true;
    };
    const bool fixes_c = fixes(left_action_permutation(lower), ideals->principal(Side::column, p));
    const bool fixes_r = fixes(right_action_permutation(upper), ideals->principal(Side::row, p));
    return make_result("symmetry.unipotent", p, json::object(),
                       {{"cycles_c", true}, {"fixes_cA", true}, {"cycles_r", true}, {"fixes_rA", true}},
                       {{"cycles_c", cycles_c}, {"fixes_cA", fixes_c}, {"cycles_r", cycles_r}, {"fixes_rA", fixes_r}});
  }));

  tasks.push_back(single("symmetry.label_action", p, params, [=] {
    const auto& fam = ideals->family();
    bool ok = true;
    for (auto e : elems) {
      const auto& g = tables->group[e];
      for (unsigned i = 0; i <= p; ++i) {
        const auto [a, b] = p1_point(i, p);
        const auto [x, y] = g.apply(a, b);
        ok = ok && act_left(g, fam.columns[i]) == fam.columns[p1_label(x, y, p)];
      }
    }
    return make_result("symmetry.label_action", p, params, true, ok);
  }));

  tasks.push_back(single("symmetry.triply_transitive", p, json::object(), [=] {
    std::set<std::array<unsigned, 3>> orbit;
    for (const auto& g : tables->group) {
      std::array<unsigned, 3> t{};
      const unsigned base[3] = {0, 1, p};
      for (int k = 0; k < 3; ++k) {
        const auto [a, b] = p1_point(base[k], p);
        const auto [x, y] = g.apply(a, b);
        t[k] = p1_label(x, y, p);
      }
      orbit.insert(t);
    }
    const std::int64_t triples = std::int64_t{p + 1} * p * (p - 1);
    return make_result("symmetry.triply_transitive", p, json::object(), triples, std::int64_t(orbit.size()));
  }));
}

void add_dims(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (!ctx.ideals) {
    tasks.push_back(skipped("dims", p, "dimension suite runs for p <= 7"));
    return;
  }
  auto ideals = ctx.ideals;
  tasks.push_back(single("dims.I", p, json::object(), [=] {
    return make_result("dims.I", p, json::object(), expected_full_dim(p), std::int64_t(ideals->span_I().dim()));
  }));
  if (p <= 5) {
    tasks.push_back(single("dims.I_all_pairs", p, json::object(), [=] {
      const auto full = ideals->span_I();
      const auto all = ideals->span_I_all_pairs();
      return make_result("dims.I_all_pairs", p, json::object(), true, full.basis == all.basis);
    }));
  }
  const auto subsets = choose_subsets(p + 1, 0, p + 1, ctx.config.effective_policy(), ctx.config.samples, ctx.rng);
  for (const auto& J : subsets) {
    const json params = {{"J", index_json(J)}, {"k", J.size()}};
    tasks.push_back(single("dims.single", p, params, [=] {
      const auto e = expected_single_family_dim(p, J.size());
      return make_result("dims.single", p, params, {{"C(J)", e}, {"R(J)", e}},
                         {{"C(J)", ideals->span_C(J).dim()}, {"R(J)", ideals->span_R(J).dim()}});
    }));
    tasks.push_back(single("dims.mixed", p, params, [=] {
      const auto e = expected_mixed_dim(p, J.size());
      return make_result("dims.mixed", p, params, {{"C+R(J)", e}, {"C(J)+R", e}},
                         {{"C+R(J)", ideals->C_plus_RJ(J).dim()}, {"C(J)+R", ideals->CJ_plus_R(J).dim()}});
    }));
    if (J.size() == p) {
      tasks.push_back(single("dims.equals_I", p, params, [=] {
        const auto I = ideals->span_I().basis;
        const bool a = ideals->C_plus_RJ(J).basis == I, b = ideals->CJ_plus_R(J).basis == I;
        return make_result("dims.equals_I", p, params, {{"C+R(J)", true}, {"C(J)+R", true}},
                           {{"C+R(J)", a}, {"C(J)+R", b}});
      }));
    }
  }
}

void add_filtration(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (!ctx.ideals) {
    tasks.push_back(skipped("filtration", p, "filtration suite runs for p <= 7"));
    return;
  }
  auto ideals = ctx.ideals;
  std::vector<std::int64_t> expected;
  for (unsigned i = 1; i <= 2 * p + 2; ++i) expected.push_back(expected_graded_dim(p, i));
  for (int n = 0; n < 10; ++n) {
    const auto sigma = random_permutation(p + 1, ctx.rng);
    const auto tau = random_permutation(p + 1, ctx.rng);
    const json params = {{"sigma", sigma}, {"tau", tau}};
    tasks.push_back(single("filtration.graded", p, params, [=] {
      const auto dims = ideals->filtration_dims(sigma, tau);
      const auto total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
      return make_result("filtration.graded", p, params, {{"graded", expected}, {"total", expected_full_dim(p)}},
                         {{"graded", dims}, {"total", total}});
    }));
  }
}

void add_intersections(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (!ctx.ideals) {
    tasks.push_back(skipped("intersections", p, "intersection suite runs for p <= 7"));
    return;
  }
  auto ideals = ctx.ideals;
  const auto policy = ctx.config.effective_policy();
  for (const auto& J : choose_subsets(p, 1, p, policy, ctx.config.samples, ctx.rng)) {
    const json params = {{"J", index_json(J)}, {"k", J.size()}};
    tasks.push_back([=] {
      const auto t0 = std::chrono::steady_clock::now();
      json col = params, row = params;
      col["power"] = 2 * p - J.size() - 1;
      row["power"] = p - J.size();
      std::vector<CheckResult> out;
      try {
        const auto rep = ideals->intersection_check(J);
        out.push_back(make_result("intersections.column", p, col, {{"contained", true}, {"dim", rep.column_expected}},
                                  {{"contained", rep.column_contained}, {"dim", rep.column_dim}}));
        out.push_back(make_result("intersections.row", p, row, {{"contained", true}, {"dim", rep.row_expected}},
                                  {{"contained", rep.row_contained}, {"dim", rep.row_dim}}));
      } catch (const std::exception& e) {
        out.push_back(make_result("intersections.column", p, col, "no error", std::string("error: ") + e.what()));
      }
      for (auto& r : out) r.elapsed_ms = ms_since(t0);
      return out;
    });
  }
  // J' in {1, ..., p - 1}: subsets of {0, ..., p - 2} shifted by one.
  for (auto J : choose_subsets(p - 1, 0, p - 1, policy, ctx.config.samples, ctx.rng)) {
    for (auto& i : J) ++i;
    for (auto side : {Side::column, Side::row}) {
      const json params = {{"J", index_json(J)}, {"side", side == Side::column ? "column" : "row"}};
      tasks.push_back(single("intersections.key_lemma", p, params, [=] {
        const auto rep = ideals->key_lemma_instance_check(J, side);
        json extra = params;
        extra["m"] = rep.m;
        if (rep.outcome == KeyLemmaOutcome::vacuous) {
          return make_skipped("intersections.key_lemma", p, extra, "hypothesis does not hold");
        }
        return make_result("intersections.key_lemma", p, extra, "holds", to_string(rep.outcome));
      }));
    }
  }
}

void add_division(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  for (unsigned d = 1; d <= 2 * p + 3; ++d) {
    const json params = {{"d", d}};
    tasks.push_back(single("division.annihilator", p, params, [=] {
      const auto rep = division_lemma_check(p, d);
      return make_result("division.annihilator", p, params, {{"equal", true}, {"dim", rep.power_dim}},
                         {{"equal", rep.equal}, {"dim", rep.annihilator_dim}});
    }));
  }
}

void add_flatness(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (p > 7) {
    tasks.push_back(skipped("flatness", p, "flatness certificate runs for p <= 7"));
    return;
  }
  auto ideals = ctx.ideals;
  auto aux = ctx.config.aux_primes;
  tasks.push_back([=] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> out;
    try {
      const auto cert = flatness_certificate(p, aux, ideals.get());
      const double ms = ms_since(t0);
      out.push_back(flatness_check(cert));
      out.push_back(make_result("flatness.dim_I", p, json::object(), cert.expected, std::int64_t(cert.r_p)));
      const std::int64_t gl2 = std::int64_t{p * p - 1} * (p * p - p);
      out.push_back(make_result("flatness.gl2_crosscheck", p, {{"method", cert.exact ? "exact" : "probabilistic"}},
                                gl2, std::int64_t{p} * p * p * p - std::int64_t(cert.r_Q)));
      for (auto& r : out) r.elapsed_ms = ms;
    } catch (const std::exception& e) {
      out.push_back(make_result("flatness.certificate", p, json::object(), "no error", std::string("error: ") + e.what()));
    }
    return out;
  });
}

void add_generic_fiber(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (p > 7) {
    tasks.push_back(skipped("generic_fiber.count", p, "brute-force count runs for p <= 7"));
    return;
  }
  tasks.push_back(single("generic_fiber.count", p, json::object(), [=] {
    return make_result("generic_fiber.count", p, json::object(), std::int64_t{p * p - 1} * (p * p - p),
                       std::int64_t(generic_fiber_count(p)));
  }));
}

void add_trace(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  tasks.push_back(single("trace.identity", p, json::object(), [=] {
    const auto rep = trace_identity_check(p);
    return make_result("trace.identity", p, json::object(), {{"X", true}, {"Y", true}, {"B_trace_zero", true}},
                       {{"X", rep.x_trace_matches}, {"Y", rep.y_trace_matches}, {"B_trace_zero", rep.b_trace_zero}});
  }));
}

std::vector<CheckResult> kmd_block(unsigned p) {
  std::vector<CheckResult> out;
  auto t0 = std::chrono::steady_clock::now();
  auto push = [&](CheckResult r) {
    r.elapsed_ms = ms_since(t0);
    out.push_back(std::move(r));
    t0 = std::chrono::steady_clock::now();
  };
  const Integers zz;
  const auto column = build_times_ideal(p);
  const auto row = dualize(column);
  const auto combined = combine(column, row);
  const auto fam = GeneratorFamily<Integers>::make(p, zz);
  const json none = json::object();

  const auto phi_su = phi_column(p, zz, 1, 0);
  push(make_result("kmd.trace_element", p, none, true, lattice_contains(column.lattice, phi_su.coeffs())));
  push(make_result("kmd.dual_trace_element", p, none, true, lattice_contains(row.lattice, iota(phi_su).coeffs())));
  bool c_in = true;
  for (const auto& c : fam.columns) c_in = c_in && lattice_contains(column.lattice, c.coeffs());
  push(make_result("kmd.column_contained", p, none, true, c_in));

  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t r = 0; r < column.lattice.rows(); ++r) {
    rows.emplace_back(column.lattice.row(r).begin(), column.lattice.row(r).end());
  }
  push(make_result("kmd.is_ideal", p, none, {{"lattice", true}, {"mod_p", true}},
                   {{"lattice", ideal_lattice_closure(p, rows) == column.lattice},
                    {"mod_p", is_ideal(column.mod_p, p)}}));

  const ActionTables tables(p);
  bool left_ok = true, right_ok = true, c_right_ok = true;
  for (std::size_t e = 0; e < tables.group.size(); ++e) {
    left_ok = left_ok && tables.left[e].apply(combined.mod_p) == combined.mod_p;
    right_ok = right_ok && tables.right[e].apply(combined.mod_p) == combined.mod_p;
    c_right_ok = c_right_ok && tables.right[e].apply(column.mod_p) == column.mod_p;
  }
  push(make_result("kmd.gl2_stable", p, none, {{"left", true}, {"right", true}},
                   {{"left", left_ok}, {"right", right_ok}}));
  push(make_result("kmd.column_right_stable", p, {{"experiment", true}}, true, c_right_ok));

  const auto cmp = compare_with_full(column);
  push(make_result("kmd.inclusion", p, none, std::int64_t(cmp.generators_total),
                   std::int64_t(cmp.generators_contained)));
  push(make_result("kmd.lattice_equal", p, {{"rank_I", cmp.rank_I}, {"rank_KMD", cmp.rank_KMD}}, true,
                   cmp.lattices_equal));
  push(make_result("kmd.dim_mod_p", p, none, expected_full_dim(p), std::int64_t(cmp.dim_KMD_mod_p)));
  push(make_result("kmd.experiment.column", p, {{"experiment", true}}, {{"mod_p", true}, {"over_Z", true}},
                   {{"mod_p", cmp.column_equal_mod_p}, {"over_Z", cmp.column_equal_over_Z}}));
  push(make_result("kmd.experiment.row", p, {{"experiment", true}}, {{"mod_p", true}, {"over_Z", true}},
                   {{"mod_p", cmp.row_equal_mod_p}, {"over_Z", cmp.row_equal_over_Z}}));

  if (p == 2) {
    const auto cn = chai_norman_check(column);
    push(make_result("kmd.chai_norman", p, {{"mod_p_fiber_dim", cn.mod_p_fiber_dim}},
                     {{"non_flat", true}, {"rational_fiber_dim", cn.gl2_order}},
                     {{"non_flat", cn.non_flat}, {"rational_fiber_dim", cn.rational_fiber_dim}}));
  }
  return out;
}

void add_kmd(Context& ctx, std::vector<Task>& tasks) {
  const unsigned p = ctx.p;
  if (p > 3) {
    tasks.push_back(skipped("kmd", p, "the x-ideal construction supports p = 2 and p = 3"));
    return;
  }
  if (p == 3 && !ctx.config.long_tests) {
    tasks.push_back(skipped("kmd", p, "p = 3 needs --long"));
    return;
  }
  tasks.push_back([p] {
    try {
      return kmd_block(p);
    } catch (const std::exception& e) {
      return std::vector<CheckResult>{
          make_result("kmd", p, json::object(), "no error", std::string("error: ") + e.what())};
    }
  });
}

std::vector<CheckResult> run_tasks(const std::vector<Task>& tasks, unsigned threads) {
  std::vector<std::vector<CheckResult>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) slots[i] = tasks[i]();
  };
  const unsigned n = std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CheckResult> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

RunOutcome run_suite(const RunConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx{config, config.p, nullptr, std::mt19937_64(config.seed)};
  const Suite s = config.suite;
  const bool needs_ideals = s != Suite::division && s != Suite::kmd;
  if (needs_ideals && config.p <= 7) ctx.ideals = std::make_shared<const LevelIdeals>(config.p);

  std::vector<Task> tasks;
  if (s == Suite::all || s == Suite::symmetry) add_symmetry(ctx, tasks);
  if (s == Suite::all || s == Suite::dims) add_dims(ctx, tasks);
  if (s == Suite::all || s == Suite::intersections) add_intersections(ctx, tasks);
  if (s == Suite::all || s == Suite::division) add_division(ctx, tasks);
  if (s == Suite::all || s == Suite::dims) add_filtration(ctx, tasks);
  if (s == Suite::all || s == Suite::flatness) add_flatness(ctx, tasks);
  if (s == Suite::all || s == Suite::flatness) add_generic_fiber(ctx, tasks);
  if (s == Suite::all || s == Suite::kmd) add_trace(ctx, tasks);
  if (s == Suite::all || s == Suite::kmd) add_kmd(ctx, tasks);

  RunOutcome out;
  out.results = run_tasks(tasks, worker_count(config.threads));
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace levelflat
