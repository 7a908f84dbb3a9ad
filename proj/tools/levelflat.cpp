// levelflat: verify the full-level ideal claims and dump ideal bases.
//
//   levelflat verify all|flatness|dims|intersections|symmetry|division|kmd --p P [options]
//   levelflat dump ideal --p P --which I|C|R|KMD --basis group|shifted --format json|csv
//
// Exit codes: 0 all checks passed, 1 a check failed or I/O failed, 2 usage error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levelflat/km_compare.hpp"
#include "levelflat/level_ideals.hpp"
#include "levelflat/verifier.hpp"

using namespace levelflat;
using nlohmann::json;

namespace {

constexpr int kUsage = 2;

std::vector<AlgebraElement<PrimeField>> field_rows(const SubspaceBasis& s, unsigned p) {
  std::vector<AlgebraElement<PrimeField>> out;
  const PrimeField field(p);
  for (std::size_t r = 0; r < s.dim(); ++r) out.push_back(from_row(p, field, s.basis().row(r)));
  return out;
}

template <class Ring>
void emit(const std::vector<AlgebraElement<Ring>>& elems, unsigned p, const std::string& which, Basis basis,
          const std::string& format, const std::string& ring_name) {
  std::vector<AlgebraElement<Ring>> shown;
  for (const auto& e : elems) shown.push_back(basis == Basis::shifted ? to_shifted(e) : e);
  if (format == "json") {
    json out = {{"p", p}, {"which", which}, {"ring", ring_name}, {"basis", to_string(basis)},
                {"dim", shown.size()}, {"elements", json::array()}};
    for (const auto& e : shown) out["elements"].push_back(to_json(e));
    std::cout << out.dump(2) << '\n';
    return;
  }
  std::cout << "row";
  for (std::size_t i = 0; i < std::size_t{p} * p * p * p; ++i) std::cout << ",c" << i;
  std::cout << '\n';
  for (std::size_t r = 0; r < shown.size(); ++r) {
    std::cout << r;
    for (const auto& c : shown[r].coeffs()) std::cout << ',' << c;
    std::cout << '\n';
  }
}

int dump_ideal(unsigned p, const std::string& which, const std::string& basis_name, const std::string& format) {
  const Basis basis = basis_name == "shifted" ? Basis::shifted : Basis::group;
  if (which == "KMD") {
    require_kmd_prime(p);
    const auto column = build_times_ideal(p);
    const auto combined = combine(column, dualize(column));
    std::vector<AlgebraElement<Integers>> elems;
    for (std::size_t r = 0; r < combined.lattice.rows(); ++r) {
      elems.push_back(from_integer_row(p, combined.lattice.row(r)));
    }
    emit(elems, p, which, basis, format, "Z");
    return 0;
  }
  if (p > 7) throw std::invalid_argument("dump ideal supports p <= 7");
  const LevelIdeals ideals(p);
  IndexSet all(p + 1);
  for (unsigned i = 0; i <= p; ++i) all[i] = i;
  const SubspaceBasis s = which == "I" ? ideals.span_I().basis
                          : which == "C" ? ideals.span_C(all).basis
                                         : ideals.span_R(all).basis;
  emit(field_rows(s, p), p, which, basis, format, "F" + std::to_string(p));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks for the full-level ideal of Hom((Z/p)^2, mu_p x mu_p)"};
  app.require_subcommand(1);

  RunConfig config;
  std::string suite_name;
  std::string policy_name;
  auto* verify = app.add_subcommand("verify", "run checks and print a report");
  verify->add_option("suite", suite_name, "which suite to run")
      ->required()
      ->check(CLI::IsMember({"all", "flatness", "dims", "intersections", "symmetry", "division", "kmd"}));
  auto* p_opt = verify->add_option("--p", config.p, "prime characteristic");
  verify->add_option("--subset-policy", policy_name, "all or sample")->check(CLI::IsMember({"all", "sample"}));
  verify->add_option("--samples", config.samples, "subsets per cardinality when sampling");
  verify->add_option("--seed", config.seed, "sampling seed");
  verify->add_option("--aux-prime", config.aux_primes, "auxiliary prime for multi-modular rank (repeatable)");
  verify->add_flag("--long", config.long_tests, "enable slow checks");
  verify->add_option("--report", config.report_path, "write the JSON report here");

  unsigned dump_p = 3;
  std::string which = "I", basis = "group", format = "json";
  auto* dump = app.add_subcommand("dump", "print a basis of an ideal");
  auto* dump_ideal_cmd = dump->add_subcommand("ideal", "the ideal I, C, R or the KMD lattice");
  dump->require_subcommand(1);
  auto* dump_p_opt = dump_ideal_cmd->add_option("--p", dump_p, "prime characteristic");
  dump_ideal_cmd->add_option("--which", which)->check(CLI::IsMember({"I", "C", "R", "KMD"}));
  dump_ideal_cmd->add_option("--basis", basis)->check(CLI::IsMember({"group", "shifted"}));
  dump_ideal_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*dump) {
    if (which == "KMD" && dump_p_opt->count() == 0) dump_p = 2;
    try {
      if (!is_prime(dump_p) || dump_p > 13) throw std::invalid_argument("--p must be a prime between 2 and 13");
      return dump_ideal(dump_p, which, basis, format);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsage;
    }
  }

  config.suite = suite_from_string(suite_name);
  if (p_opt->count() == 0) config.p = config.suite == Suite::kmd ? 2 : 3;
  if (!policy_name.empty()) config.subset_policy = policy_name == "all" ? SubsetPolicy::all : SubsetPolicy::sample;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto outcome = run_suite(config);
  const auto summary = summarize(config.p, outcome.results, outcome.wall_time);
  print_table(std::cout, outcome.results, summary);
  if (!config.report_path.empty()) {
    try {
      write_report(config.report_path, build_report(config.to_json(), outcome.results, summary));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return exit_code(outcome.results);
}
