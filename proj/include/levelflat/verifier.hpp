// Runs the checks and collects CheckResults.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelflat/level_ideals.hpp"
#include "levelflat/report.hpp"

namespace levelflat {

enum class Suite { all, flatness, dims, intersections, symmetry, division, kmd };

const char* to_string(Suite s);
Suite suite_from_string(const std::string& s);

enum class SubsetPolicy { all, sample };

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct RunConfig {
  unsigned p = 3;
  Suite suite = Suite::all;
  /// Unset means exhaustive for p <= 3 and sampled above.
  std::optional<SubsetPolicy> subset_policy;
  unsigned samples = 5;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::uint32_t> aux_primes;
  bool long_tests = false;
  std::string report_path;
  /// 0 means LEVELFLAT_THREADS, else the hardware concurrency.
  unsigned threads = 0;

  SubsetPolicy effective_policy() const;
  /// Throws std::invalid_argument on a bad prime or zero samples.
  void validate() const;
  nlohmann::json to_json() const;
};

struct RunOutcome {
  std::vector<CheckResult> results;
  double wall_time = 0;
};

RunOutcome run_suite(const RunConfig& config);

/// 0 if nothing failed, else 1.
int exit_code(const std::vector<CheckResult>& results);

/// Worker count: LEVELFLAT_THREADS if set and positive, else hardware.
unsigned worker_count(unsigned requested = 0);

/// Subsets of {0, ..., n - 1} of each size in [min_size, max_size].  The
/// sample policy keeps all subsets of a size when there are at most
/// `samples` of them and otherwise draws `samples` distinct ones.
std::vector<IndexSet> choose_subsets(unsigned n, unsigned min_size, unsigned max_size, SubsetPolicy policy,
                                     unsigned samples, std::mt19937_64& rng);

/// Uniform permutation of {0, ..., n - 1} by Fisher-Yates.
std::vector<unsigned> random_permutation(unsigned n, std::mt19937_64& rng);

struct FlatnessCertificate {
  unsigned p = 0;
  std::size_t r_p = 0;
  std::size_t r_Q = 0;
  std::int64_t expected = 0;
  bool exact = true;  // false: multi-modular consensus
  bool unanimous = true;
  std::vector<std::uint32_t> aux_primes;
  std::vector<std::size_t> per_prime;

  bool certified() const { return std::int64_t(r_p) == expected && std::int64_t(r_Q) == expected; }
};

/// p <= 7.  The rational rank is exact (Bareiss) for p <= 5 and a
/// multi-modular consensus for p = 7.
FlatnessCertificate flatness_certificate(unsigned p, std::vector<std::uint32_t> aux_primes = {},
                                         const LevelIdeals* ideals = nullptr);

CheckResult flatness_check(const FlatnessCertificate& cert);

}  // namespace levelflat
