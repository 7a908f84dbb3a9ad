// Check results and the JSON report format.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace levelflat {

enum class Status { pass, fail, skipped };

const char* to_string(Status s);
Status status_from_string(const std::string& s);

struct CheckResult {
  std::string check_id;
  unsigned p = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json expected;
  nlohmann::json actual;
  Status status = Status::skipped;
  double elapsed_ms = 0;

  bool operator==(const CheckResult&) const = default;
};

/// Status is pass iff expected == actual.
CheckResult make_result(std::string check_id, unsigned p, nlohmann::json params, nlohmann::json expected,
                        nlohmann::json actual);
CheckResult make_skipped(std::string check_id, unsigned p, nlohmann::json params, std::string reason);

nlohmann::json to_json(const CheckResult& r);
CheckResult check_result_from_json(const nlohmann::json& j);

struct Summary {
  unsigned p = 0;
  std::size_t total = 0, passed = 0, failed = 0, skipped = 0;
  double wall_time = 0;  // seconds
};

Summary summarize(unsigned p, const std::vector<CheckResult>& results, double wall_time);

nlohmann::json build_report(const nlohmann::json& config, const std::vector<CheckResult>& results,
                            const Summary& summary);
std::vector<CheckResult> parse_report_results(const nlohmann::json& report);

/// Throws std::runtime_error if the file cannot be written.
void write_report(const std::string& path, const nlohmann::json& report);

void print_table(std::ostream& os, const std::vector<CheckResult>& results, const Summary& summary);

}  // namespace levelflat
