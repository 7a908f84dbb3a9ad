#include "levelflat/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace levelflat {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skipped") return Status::skipped;
  throw std::invalid_argument("unknown status '" + s + "'");
}

CheckResult make_result(std::string check_id, unsigned p, nlohmann::json params, nlohmann::json expected,
                        nlohmann::json actual) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.p = p;
  r.params = std::move(params);
  r.status = expected == actual ? Status::pass : Status::fail;
  r.expected = std::move(expected);
  r.actual = std::move(actual);
  return r;
}

CheckResult make_skipped(std::string check_id, unsigned p, nlohmann::json params, std::string reason) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.p = p;
  r.params = std::move(params);
  r.params["reason"] = std::move(reason);
  r.status = Status::skipped;
  return r;
}

nlohmann::json to_json(const CheckResult& r) {
  return {{"check_id", r.check_id}, {"p", r.p},           {"params", r.params},
          {"expected", r.expected}, {"actual", r.actual}, {"status", to_string(r.status)},
          {"elapsed_ms", r.elapsed_ms}};
}

CheckResult check_result_from_json(const nlohmann::json& j) {
  CheckResult r;
  r.check_id = j.at("check_id").get<std::string>();
  r.p = j.at("p").get<unsigned>();
  r.params = j.at("params");
  r.expected = j.at("expected");
  r.actual = j.at("actual");
  r.status = status_from_string(j.at("status").get<std::string>());
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

Summary summarize(unsigned p, const std::vector<CheckResult>& results, double wall_time) {
  Summary s;
  s.p = p;
  s.total = results.size();
  for (const auto& r : results) {
    switch (r.status) {
      case Status::pass: ++s.passed; break;
      case Status::fail: ++s.failed; break;
      case Status::skipped: ++s.skipped; break;
    }
  }
  s.wall_time = wall_time;
  return s;
}

nlohmann::json build_report(const nlohmann::json& config, const std::vector<CheckResult>& results,
                            const Summary& summary) {
  nlohmann::json out;
  out["version"] = "1";
  out["config"] = config;
  out["results"] = nlohmann::json::array();
  for (const auto& r : results) out["results"].push_back(to_json(r));
  out["summary"] = {{"p", summary.p},           {"total", summary.total},
                    {"passed", summary.passed}, {"failed", summary.failed},
                    {"skipped", summary.skipped}, {"wall_time", summary.wall_time}};
  return out;
}

std::vector<CheckResult> parse_report_results(const nlohmann::json& report) {
  if (report.value("version", "") != "1") throw std::invalid_argument("unsupported report version");
  std::vector<CheckResult> out;
  for (const auto& j : report.at("results")) out.push_back(check_result_from_json(j));
  return out;
}

void write_report(const std::string& path, const nlohmann::json& report) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open report file " + path);
  f << report.dump(2) << '\n';
  if (!f) throw std::runtime_error("failed writing report file " + path);
}

namespace {

std::string clip(std::string s, std::size_t width) {
  if (s.size() <= width) return s;
  return s.substr(0, width - 3) + "...";
}

std::string compact(const nlohmann::json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

void print_table(std::ostream& os, const std::vector<CheckResult>& results, const Summary& summary) {
  std::size_t id_width = 8;
  for (const auto& r : results) id_width = std::max(id_width, r.check_id.size());
  os << std::left << std::setw(int(id_width)) << "check" << "  " << std::setw(28) << "params" << "  "
     << std::setw(20) << "expected" << "  " << std::setw(20) << "actual" << "  " << std::setw(7) << "status"
     << "  " << "ms" << '\n';
  for (const auto& r : results) {
    os << std::setw(int(id_width)) << r.check_id << "  " << std::setw(28) << clip(compact(r.params), 28) << "  "
       << std::setw(20) << clip(compact(r.expected), 20) << "  " << std::setw(20) << clip(compact(r.actual), 20)
       << "  " << std::setw(7) << to_string(r.status) << "  " << std::fixed << std::setprecision(1)
       << r.elapsed_ms << '\n';
  }
  os << "p=" << summary.p << " total=" << summary.total << " passed=" << summary.passed
     << " failed=" << summary.failed << " skipped=" << summary.skipped << " wall_time=" << std::setprecision(3)
     << summary.wall_time << "s\n";
  os.unsetf(std::ios::fixed);
}

}  // namespace levelflat
