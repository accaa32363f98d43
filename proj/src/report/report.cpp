#include "report/report.hpp"

#include <chrono>
#include <sstream>

namespace cqe {

Report::Report(std::string tool, ordered_json config) {
  header_["tool"] = kToolVersion;
  header_["command"] = std::move(tool);
  header_["config"] = std::move(config);
}

void Report::add_check(const std::string& name, bool passed, ordered_json detail,
                       double seconds) {
  ordered_json c;
  c["name"] = name;
  c["status"] = passed ? "PASS" : "FAIL";
  c["detail"] = std::move(detail);
  checks_.push_back(std::move(c));
  if (!passed) ++failed_;
  if (seconds >= 0) timing_[name] = seconds;
}

void Report::add_section(const std::string& name, ordered_json body) {
  sections_[name] = std::move(body);
}

ordered_json Report::to_json() const {
  ordered_json j = header_;
  if (!sections_.empty()) j["sections"] = sections_;
  j["checks"] = checks_;
  j["status"] = all_passed() ? "pass" : "fail";
  j["failures"] = failed_;
  j["timing"] = timing_;
  return j;
}

std::string Report::to_markdown() const {
  std::ostringstream os;
  os << "# " << header_.at("command").get<std::string>() << "\n\n";
  os << "tool: " << header_.at("tool").get<std::string>() << "\n\n";
  os << "| check | status |\n|---|---|\n";
  for (const auto& c : checks_)
    os << "| " << c.at("name").get<std::string>() << " | " << c.at("status").get<std::string>()
       << " |\n";
  os << "\noverall: " << (all_passed() ? "pass" : "fail") << "\n";
  return os.str();
}

Stopwatch::Stopwatch()
    : start_ns_(std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count()) {}

double Stopwatch::seconds() const {
  long long now = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count();
  return static_cast<double>(now - start_ns_) / 1e9;
}

}  // namespace cqe
