#ifndef CQE_REPORT_REPORT_HPP
#define CQE_REPORT_REPORT_HPP

#include "core/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace cqe {

using ordered_json = nlohmann::ordered_json;

inline const char* kToolVersion = "curveqe 1.0.0";

// A deterministic report envelope.  Timings are quarantined under a single
// "timing" key so byte-comparisons can strip them.
class Report {
public:
  Report(std::string tool, ordered_json config);
  void add_check(const std::string& name, bool passed, ordered_json detail,
                 double seconds = -1.0);
  void add_section(const std::string& name, ordered_json body);
  bool all_passed() const { return failed_ == 0; }
  size_t failures() const { return failed_; }
  ordered_json to_json() const;
  std::string to_json_text() const { return to_json().dump(2); }
  std::string to_markdown() const;

private:
  ordered_json header_;
  ordered_json checks_ = ordered_json::array();
  ordered_json sections_ = ordered_json::object();
  ordered_json timing_ = ordered_json::object();
  size_t failed_ = 0;
};

// Stopwatch helper for per-check timing.
class Stopwatch {
public:
  Stopwatch();
  double seconds() const;

private:
  long long start_ns_;
};

}  // namespace cqe

#endif
