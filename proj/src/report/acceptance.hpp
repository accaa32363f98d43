#ifndef CQE_REPORT_ACCEPTANCE_HPP
#define CQE_REPORT_ACCEPTANCE_HPP

#include "report/report.hpp"

#include <string>
#include <vector>

namespace cqe {

struct RunConfig {
  std::uint64_t seed = 20240801;
  long precision_bits = 128;
  std::vector<Rat> a_values = {Rat(1), Rat(2), Rat(-3), Rat(5, 7)};
  int n_lo = 2, n_hi = 6;
  int N_lo = 4, N_hi = 8;
  std::string data_dir;  // corpus location; empty uses the built-in default
  size_t sample_points = 500;

  ordered_json to_json() const;
};

Report run_galois(const RunConfig& cfg);
Report run_example21(const RunConfig& cfg);
Report run_combi(const RunConfig& cfg);
Report run_theta(const RunConfig& cfg);
Report run_claim_b(const RunConfig& cfg);
Report run_binarize(const RunConfig& cfg);
Report run_qe_corpus(const RunConfig& cfg);
Report run_kernel_properties(const RunConfig& cfg);

// The full suite: one gate check per criterion, each with its runtime budget.
Report run_all(const RunConfig& cfg);

std::string default_data_dir();
std::string read_text_file(const std::string& path);

}  // namespace cqe

#endif
