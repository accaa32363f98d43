// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "report/acceptance.hpp"

#include <cstdio>
#include <iostream>

int main() {
  using namespace cqe;
  RunConfig cfg;  // pinned defaults: seed, 128 bits, a in {1, 2, -3, 5/7}, n 2..6, N 4..8
  Report rep = run_all(cfg);
  ordered_json j = rep.to_json();
  int failures = 0;
  for (const auto& c : j.at("checks")) {
    std::string name = c.at("name").get<std::string>();
    std::string status = c.at("status").get<std::string>();
    double secs = -1;
    if (j.at("timing").contains(name)) secs = j.at("timing").at(name).get<double>();
    std::printf("[%s] criterion %s (%.2fs)\n", status.c_str(), name.c_str(), secs);
    if (status != "PASS") {
      ++failures;
      std::cout << "  detail: " << c.at("detail").dump(2) << "\n";
    }
  }
  std::printf("%d of %d criteria passed\n",
              static_cast<int>(j.at("checks").size()) - failures,
              static_cast<int>(j.at("checks").size()));
  return failures == 0 ? 0 : 1;
}
