#include <cstdio>

#include "acceptance_suite.hpp"

int main() {
  bool all = true;
  for (int id = 1; id <= 8; ++id) {
    const auto out = gefp::acceptance::run_criterion(id);
    all = all && out.passed;
    std::printf("%s criterion %d: %s [%s; %.1f s]\n", out.passed ? "PASS" : "FAIL", out.id, out.title.c_str(),
                out.detail.c_str(), out.seconds);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
