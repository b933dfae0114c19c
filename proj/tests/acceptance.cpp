#include <cstdio>
#include <exception>

#include "qbox/verify.hpp"

int main() {
  try {
    const qbox::VerifyReport r = qbox::run_verification();
    std::fputs(qbox::format_report(r).c_str(), stdout);
    int gating_failures = 0;
    for (const auto& c : r.criteria)
      if (c.gating && !c.passed()) ++gating_failures;
    std::printf("%d gating criterion(s) failed\n", gating_failures);
    return gating_failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
}
