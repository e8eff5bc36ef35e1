// Prints one verdict line per primary criterion; exits nonzero on any FAIL.
#include "cgw/acceptance.hpp"

#include <iostream>

int main(int argc, char** argv) {
  cgw::AcceptanceConfig cfg;
  cfg.opts = cgw::default_search_options();
  if (argc > 1) cfg.filter = argv[1];
  const auto results = cgw::run_acceptance(cfg);
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& r : results) {
    std::cout << cgw::format_line(r) << "\n";
    if (!r.primary) continue;
    if (r.verdict == cgw::Verdict::Pass) ++pass;
    if (r.verdict == cgw::Verdict::Fail) ++fail;
    if (r.verdict == cgw::Verdict::Skipped) ++skipped;
  }
  std::cout << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
  return cgw::all_passed(results) ? 0 : 1;
}
