// Acceptance runner: one PASS/FAIL line per criterion.
//
//   cfiebem_acceptance [--criterion N]... [--known-gap N]...
//
// Without --criterion every criterion runs. Exit status is nonzero iff a line
// failed that is not flagged as a known gap for a criterion listed via --known-gap.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <set>
#include <string>

#include "cfiebem/blas_runtime.hpp"
#include "criteria.hpp"

using namespace acceptance;

int main(int argc, char** argv) {
  cfiebem::reexec_with_preferred_blas_core(argv);
  std::set<int> selected, gaps;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--criterion" || a == "--known-gap") && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (n < 1 || n > 9) {
        std::cerr << "criterion must be in 1..9\n";
        return 2;
      }
      (a == "--criterion" ? selected : gaps).insert(n);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]... [--known-gap N]...\n";
      return 2;
    }
  }
  if (selected.empty())
    for (int n = 1; n <= 9; ++n) selected.insert(n);

  Report (*const table[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                               criterion_6, criterion_7, criterion_8, criterion_9};
  bool ok = true;
  for (int n : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
      r = table[n - 1]();
    } catch (const std::exception& e) {
      r.push_back({n, "run", false, std::string("exception: ") + e.what()});
    }
    const double t = seconds_since(t0);
    for (const Line& l : r) {
      std::cout << "criterion " << l.id << " [" << l.name << "]: " << (l.pass ? "PASS" : "FAIL") << "  " << l.detail
                << fmt("  (%.1f s)", t) << std::endl;
      if (!l.pass && !(l.known_gap && gaps.count(l.id))) ok = false;
    }
  }
  return ok ? 0 : 1;
}
