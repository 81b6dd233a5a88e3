// Prints one PASS/FAIL line per acceptance criterion; exits 1 on any failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include "realword/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260101;
  bool ok = true;
  for (auto const& r : realword::run_acceptance(seed, REALWORD_DATA_DIR)) {
    std::cout << r.line() << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
