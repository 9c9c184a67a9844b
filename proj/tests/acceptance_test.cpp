// Full reproduction suite: one PASS/FAIL line per acceptance criterion.

#include "ljmayer/verify.hpp"

#include <iostream>
#include <map>
#include <string>

int main() {
  const ljmayer::RunConfig cfg;
  const ljmayer::Report rep = ljmayer::run_reproduction_suite(cfg);
  std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
  std::map<int, std::string> first_failure;
  for (const auto& c : rep.checks) {
    const int k = std::stoi(c.id.substr(3));
    auto& [ok, total] = tally[k];
    ++total;
    if (c.passed) ++ok;
    else if (!first_failure.count(k)) first_failure[k] = c.name;
  }
  bool all = true;
  for (int k = 1; k <= 12; ++k) {
    const auto it = tally.find(k);
    const bool pass = it != tally.end() && it->second.first == it->second.second;
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " AC-" << k;
    if (it == tally.end()) std::cout << "  (no checks ran)";
    else std::cout << "  " << it->second.first << '/' << it->second.second << " checks";
    if (first_failure.count(k)) std::cout << "  first failure: " << first_failure[k];
    std::cout << '\n';
  }
  return all ? 0 : 1;
}
