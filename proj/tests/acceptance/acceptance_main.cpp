// Runs every acceptance criterion and prints one line per criterion.

#include "criteria.hpp"

#include <cstdio>

int main() {
  auto results = capbound::acceptance::run_all();
  bool all = true;
  for (const auto &r : results) {
    std::printf("%s criterion %d (%s): %s [%.2fs, limit %.0fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds, r.limit_seconds);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
