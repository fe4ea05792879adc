// Acceptance runner: one line per criterion, nonzero exit on any failure.
#include <cstdio>

#include "epi/suites.hpp"

int main() {
    const auto results = epi::run_all_suites();
    int failures = 0;
    int idx = 0;
    for (const auto& r : results) {
        ++idx;
        std::printf("criterion %d %-28s %s  (%s) [%ld ms]\n", idx, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.ms);
        if (!r.pass) ++failures;
    }
    if (failures) std::printf("%d of %d criteria failed\n", failures, idx);
    return failures == 0 ? 0 : 1;
}
