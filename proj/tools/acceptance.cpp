#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "padyn/suites.hpp"

// Acceptance gate: one line per criterion, exit 0 iff every selected
// criterion passes. Arguments select criteria by number; none selects all.
int main(int argc, char** argv) {
    std::vector<int> nums;
    if (argc == 1) {
        for (int n = 1; n <= 12; ++n) nums.push_back(n);
    } else {
        for (int i = 1; i < argc; ++i) {
            int n = std::atoi(argv[i]);
            if (n < 1 || n > 12) {
                std::cerr << "criterion number out of range: " << argv[i] << "\n";
                return 2;
            }
            nums.push_back(n);
        }
    }

    std::uint64_t seed = 1;
    if (const char* e = std::getenv("PADYN_SEED"); e && *e)
        seed = std::strtoull(e, nullptr, 10);

    bool all = true;
    for (int n : nums) {
        padyn::CriterionResult r = padyn::run_criterion(n, seed);
        std::cout << r.summary_line() << "\n";
        for (const padyn::CheckResult& ck : r.checks)
            if (!ck.pass) std::cout << "       failing " << ck.name << ": " << ck.detail << "\n";
        all = all && r.pass();
    }
    return all ? 0 : 1;
}
