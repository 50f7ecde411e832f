// Acceptance suite: runs every reproduction criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero if
// any criterion fails.

#include <cstdio>
#include <cstring>
#include <string>

#include "mtd/repro.hpp"

int main(int argc, char** argv) {
    int em_datasets = 100;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--datasets") == 0 && i + 1 < argc)
            em_datasets = std::atoi(argv[++i]);
    }
    auto results = mtd::run_acceptance(em_datasets);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  [%2d] %s\n       %s  (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
