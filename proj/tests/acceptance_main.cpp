#include <cstdio>
#include <exception>
#include <string>

#include "clonelab/acceptance.hpp"

// Runs every acceptance criterion and prints exactly one verdict line per
// criterion, then a summary. Exit status is nonzero iff any criterion failed.
// A criterion that throws is a failure, not a crash of the harness.

int main() {
    using clonelab::AcceptanceOptions;
    using clonelab::CriterionResult;

    const AcceptanceOptions options;  // pinned seed, cap, and budget
    int failures = 0;

    for (int number = 1; number <= clonelab::kCriterionCount; ++number) {
        CriterionResult result;
        try {
            result = clonelab::run_criterion(number, options);
        } catch (const std::exception& e) {
            result.number = number;
            result.name = "criterion " + std::to_string(number);
            result.passed = false;
            result.detail = std::string("threw: ") + e.what();
        }
        if (!result.passed) ++failures;
        std::printf("[%s] %2d/%d %s (%.2fs, limit %.0fs)%s%s\n",
                    result.passed ? "PASS" : "FAIL", number, clonelab::kCriterionCount,
                    result.name.c_str(), result.seconds, result.limit_seconds,
                    result.detail.empty() ? "" : " : ", result.detail.c_str());
    }

    if (failures == 0)
        std::printf("all %d criteria passed\n", clonelab::kCriterionCount);
    else
        std::printf("%d of %d criteria failed\n", failures, clonelab::kCriterionCount);
    return failures == 0 ? 0 : 1;
}
