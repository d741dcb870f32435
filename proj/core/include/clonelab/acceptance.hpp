#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "clonelab/countable_universe.hpp"
#include "clonelab/galois.hpp"

namespace clonelab {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;      // logical check passed and the time limit held
    std::string detail;       // human-readable summary or first failure
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

using ComposeFn =
    std::function<universe::SymbolicUnary(const universe::SymbolicUnary&, const universe::SymbolicUnary&)>;

struct AcceptanceOptions {
    std::uint64_t seed = 424242;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::uint64_t budget = 100'000;
    // Composition used by the composition-law criterion; overridable so a
    // deliberately corrupted rule demonstrably fails with a witness.
    ComposeFn compose;  // defaults to universe::compose
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int number, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

} // namespace clonelab
