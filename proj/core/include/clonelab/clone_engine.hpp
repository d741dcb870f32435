#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clonelab/finite_algebra.hpp"

namespace clonelab {

struct SaturationBudget {
    // Per-arity cap on the number of stored members. Hitting the cap marks
    // the arity incomplete; queries against it then refuse to answer.
    std::uint64_t max_members_per_arity = 100'000;
};

// A clone on a finite domain: all projections plus everything reachable
// from the generators by superposition, queryable at arities up to
// max_arity. Each arity saturates independently (an m-ary member is a
// generator applied to m-ary members), so arities are computed on first
// use and cached; the object is logically immutable. Members are stored
// in insertion order (projections, generators, then breadth-first by
// composition depth), so enumerations are reproducible.
class CloneRepr {
public:
    const Domain& domain() const { return domain_; }
    std::uint32_t max_arity() const { return max_arity_; }
    const std::vector<Operation>& generators() const { return generators_; }

    bool complete(std::uint32_t arity) const;
    // Members at an arity; throws IncompleteSaturation when the budget cut
    // saturation short (an incomplete list would silently poison callers).
    const std::vector<Operation>& members(std::uint32_t arity) const;
    const std::vector<Operation>& members_unchecked(std::uint32_t arity) const;
    bool contains(const Operation& f) const;

private:
    friend CloneRepr generate_clone(const Domain&, const std::vector<Operation>&, std::uint32_t,
                                    const SaturationBudget&);
    friend CloneRepr clone_of_all_operations(const Domain&, std::uint32_t);
    CloneRepr(const Domain& domain, std::uint32_t max_arity) : domain_(domain), max_arity_(max_arity) {}

    void ensure_saturated(std::uint32_t arity) const;

    Domain domain_;
    std::uint32_t max_arity_;
    SaturationBudget budget_;
    std::vector<Operation> generators_;
    mutable std::vector<std::vector<Operation>> members_;      // index: arity - 1
    mutable std::vector<std::set<std::vector<Value>>> tables_; // dedup / lookup per arity
    mutable std::vector<bool> saturated_;
    mutable std::vector<bool> complete_;
};

CloneRepr generate_clone(const Domain& domain, const std::vector<Operation>& generators,
                         std::uint32_t max_arity, const SaturationBudget& budget = {});

// The clone of all operations, built directly (saturating to the full
// space through composition would be needlessly slow).
CloneRepr clone_of_all_operations(const Domain& domain, std::uint32_t max_arity);

// True iff every unary constant is a member. Requires complete arity 1.
bool is_constantive(const CloneRepr& clone);

struct QuasigroupCheck {
    bool ok = false;
    // On failure: which of the four cancellation laws broke, and at which
    // argument pair (x, y).
    std::string failed_law;
    Tuple point;
};

// Checks x\(x*y)=y, x*(x\y)=y, (x*y)/y=x, (x/y)*y=x pointwise.
QuasigroupCheck check_quasigroup(const Operation& dot, const Operation& ldiv, const Operation& rdiv);

bool is_latin_square(const Operation& dot);

struct QuasigroupTriple {
    Operation dot, ldiv, rdiv;
};

// Searches the binary members in canonical table order for a triple
// passing check_quasigroup. For a fixed dot the two divisions are forced
// (row/column inverses), so only Latin dots can succeed; this matches the
// naive triple enumeration, including which triple is found first.
std::optional<QuasigroupTriple> find_quasigroup_ops(const CloneRepr& clone);

} // namespace clonelab
