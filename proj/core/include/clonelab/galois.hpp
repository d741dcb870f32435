#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clonelab/clone_engine.hpp"
#include "clonelab/finite_algebra.hpp"

namespace clonelab {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 20;

struct GaloisOptions {
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    // When the exact enumeration would exceed the cap, sampled=true draws
    // sample_count random candidates instead of failing; results are then
    // marked sampled (sound but possibly incomplete).
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t sample_count = 4096;
};

// A set of operations of one arity. std::set ordering is by table, so
// iteration is the canonical enumeration order.
struct FunctionFamily {
    Domain domain{1};
    std::uint32_t arity = 1;
    std::set<Operation> members;
    bool sampled = false;
};

struct RelationFamily {
    Domain domain{1};
    std::set<Relation> members;
    bool sampled = false;
};

FunctionFamily family_of(const CloneRepr& clone, std::uint32_t arity);

// All k-ary relations preserved by every given operation, found by
// filtering the 2^(size^k) subsets of the k-tuple space.
RelationFamily invariant_relations(std::span<const Operation> ops, const Domain& domain,
                                   std::uint32_t k, const GaloisOptions& opts = {});
// Relations invariant under a clone equal those invariant under its
// generators (projections preserve everything, and preservation survives
// superposition), so this stays exact even for budget-truncated clones.
RelationFamily invariant_relations(const CloneRepr& clone, std::uint32_t k,
                                   const GaloisOptions& opts = {});

// All m-ary operations preserving every relation in the family, found by
// filtering the size^(size^m) candidate tables.
FunctionFamily polymorphisms(const RelationFamily& relations, std::uint32_t m,
                             const GaloisOptions& opts = {});

struct InterpolationCheck {
    bool interpolable = false;
    // When not interpolable: a subset of at most k argument tuples on which
    // no family member agrees with the candidate, in canonical order.
    // Empty for the degenerate failure against an empty family.
    std::vector<Tuple> violating_subset;
};

// Membership in Lo_k: can f be matched on every subset of at most k
// argument tuples by some member of F? Computed exactly through the
// difference sets {x : g(x) != f(x)}: a violating subset must meet every
// one of them, so candidates are drawn from their union only; searching
// that union in size-then-lexicographic order yields the same first
// certificate as scanning the whole tuple space.
InterpolationCheck lo_k_member(const Operation& f, const FunctionFamily& F, std::uint64_t k);

FunctionFamily lo_k_family(const FunctionFamily& F, std::uint64_t k, const GaloisOptions& opts = {});

struct LocalInterpolationReport {
    bool equal = false;
    FunctionFamily interpolation_route;   // Lo_k of the clone's m-ary part
    FunctionFamily preservation_route;    // m-ary ops preserving the k-ary invariants
    std::optional<Operation> witness;     // a member of the symmetric difference
};

// Computes the m-ary locally-interpolable closure twice, by independent
// routes (subset interpolation vs. invariant preservation), and compares.
LocalInterpolationReport local_interpolation_check(const CloneRepr& clone, std::uint32_t m,
                                                   std::uint32_t k, const GaloisOptions& opts = {});

// Least n >= 1 with lo_k_family(F, n) = F. Always at most size^arity,
// since interpolation on the full tuple space forces membership.
std::uint64_t compactness_scan(const FunctionFamily& F, const GaloisOptions& opts = {});

} // namespace clonelab
