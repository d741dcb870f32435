#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "clonelab/galois.hpp"

namespace clonelab {

// A finite set of n-tuples meant to pin functions down: D is a base of
// equality for F when agreement on D forces equality in F.
struct BaseSet {
    Domain domain{1};
    std::uint32_t arity = 1;
    std::set<Tuple> points;
};

BaseSet full_base(const Domain& domain, std::uint32_t arity);

struct SeparationCertificate {
    Operation f, g;   // distinct members agreeing on the candidate base
    Tuple differ_at;  // a point where they differ (re-checkable)
};

struct BaseCheck {
    bool is_base = false;
    std::optional<SeparationCertificate> violation;
};

// Decides base-of-equality by checking that restriction to D is injective
// on F (one pass with a table keyed by restriction values, rather than the
// quadratic pairwise scan the definition suggests).
BaseCheck is_base_of_equality(const BaseSet& D, const FunctionFamily& F);

struct MinimalBaseResult {
    BaseSet base;
    bool minimal = false;           // proven minimum cardinality by exhaustive search
    bool absent_under_cap = false;  // every size <= size_cap was exhausted without a hit
};

// Smallest base of equality for F. Exact search by increasing size in
// lexicographic candidate order (restricted to points that separate some
// pair, which cannot miss a minimum-size solution); falls back to a greedy
// cover, labeled non-minimal, when the cap cuts the exact search short.
MinimalBaseResult find_minimal_base(const FunctionFamily& F, std::uint32_t size_cap,
                                    const GaloisOptions& opts = {});
MinimalBaseResult find_minimal_base(const FunctionFamily& F, const GaloisOptions& opts = {});

struct EqualityBaseBoundReport {
    bool base_precondition_ok = false;
    std::optional<SeparationCertificate> precondition_violation;
    std::uint64_t k = 0;  // |D| + 1
    bool equal = false;
    std::optional<Operation> witness;
};

// With D a base of equality for the clone's n-ary part and k = |D|+1, the
// n-ary part must already be closed under Lo_k; this runs that check.
EqualityBaseBoundReport equality_base_bound_verify(const CloneRepr& clone, std::uint32_t n,
                                                   const BaseSet& D, const GaloisOptions& opts = {});

BaseSet project_base(const BaseSet& D);                   // first coordinates
BaseSet power_base(const BaseSet& D, std::uint32_t n);    // n-fold Cartesian power of a unary set

struct ProjectedBaseReport {
    bool premise_ok = false;    // D is a base for the m-ary part
    bool projected_ok = false;  // first-coordinate projection is a base for the unary part
    bool premise_full_domain = false;  // D covers the whole tuple space, so the premise is immediate
    BaseSet projected;
    std::optional<SeparationCertificate> failure;
};

ProjectedBaseReport verify_projected_base(const CloneRepr& clone, std::uint32_t m, const BaseSet& D,
                                          const GaloisOptions& opts = {});

struct PowerBaseReport {
    bool constantive = false;  // the hypothesis of the power construction
    bool premise_ok = false;   // D is a base for the unary part
    bool power_ok = false;     // D^n is a base for the n-ary part
    bool power_full_domain = false;  // D^n covers the whole tuple space, so the check is immediate
    BaseSet power;
    std::optional<SeparationCertificate> failure;
};

// Verifies that the Cartesian power of a unary base is a base at arity n.
// Runs even when the clone is not constantive, with the hypothesis flag
// left false so callers can see the result is outside the guarantee.
PowerBaseReport verify_power_base(const CloneRepr& clone, const BaseSet& unary_base, std::uint32_t n,
                                  const GaloisOptions& opts = {});

using BigInt = boost::multiprecision::cpp_int;

struct IntegralDomainWitness {
    std::vector<long long> roots;      // the input set, sorted, deduplicated
    std::vector<BigInt> coefficients;  // of prod (x - d), ascending degree
    BigInt evaluation_point;           // max(roots) + 1, or 1 for the empty set
    BigInt value;                      // the polynomial at that point; nonzero
};

// The two unary polynomials 0 and prod_{d in D}(x - d) agree on D but not
// at max(D)+1, so no finite D pins down the unary polynomials over the
// integers. Exact arbitrary-precision arithmetic throughout.
IntegralDomainWitness integral_domain_witness(const std::vector<long long>& D);

BigInt evaluate_polynomial(const std::vector<BigInt>& coefficients, const BigInt& x);

} // namespace clonelab
