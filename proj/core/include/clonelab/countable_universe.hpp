#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clonelab/errors.hpp"
#include "clonelab/finite_algebra.hpp"

// An exactly-represented family of unary functions on the natural numbers:
// the identity, the constants, the "step" functions that equal parity below
// a threshold and the identity from it on, and parity itself. The clone
// generated by the constants and steps is closed under composition, parity
// can be interpolated on every finite set by a step, yet parity is not a
// member; and no finite set pins the members down.
namespace clonelab::universe {

using Nat = std::uint64_t;

class SymbolicUnary {
public:
    enum class Kind { Identity, Constant, Step, Parity };

    static SymbolicUnary identity() { return SymbolicUnary(Kind::Identity, 0); }
    static SymbolicUnary constant(Nat a) { return SymbolicUnary(Kind::Constant, a); }
    // Thresholds 0..2 collapse to the identity (parity agrees with the
    // identity below 2), keeping structural equality extensional.
    static SymbolicUnary step(Nat a) {
        return a <= 2 ? identity() : SymbolicUnary(Kind::Step, a);
    }
    static SymbolicUnary parity() { return SymbolicUnary(Kind::Parity, 0); }

    Kind kind() const { return kind_; }
    Nat parameter() const;
    Nat operator()(Nat x) const;
    std::string name() const;  // "id", "c_4", "g_7", "p"

    friend bool operator==(const SymbolicUnary& a, const SymbolicUnary& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_;
    }
    friend bool operator<(const SymbolicUnary& a, const SymbolicUnary& b) {
        return a.kind_ != b.kind_ ? a.kind_ < b.kind_ : a.param_ < b.param_;
    }

private:
    SymbolicUnary(Kind kind, Nat param) : kind_(kind), param_(param) {}
    Kind kind_;
    Nat param_;
};

// Accepts the names produced by SymbolicUnary::name().
SymbolicUnary parse_symbolic(const std::string& text);

// f after g, in closed form. The step/step case collapses to the larger
// threshold; the parity rules are forced pointwise (verified in tests up
// to large bounds) even though only the step/step law has a closed-form
// derivation in terms of the definitions.
SymbolicUnary compose(const SymbolicUnary& f, const SymbolicUnary& g);

// Minimal x with f(x) != g(x). Distinct members always differ at some
// x <= max(parameters)+2, which bounds the scan. Requires f != g.
Nat first_disagreement(const SymbolicUnary& f, const SymbolicUnary& g);

// (x_1,...,x_n) -> core(x_j): the essentially unary shape of every member
// of the generated clone and of its local closure.
struct SymbolicOp {
    std::uint32_t arity = 1;
    std::uint32_t coordinate = 1;  // 1-based j
    SymbolicUnary core = SymbolicUnary::identity();

    Nat evaluate(const std::vector<Nat>& args) const;
};

// Membership in the clone generated by the constants and steps: everything
// except parity.
bool in_generated_clone(const SymbolicUnary& f);
bool in_generated_clone(const SymbolicOp& f);

struct ParityInterpolation {
    SymbolicUnary interpolant;
    bool empty_set_convention = false;  // B was empty; identity returned by convention
};

// A step whose threshold clears max(B) agrees with parity on B. Threshold
// is floored at 3 so the interpolant is a genuine step.
ParityInterpolation interpolate_parity(const std::set<Nat>& B);

enum class CertificateMode {
    Exhaustive,    // every B within the bound with |B| <= k
    MaxReduction,  // one check per possible max(B): agreement below the
                   // threshold depends only on max(B), so this covers all B
};

struct ParityCertificate {
    bool verified = false;
    CertificateMode mode = CertificateMode::Exhaustive;
    std::uint64_t cases_checked = 0;
    // Never expected; present so a failure would be reportable.
    std::optional<std::pair<std::vector<Nat>, Nat>> counterexample;
};

// Checks that interpolate_parity succeeds on every candidate subset of
// {0..prefix_bound} with at most k elements.
ParityCertificate loc_k_parity_certificate(std::uint64_t k, Nat prefix_bound = 32,
                                           CertificateMode mode = CertificateMode::Exhaustive);

struct NoBaseWitness {
    SymbolicUnary first, second;
    Nat divergence_point;
    bool verified = false;  // re-checked by evaluation over D and at the point
};

// Two distinct steps whose thresholds both clear max(D) agree with parity
// on all of D yet differ where the smaller threshold starts acting as the
// identity. Hence no finite D is a base of equality for the unary members.
NoBaseWitness no_finite_base_witness(const std::set<Nat>& D);

// The 4-ary relation "first pair equal or second pair equal".
bool rho_contains(Nat a, Nat b, Nat c, Nat d);

// Essentially unary operations preserve the relation coordinatewise: the
// image tuple is the core applied to the j-th argument tuple, so the check
// reduces to scanning single tuples from {0..bound}^4. The scan is still
// performed rather than short-circuited.
bool rho_preserves(const SymbolicOp& f, Nat bound);

struct RhoCheck {
    bool preserved = false;
    std::vector<Tuple> witness_arguments;  // arity-many offending 4-tuples
    Tuple image;                           // their image, outside the relation
};

// Full check for an arbitrary finite operation table, with a witness.
RhoCheck rho_preserves(const Operation& f);

struct Enumeration {
    std::function<SymbolicUnary(std::uint64_t)> at;
    std::string description;
};

// c_0, g_3, c_1, g_4, c_2, g_5, ... with parity spliced in at the given
// index. The identity is not listed (it is the normalized form of the
// low-threshold steps).
Enumeration default_enumeration(std::uint64_t parity_index);

enum class Branch {
    Initial,          // choice of the starting member against f_0
    PrefixDiffers,    // the enumerated function already differs on the window
    InterpolantJump,  // prefix matched parity: move to a far-threshold step
    KeepCurrent,      // prefix matched but the functions differ further out
};

const char* branch_name(Branch branch);

struct DiagonalizationStep {
    std::uint64_t k = 0;
    SymbolicUnary enumerated = SymbolicUnary::identity();  // f_k
    SymbolicUnary chosen = SymbolicUnary::identity();      // g_k
    Nat window = 0;                                        // n_k
    Branch branch = Branch::Initial;
};

struct DiagonalizationTrace {
    std::vector<DiagonalizationStep> steps;
    std::vector<Nat> limit_prefix;  // g_{K-1} on {0..n_{K-1}}, the stabilized values
    bool limit_matches_parity = false;
};

// Builds sequences (n_k), (g_k) of windows and members such that
//   (1) g_k differs from f_k somewhere on {0..n_k},
//   (2) n_{k+1} > n_k,
//   (3) g_{k+1} agrees with g_k on {0..n_k},
// against the enumerated functions f_k. When the enumerated function
// agrees with the running member on the window, a replacement sharing the
// prefix is needed; with a parity-shaped prefix any far-enough step works
// (the jump adds the remaining step count so later windows stay below the
// threshold). A run that never meets such a branch keeps its member. If
// the enumeration produces exactly the running member with a prefix that
// is not parity-shaped, no replacement exists in this clone and
// StrategyExhausted is thrown; the default enumeration never gets there.
DiagonalizationTrace diagonalize(const Enumeration& enumeration, std::uint64_t steps);
// Default enumeration; parity lands at index parity_index, or just past
// the last consumed index when unset (so the run tracks parity throughout).
DiagonalizationTrace diagonalize(std::uint64_t steps,
                                 std::optional<std::uint64_t> parity_index = std::nullopt);

struct TraceAudit {
    bool ok = false;
    std::string detail;
};

// Re-checks the three trace properties by direct evaluation, independently
// of how the trace was produced.
TraceAudit audit_trace(const DiagonalizationTrace& trace, const Enumeration& enumeration);

} // namespace clonelab::universe
