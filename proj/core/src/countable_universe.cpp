#include "clonelab/countable_universe.hpp"

#include <algorithm>
#include <charconv>

namespace clonelab::universe {

namespace {

Nat parity_of(Nat x) { return x % 2; }

} // namespace

Nat SymbolicUnary::parameter() const {
    if (kind_ != Kind::Constant && kind_ != Kind::Step)
        throw ContractViolation("only constants and steps carry a parameter");
    return param_;
}

Nat SymbolicUnary::operator()(Nat x) const {
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Constant: return param_;
        case Kind::Step: return x < param_ ? parity_of(x) : x;
        case Kind::Parity: return parity_of(x);
    }
    throw Error("internal: unhandled function kind");
}

std::string SymbolicUnary::name() const {
    switch (kind_) {
        case Kind::Identity: return "id";
        case Kind::Constant: return "c_" + std::to_string(param_);
        case Kind::Step: return "g_" + std::to_string(param_);
        case Kind::Parity: return "p";
    }
    throw Error("internal: unhandled function kind");
}

SymbolicUnary parse_symbolic(const std::string& text) {
    if (text == "id") return SymbolicUnary::identity();
    if (text == "p") return SymbolicUnary::parity();
    if (text.size() >= 3 && (text[0] == 'c' || text[0] == 'g') && text[1] == '_') {
        Nat value = 0;
        const char* first = text.data() + 2;
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ParseError("invalid parameter in function name '" + text + "'");
        return text[0] == 'c' ? SymbolicUnary::constant(value) : SymbolicUnary::step(value);
    }
    throw ParseError("unknown function name '" + text + "' (expected id, p, c_N, or g_N)");
}

SymbolicUnary compose(const SymbolicUnary& f, const SymbolicUnary& g) {
    using Kind = SymbolicUnary::Kind;
    if (f.kind() == Kind::Identity) return g;
    if (g.kind() == Kind::Identity) return f;
    if (g.kind() == Kind::Constant) return SymbolicUnary::constant(f(g.parameter()));
    if (f.kind() == Kind::Constant) return f;
    if (f.kind() == Kind::Step && g.kind() == Kind::Step)
        return SymbolicUnary::step(std::max(f.parameter(), g.parameter()));
    // Step and parity absorb each other: both land in {0,1} below any
    // threshold and parity fixes {0,1}.
    return SymbolicUnary::parity();
}

Nat first_disagreement(const SymbolicUnary& f, const SymbolicUnary& g) {
    if (f == g) throw ContractViolation("equal functions have no disagreement point");
    using Kind = SymbolicUnary::Kind;
    Nat bound = 2;
    if (f.kind() == Kind::Constant || f.kind() == Kind::Step)
        bound = std::max(bound, f.parameter() + 2);
    if (g.kind() == Kind::Constant || g.kind() == Kind::Step)
        bound = std::max(bound, g.parameter() + 2);
    for (Nat x = 0; x <= bound; ++x)
        if (f(x) != g(x)) return x;
    throw Error("internal: distinct normalized functions must disagree within the bound");
}

Nat SymbolicOp::evaluate(const std::vector<Nat>& args) const {
    if (args.size() != arity)
        throw ContractViolation("argument count does not match the arity");
    if (coordinate < 1 || coordinate > arity)
        throw ContractViolation("coordinate out of range");
    return core(args[coordinate - 1]);
}

bool in_generated_clone(const SymbolicUnary& f) {
    return f.kind() != SymbolicUnary::Kind::Parity;
}

bool in_generated_clone(const SymbolicOp& f) {
    if (f.coordinate < 1 || f.coordinate > f.arity)
        throw ContractViolation("coordinate out of range");
    return in_generated_clone(f.core);
}

ParityInterpolation interpolate_parity(const std::set<Nat>& B) {
    if (B.empty()) return {SymbolicUnary::identity(), true};
    const Nat threshold = std::max<Nat>(*B.rbegin() + 1, 3);
    return {SymbolicUnary::step(threshold), false};
}

ParityCertificate loc_k_parity_certificate(std::uint64_t k, Nat prefix_bound,
                                           CertificateMode mode) {
    if (k == 0) throw ContractViolation("subset size bound must be at least 1");
    ParityCertificate certificate;
    certificate.mode = mode;
    const SymbolicUnary p = SymbolicUnary::parity();

    auto first_mismatch = [&](const SymbolicUnary& f, const std::vector<Nat>& points)
        -> std::optional<Nat> {
        for (Nat x : points)
            if (f(x) != p(x)) return x;
        return std::nullopt;
    };

    if (mode == CertificateMode::MaxReduction) {
        // Whether the interpolant matches parity on B depends only on
        // max(B): every point of B sits below the chosen threshold. One
        // check per possible maximum covers all subsets of any size.
        for (Nat m = 0; m <= prefix_bound; ++m) {
            std::vector<Nat> below(m + 1);
            for (Nat x = 0; x <= m; ++x) below[x] = x;
            const SymbolicUnary interpolant = interpolate_parity({m}).interpolant;
            ++certificate.cases_checked;
            if (auto bad = first_mismatch(interpolant, below)) {
                certificate.counterexample = {{m}, *bad};
                return certificate;
            }
        }
        certificate.verified = true;
        return certificate;
    }

    // Exhaustive: every subset of {0..prefix_bound} with at most k
    // elements, by size then lexicographically.
    const Nat n = prefix_bound + 1;
    const std::uint64_t limit = std::min<std::uint64_t>(k, n);
    ++certificate.cases_checked;  // the empty set, served by the convention
    for (std::uint64_t s = 1; s <= limit; ++s) {
        std::vector<Nat> pick(s);
        for (std::uint64_t i = 0; i < s; ++i) pick[i] = i;
        while (true) {
            std::set<Nat> B(pick.begin(), pick.end());
            const SymbolicUnary interpolant = interpolate_parity(B).interpolant;
            ++certificate.cases_checked;
            if (auto bad = first_mismatch(interpolant, pick)) {
                certificate.counterexample = {pick, *bad};
                return certificate;
            }
            std::uint64_t i = s;
            bool advanced = false;
            while (i-- > 0) {
                if (pick[i] + (s - i) < n) {
                    ++pick[i];
                    for (std::uint64_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }
    certificate.verified = true;
    return certificate;
}

NoBaseWitness no_finite_base_witness(const std::set<Nat>& D) {
    const Nat d = D.empty() ? 1 : std::max<Nat>(*D.rbegin(), 1);
    NoBaseWitness witness{SymbolicUnary::step(d + 2), SymbolicUnary::step(d + 3), d + 2, false};
    witness.verified = witness.first(witness.divergence_point) !=
                       witness.second(witness.divergence_point);
    for (Nat x : D)
        if (witness.first(x) != witness.second(x)) witness.verified = false;
    return witness;
}

bool rho_contains(Nat a, Nat b, Nat c, Nat d) { return a == b || c == d; }

bool rho_preserves(const SymbolicOp& f, Nat bound) {
    if (f.coordinate < 1 || f.coordinate > f.arity)
        throw ContractViolation("coordinate out of range");
    // Essential unarity collapses the argument matrix to its one relevant
    // row, so scanning single relation tuples through the core is the
    // whole check.
    const SymbolicUnary& u = f.core;
    for (Nat a = 0; a <= bound; ++a)
        for (Nat b = 0; b <= bound; ++b)
            for (Nat c = 0; c <= bound; ++c)
                for (Nat d = 0; d <= bound; ++d) {
                    if (!rho_contains(a, b, c, d)) continue;
                    if (!rho_contains(u(a), u(b), u(c), u(d))) return false;
                }
    return true;
}

RhoCheck rho_preserves(const Operation& f) {
    const Domain& domain = f.domain();
    std::vector<Tuple> rho;
    for (Value a = 0; a < domain.size(); ++a)
        for (Value b = 0; b < domain.size(); ++b)
            for (Value c = 0; c < domain.size(); ++c)
                for (Value d = 0; d < domain.size(); ++d)
                    if (rho_contains(a, b, c, d)) rho.push_back({a, b, c, d});

    const std::uint32_t arity = f.arity();
    std::vector<std::size_t> pick(arity, 0);
    Tuple args(arity), image(4);
    while (true) {
        for (std::size_t row = 0; row < 4; ++row) {
            for (std::uint32_t i = 0; i < arity; ++i) args[i] = rho[pick[i]][row];
            image[row] = f.evaluate(args);
        }
        if (!rho_contains(image[0], image[1], image[2], image[3])) {
            RhoCheck check{false, {}, image};
            for (std::uint32_t i = 0; i < arity; ++i) check.witness_arguments.push_back(rho[pick[i]]);
            return check;
        }
        std::uint32_t i = arity;
        bool advanced = false;
        while (i-- > 0) {
            if (++pick[i] < rho.size()) {
                advanced = true;
                break;
            }
            pick[i] = 0;
        }
        if (!advanced) break;
    }
    return {true, {}, {}};
}

Enumeration default_enumeration(std::uint64_t parity_index) {
    auto plain = [](std::uint64_t i) {
        return i % 2 == 0 ? SymbolicUnary::constant(i / 2) : SymbolicUnary::step(i / 2 + 3);
    };
    Enumeration enumeration;
    enumeration.at = [plain, parity_index](std::uint64_t i) {
        if (i == parity_index) return SymbolicUnary::parity();
        return plain(i < parity_index ? i : i - 1);
    };
    enumeration.description =
        "constants and steps interleaved, parity at index " + std::to_string(parity_index);
    return enumeration;
}

const char* branch_name(Branch branch) {
    switch (branch) {
        case Branch::Initial: return "initial";
        case Branch::PrefixDiffers: return "prefix-differs";
        case Branch::InterpolantJump: return "interpolant-jump";
        case Branch::KeepCurrent: return "keep-current";
    }
    throw Error("internal: unhandled branch");
}

DiagonalizationTrace diagonalize(const Enumeration& enumeration, std::uint64_t steps) {
    if (steps == 0) throw ContractViolation("at least one step is required");
    if (!enumeration.at) throw ContractViolation("enumeration is not callable");

    DiagonalizationTrace trace;
    trace.steps.reserve(steps);

    auto differs_within = [](const SymbolicUnary& a, const SymbolicUnary& b, Nat window)
        -> std::optional<Nat> {
        for (Nat x = 0; x <= window; ++x)
            if (a(x) != b(x)) return x;
        return std::nullopt;
    };

    // First member: the earliest of id, c_0, g_3, c_1, g_4, ... that is a
    // different function from f_0 (at most two candidates are ever needed).
    const SymbolicUnary f0 = enumeration.at(0);
    SymbolicUnary current = SymbolicUnary::identity();
    if (current == f0) current = SymbolicUnary::constant(0);
    Nat window = first_disagreement(current, f0);
    trace.steps.push_back({0, f0, current, window, Branch::Initial});

    for (std::uint64_t k = 1; k < steps; ++k) {
        const SymbolicUnary fk = enumeration.at(k);
        Branch branch;
        if (differs_within(current, fk, window)) {
            branch = Branch::PrefixDiffers;
            window = window + 1;
        } else {
            const bool parity_prefix =
                !differs_within(current, SymbolicUnary::parity(), window).has_value();
            if (parity_prefix) {
                // Any step whose threshold clears the window keeps the
                // prefix; pushing it past every window this run can still
                // reach keeps the remaining steps below the threshold.
                branch = Branch::InterpolantJump;
                Nat c = std::max<Nat>(window + 1, 3);
                if (fk.kind() == SymbolicUnary::Kind::Step)
                    c = std::max(c, fk.parameter() + 1);
                c += steps - k;
                while (SymbolicUnary::step(c) == fk) ++c;
                current = SymbolicUnary::step(c);
            } else if (!(current == fk)) {
                branch = Branch::KeepCurrent;
            } else {
                throw StrategyExhausted(
                    "enumerated function equals the current member and the window prefix "
                    "is not parity-shaped; no distinct member shares that prefix");
            }
            window = std::max(window + 1, first_disagreement(current, fk));
        }
        trace.steps.push_back({k, fk, current, window, branch});
    }

    trace.limit_prefix.resize(window + 1);
    bool matches = true;
    for (Nat x = 0; x <= window; ++x) {
        trace.limit_prefix[x] = current(x);
        matches = matches && trace.limit_prefix[x] == parity_of(x);
    }
    trace.limit_matches_parity = matches;
    return trace;
}

DiagonalizationTrace diagonalize(std::uint64_t steps, std::optional<std::uint64_t> parity_index) {
    return diagonalize(default_enumeration(parity_index.value_or(steps)), steps);
}

TraceAudit audit_trace(const DiagonalizationTrace& trace, const Enumeration& enumeration) {
    auto fail = [](std::string detail) { return TraceAudit{false, std::move(detail)}; };
    if (trace.steps.empty()) return fail("trace has no steps");
    if (!enumeration.at) return fail("enumeration is not callable");

    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const DiagonalizationStep& step = trace.steps[k];
        const std::string at = "step " + std::to_string(k);
        if (step.k != k) return fail(at + ": index mismatch");
        if (!(step.enumerated == enumeration.at(k)))
            return fail(at + ": enumerated function does not match the enumeration");

        bool differs = false;
        for (Nat x = 0; x <= step.window && !differs; ++x)
            differs = step.chosen(x) != step.enumerated(x);
        if (!differs)
            return fail(at + ": chosen member agrees with the enumerated function on the window");

        if (k > 0) {
            const DiagonalizationStep& prev = trace.steps[k - 1];
            if (step.window <= prev.window)
                return fail(at + ": window did not grow");
            for (Nat x = 0; x <= prev.window; ++x)
                if (step.chosen(x) != prev.chosen(x))
                    return fail(at + ": chosen member changed inside the previous window");
        }
    }

    const DiagonalizationStep& last = trace.steps.back();
    if (trace.limit_prefix.size() != last.window + 1)
        return fail("limit prefix length does not match the final window");
    bool matches = true;
    for (Nat x = 0; x <= last.window; ++x) {
        if (trace.limit_prefix[x] != last.chosen(x))
            return fail("limit prefix does not match the final member at " + std::to_string(x));
        matches = matches && trace.limit_prefix[x] == parity_of(x);
    }
    if (matches != trace.limit_matches_parity)
        return fail("parity flag does not match the limit prefix");
    return {true, "all trace properties hold"};
}

} // namespace clonelab::universe
