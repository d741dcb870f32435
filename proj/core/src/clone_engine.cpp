#include "clonelab/clone_engine.hpp"

#include <algorithm>

namespace clonelab {

namespace {

void check_arity_range(std::uint32_t arity, std::uint32_t max_arity) {
    if (arity == 0 || arity > max_arity)
        throw ContractViolation("arity " + std::to_string(arity) +
                                " outside the clone's range 1.." + std::to_string(max_arity));
}

} // namespace

void CloneRepr::ensure_saturated(std::uint32_t arity) const {
    if (saturated_[arity - 1]) return;

    const std::uint32_t m = arity;
    const std::uint32_t size = domain_.size();
    auto& mem = members_[m - 1];
    auto& seen = tables_[m - 1];
    const std::uint64_t points = TupleIndex(domain_, m).count();
    bool truncated = false;

    // When the whole m-ary operation space is small enough to count, a
    // member list of that size is necessarily the fixed point.
    std::optional<std::uint64_t> full_space;
    if (points < 64) full_space = checked_pow(size, points);

    // Dense dedup bitmap when the table space is small: the composition
    // loop below is quadratic in the member count, so ordered-set lookups
    // there would dominate everything else.
    std::vector<std::uint8_t> present;
    if (full_space && *full_space <= (std::uint64_t(1) << 24)) present.assign(*full_space, 0);

    // Returns false when the budget blocks a genuinely new member.
    auto add = [&](const std::vector<Value>& table) {
        if (!present.empty()) {
            std::uint64_t enc = 0;
            for (Value v : table) enc = enc * size + v;
            if (present[enc]) return true;
            if (mem.size() >= budget_.max_members_per_arity) {
                truncated = true;
                return false;
            }
            present[enc] = 1;
        } else {
            if (seen.count(table)) return true;
            if (mem.size() >= budget_.max_members_per_arity) {
                truncated = true;
                return false;
            }
        }
        seen.insert(table);
        mem.emplace_back(domain_, m, table);
        return true;
    };

    for (std::uint32_t j = 1; j <= m && !truncated; ++j)
        add(make_projection(domain_, m, j).table());
    for (const auto& g : generators_) {
        if (truncated) break;
        if (g.arity() == m) add(g.table());
    }

    std::size_t previous_round = 0;
    std::vector<Value> scratch(points);
    while (!truncated) {
        if (full_space && mem.size() == *full_space) break;
        const std::size_t round_start = mem.size();
        for (const auto& g : generators_) {
            if (truncated || (full_space && mem.size() == *full_space)) break;
            const std::uint32_t r = g.arity();
            const auto& g_table = g.table();
            // All r-tuples of members present at the round start, skipping
            // those already combined in earlier rounds (every index old).
            std::vector<std::size_t> pick(r, 0);
            while (true) {
                bool has_fresh = previous_round == 0;
                for (std::size_t i = 0; i < r && !has_fresh; ++i)
                    has_fresh = pick[i] >= previous_round;
                if (has_fresh) {
                    for (std::uint64_t t = 0; t < points; ++t) {
                        std::uint64_t enc = 0;
                        for (std::size_t i = 0; i < r; ++i)
                            enc = enc * size + mem[pick[i]].table()[t];
                        scratch[t] = g_table[enc];
                    }
                    if (!add(scratch)) break;
                    if (full_space && mem.size() == *full_space) break;
                }
                std::size_t i = r;
                bool advanced = false;
                while (i-- > 0) {
                    if (++pick[i] < round_start) {
                        advanced = true;
                        break;
                    }
                    pick[i] = 0;
                }
                if (!advanced) break;
            }
        }
        if (mem.size() == round_start) break;
        previous_round = round_start;
    }

    complete_[m - 1] = !truncated;
    saturated_[m - 1] = true;
}

bool CloneRepr::complete(std::uint32_t arity) const {
    check_arity_range(arity, max_arity_);
    ensure_saturated(arity);
    return complete_[arity - 1];
}

const std::vector<Operation>& CloneRepr::members(std::uint32_t arity) const {
    check_arity_range(arity, max_arity_);
    ensure_saturated(arity);
    if (!complete_[arity - 1])
        throw IncompleteSaturation("saturation at arity " + std::to_string(arity) +
                                   " stopped at the member budget of " +
                                   std::to_string(budget_.max_members_per_arity) +
                                   "; the member list would be unreliable");
    return members_[arity - 1];
}

const std::vector<Operation>& CloneRepr::members_unchecked(std::uint32_t arity) const {
    check_arity_range(arity, max_arity_);
    ensure_saturated(arity);
    return members_[arity - 1];
}

bool CloneRepr::contains(const Operation& f) const {
    if (!(f.domain() == domain_)) throw ContractViolation("operation domain does not match the clone");
    check_arity_range(f.arity(), max_arity_);
    ensure_saturated(f.arity());
    if (!complete_[f.arity() - 1])
        throw IncompleteSaturation("membership at arity " + std::to_string(f.arity()) +
                                   " is undecidable: saturation stopped at the member budget");
    return tables_[f.arity() - 1].count(f.table()) != 0;
}

CloneRepr generate_clone(const Domain& domain, const std::vector<Operation>& generators,
                         std::uint32_t max_arity, const SaturationBudget& budget) {
    if (max_arity == 0) throw ContractViolation("max_arity must be at least 1");
    for (const auto& g : generators) {
        if (!(g.domain() == domain)) throw ContractViolation("generators must share the domain");
        if (g.arity() > max_arity)
            throw ContractViolation("generator arity " + std::to_string(g.arity()) +
                                    " exceeds max_arity " + std::to_string(max_arity));
    }
    CloneRepr clone(domain, max_arity);
    clone.budget_ = budget;
    clone.generators_ = generators;
    clone.members_.resize(max_arity);
    clone.tables_.resize(max_arity);
    clone.saturated_.assign(max_arity, false);
    clone.complete_.assign(max_arity, false);
    return clone;
}

CloneRepr clone_of_all_operations(const Domain& domain, std::uint32_t max_arity) {
    if (max_arity == 0) throw ContractViolation("max_arity must be at least 1");
    CloneRepr clone(domain, max_arity);
    clone.members_.resize(max_arity);
    clone.tables_.resize(max_arity);
    clone.saturated_.assign(max_arity, true);
    clone.complete_.assign(max_arity, true);
    for (std::uint32_t m = 1; m <= max_arity; ++m) {
        const std::uint64_t points = TupleIndex(domain, m).count();
        auto tables = checked_pow(domain.size(), points);
        if (!tables || *tables > (std::uint64_t(1) << 24))
            throw CapExceeded("the full space of " + std::to_string(m) +
                              "-ary operations is too large to materialize");
        std::vector<Value> table(points, 0);
        for (std::uint64_t code = 0; code < *tables; ++code) {
            clone.tables_[m - 1].insert(table);
            clone.members_[m - 1].emplace_back(domain, m, table);
            for (std::uint64_t t = points; t-- > 0;) {
                if (++table[t] < domain.size()) break;
                table[t] = 0;
            }
        }
    }
    // The top-arity members generate everything stored below them (feeding
    // projections into an n-ary member reproduces each lower arity), so
    // they are an honest generating set for downstream consumers.
    clone.generators_ = clone.members_[max_arity - 1];
    return clone;
}

bool is_constantive(const CloneRepr& clone) {
    clone.members(1);  // surfaces IncompleteSaturation before any answer
    for (Value v = 0; v < clone.domain().size(); ++v)
        if (!clone.contains(make_constant(clone.domain(), 1, v))) return false;
    return true;
}

namespace {

void check_binary_on_common_domain(const Operation& dot, const Operation& ldiv,
                                   const Operation& rdiv) {
    for (const Operation* op : {&dot, &ldiv, &rdiv})
        if (op->arity() != 2) throw ContractViolation("quasigroup operations must be binary");
    if (!(ldiv.domain() == dot.domain()) || !(rdiv.domain() == dot.domain()))
        throw ContractViolation("quasigroup operations must share the domain");
}

} // namespace

QuasigroupCheck check_quasigroup(const Operation& dot, const Operation& ldiv,
                                 const Operation& rdiv) {
    check_binary_on_common_domain(dot, ldiv, rdiv);
    const std::uint32_t size = dot.domain().size();
    auto at = [size](const Operation& op, Value x, Value y) {
        return op.table()[std::uint64_t(x) * size + y];
    };
    for (Value x = 0; x < size; ++x)
        for (Value y = 0; y < size; ++y) {
            if (at(ldiv, x, at(dot, x, y)) != y)
                return {false, "x\\(x*y) = y", {x, y}};
            if (at(dot, x, at(ldiv, x, y)) != y)
                return {false, "x*(x\\y) = y", {x, y}};
            if (at(rdiv, at(dot, x, y), y) != x)
                return {false, "(x*y)/y = x", {x, y}};
            if (at(dot, at(rdiv, x, y), y) != x)
                return {false, "(x/y)*y = x", {x, y}};
        }
    return {true, "", {}};
}

bool is_latin_square(const Operation& dot) {
    if (dot.arity() != 2) throw ContractViolation("Latin-square check needs a binary operation");
    const std::uint32_t size = dot.domain().size();
    for (std::uint32_t x = 0; x < size; ++x) {
        std::vector<bool> row(size, false), col(size, false);
        for (std::uint32_t y = 0; y < size; ++y) {
            Value r = dot.table()[std::uint64_t(x) * size + y];
            Value c = dot.table()[std::uint64_t(y) * size + x];
            if (row[r] || col[c]) return false;
            row[r] = col[c] = true;
        }
    }
    return true;
}

std::optional<QuasigroupTriple> find_quasigroup_ops(const CloneRepr& clone) {
    const auto& raw = clone.members(2);
    std::vector<Operation> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    std::set<std::vector<Value>> lookup;
    for (const auto& op : sorted) lookup.insert(op.table());

    const std::uint32_t size = clone.domain().size();
    // The cancellation laws force both divisions from the dot table: the
    // left division inverts rows, the right division inverts columns. So
    // scanning dots in canonical order and testing the two forced tables
    // finds exactly the first triple the naive enumeration would.
    for (const auto& dot : sorted) {
        std::vector<Value> ldiv(std::size_t(size) * size), rdiv(std::size_t(size) * size);
        bool latin = true;
        for (std::uint32_t x = 0; x < size && latin; ++x) {
            std::vector<bool> row(size, false), col(size, false);
            for (std::uint32_t y = 0; y < size; ++y) {
                Value r = dot.table()[std::uint64_t(x) * size + y];
                Value c = dot.table()[std::uint64_t(y) * size + x];
                if (row[r] || col[c]) {
                    latin = false;
                    break;
                }
                row[r] = col[c] = true;
                ldiv[std::uint64_t(x) * size + r] = y;  // x \ r = y since x*y = r
                rdiv[std::uint64_t(c) * size + x] = y;  // c / x = y since y*x = c
            }
        }
        if (!latin || !lookup.count(ldiv) || !lookup.count(rdiv)) continue;
        QuasigroupTriple triple{dot, Operation(clone.domain(), 2, ldiv),
                                Operation(clone.domain(), 2, rdiv)};
        if (check_quasigroup(triple.dot, triple.ldiv, triple.rdiv).ok) return triple;
    }
    return std::nullopt;
}

} // namespace clonelab
