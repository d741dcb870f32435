#include "clonelab/galois.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace clonelab {

namespace {

std::string cap_message(const std::string& what, std::uint64_t needed, std::uint64_t cap) {
    return what + " needs " + std::to_string(needed) + " candidates, over the cap of " +
           std::to_string(cap) + "; raise the cap or use the sampled mode";
}

} // namespace

FunctionFamily family_of(const CloneRepr& clone, std::uint32_t arity) {
    FunctionFamily family{clone.domain(), arity, {}, false};
    const auto& mem = clone.members(arity);
    family.members.insert(mem.begin(), mem.end());
    return family;
}

RelationFamily invariant_relations(std::span<const Operation> ops, const Domain& domain,
                                   std::uint32_t k, const GaloisOptions& opts) {
    if (k == 0) throw ContractViolation("relation arity must be at least 1");
    for (const auto& op : ops)
        if (!(op.domain() == domain)) throw ContractViolation("operations must share the domain");

    const TupleIndex index(domain, k);
    const std::uint64_t points = index.count();
    if (points > opts.enumeration_cap)
        throw CapExceeded(cap_message("a single " + std::to_string(k) + "-ary relation", points,
                                      opts.enumeration_cap));
    std::vector<Tuple> all_tuples;
    all_tuples.reserve(points);
    for (std::uint64_t t = 0; t < points; ++t) all_tuples.push_back(index.decode(t));

    auto preserved_by_all = [&](const Relation& rel) {
        for (const auto& op : ops)
            if (!preserves(op, rel)) return false;
        return true;
    };

    RelationFamily out{domain, {}, false};
    const bool exact_fits = points < 63 && (std::uint64_t(1) << points) <= opts.enumeration_cap;
    if (exact_fits) {
        const std::uint64_t subsets = std::uint64_t(1) << points;
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            std::set<Tuple> tuples;
            for (std::uint64_t t = 0; t < points; ++t)
                if (mask & (std::uint64_t(1) << t)) tuples.insert(all_tuples[t]);
            Relation rel(domain, k, std::move(tuples));
            if (preserved_by_all(rel)) out.members.insert(std::move(rel));
        }
        return out;
    }

    if (!opts.sampled)
        throw CapExceeded(cap_message("enumerating all " + std::to_string(k) + "-ary relations",
                                      points < 63 ? (std::uint64_t(1) << points) : UINT64_MAX,
                                      opts.enumeration_cap));
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.sample_count; ++i) {
        std::set<Tuple> tuples;
        for (std::uint64_t t = 0; t < points; ++t)
            if (rng() & 1) tuples.insert(all_tuples[t]);
        Relation rel(domain, k, std::move(tuples));
        if (preserved_by_all(rel)) out.members.insert(std::move(rel));
    }
    out.sampled = true;
    return out;
}

RelationFamily invariant_relations(const CloneRepr& clone, std::uint32_t k,
                                   const GaloisOptions& opts) {
    return invariant_relations(std::span<const Operation>(clone.generators()), clone.domain(), k,
                               opts);
}

FunctionFamily polymorphisms(const RelationFamily& relations, std::uint32_t m,
                             const GaloisOptions& opts) {
    if (m == 0) throw ContractViolation("operation arity must be at least 1");
    for (const auto& rel : relations.members)
        if (!(rel.domain() == relations.domain))
            throw ContractViolation("relations must share the domain");

    const Domain& domain = relations.domain;
    const std::uint64_t points = TupleIndex(domain, m).count();
    if (points > opts.enumeration_cap)
        throw CapExceeded(cap_message("a single " + std::to_string(m) + "-ary table", points,
                                      opts.enumeration_cap));

    auto keeps_all = [&](const Operation& op) {
        for (const auto& rel : relations.members)
            if (!preserves(op, rel)) return false;
        return true;
    };

    FunctionFamily out{domain, m, {}, relations.sampled};
    const auto tables = checked_pow(domain.size(), points);
    if (tables && *tables <= opts.enumeration_cap) {
        std::vector<Value> table(points, 0);
        for (std::uint64_t code = 0; code < *tables; ++code) {
            Operation op(domain, m, table);
            if (keeps_all(op)) out.members.insert(std::move(op));
            for (std::uint64_t t = points; t-- > 0;) {
                if (++table[t] < domain.size()) break;
                table[t] = 0;
            }
        }
        return out;
    }

    if (!opts.sampled)
        throw CapExceeded(cap_message("enumerating all " + std::to_string(m) + "-ary tables",
                                      tables ? *tables : UINT64_MAX, opts.enumeration_cap));
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.sample_count; ++i) {
        Operation op = random_operation(domain, m, rng);
        if (keeps_all(op)) out.members.insert(std::move(op));
    }
    out.sampled = true;
    return out;
}

InterpolationCheck lo_k_member(const Operation& f, const FunctionFamily& F, std::uint64_t k) {
    if (k == 0) throw ContractViolation("subset size bound must be at least 1");
    if (f.arity() != F.arity || !(f.domain() == F.domain))
        throw ContractViolation("candidate arity or domain does not match the family");
    // Nothing interpolates from an empty family; even the empty subset has
    // no matching member.
    if (F.members.empty()) return {false, {}};

    // Difference sets: where each member deviates from f. A subset S
    // admits no matching member exactly when S meets every difference set.
    std::vector<std::vector<std::uint64_t>> diffs;
    diffs.reserve(F.members.size());
    for (const auto& g : F.members) {
        std::vector<std::uint64_t> diff;
        for (std::uint64_t t = 0; t < f.table().size(); ++t)
            if (f.table()[t] != g.table()[t]) diff.push_back(t);
        if (diff.empty()) return {true, {}};  // f is itself a member
        diffs.push_back(std::move(diff));
    }

    std::vector<std::uint64_t> universe;
    for (const auto& diff : diffs) universe.insert(universe.end(), diff.begin(), diff.end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    const std::uint64_t limit = std::min<std::uint64_t>(k, universe.size());
    const TupleIndex index(f.domain(), f.arity());
    std::vector<std::size_t> pick;
    auto hits_every_diff = [&]() {
        for (const auto& diff : diffs) {
            bool hit = false;
            for (std::size_t p : pick)
                if (std::binary_search(diff.begin(), diff.end(), universe[p])) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    };

    for (std::uint64_t s = 1; s <= limit; ++s) {
        pick.assign(s, 0);
        for (std::uint64_t i = 0; i < s; ++i) pick[i] = i;
        while (true) {
            if (hits_every_diff()) {
                std::vector<Tuple> subset;
                subset.reserve(s);
                for (std::size_t p : pick) subset.push_back(index.decode(universe[p]));
                return {false, std::move(subset)};
            }
            // Next s-combination in lexicographic order.
            std::size_t i = s;
            while (i-- > 0) {
                if (pick[i] + (s - i) < universe.size()) {
                    ++pick[i];
                    for (std::size_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
        }
    next_size:;
    }
    return {true, {}};
}

FunctionFamily lo_k_family(const FunctionFamily& F, std::uint64_t k, const GaloisOptions& opts) {
    if (k == 0) throw ContractViolation("subset size bound must be at least 1");
    const Domain& domain = F.domain;
    const std::uint64_t points = TupleIndex(domain, F.arity).count();
    if (points > opts.enumeration_cap)
        throw CapExceeded(cap_message("a single " + std::to_string(F.arity) + "-ary table", points,
                                      opts.enumeration_cap));

    FunctionFamily out{domain, F.arity, {}, F.sampled};
    const auto tables = checked_pow(domain.size(), points);
    if (tables && *tables <= opts.enumeration_cap) {
        std::vector<Value> table(points, 0);
        for (std::uint64_t code = 0; code < *tables; ++code) {
            Operation op(domain, F.arity, table);
            if (lo_k_member(op, F, k).interpolable) out.members.insert(std::move(op));
            for (std::uint64_t t = points; t-- > 0;) {
                if (++table[t] < domain.size()) break;
                table[t] = 0;
            }
        }
        return out;
    }

    if (!opts.sampled)
        throw CapExceeded(cap_message("enumerating all " + std::to_string(F.arity) + "-ary tables",
                                      tables ? *tables : UINT64_MAX, opts.enumeration_cap));
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.sample_count; ++i) {
        Operation op = random_operation(domain, F.arity, rng);
        if (lo_k_member(op, F, k).interpolable) out.members.insert(std::move(op));
    }
    out.sampled = true;
    return out;
}

LocalInterpolationReport local_interpolation_check(const CloneRepr& clone, std::uint32_t m,
                                                   std::uint32_t k, const GaloisOptions& opts) {
    LocalInterpolationReport report;
    report.interpolation_route = lo_k_family(family_of(clone, m), k, opts);
    report.preservation_route = polymorphisms(invariant_relations(clone, k, opts), m, opts);
    report.equal = report.interpolation_route.members == report.preservation_route.members;
    if (!report.equal) {
        std::vector<Operation> difference;
        std::set_symmetric_difference(
            report.interpolation_route.members.begin(), report.interpolation_route.members.end(),
            report.preservation_route.members.begin(), report.preservation_route.members.end(),
            std::back_inserter(difference));
        report.witness = difference.front();
    }
    return report;
}

std::uint64_t compactness_scan(const FunctionFamily& F, const GaloisOptions& opts) {
    const std::uint64_t points = TupleIndex(F.domain, F.arity).count();
    for (std::uint64_t n = 1; n <= points; ++n)
        if (lo_k_family(F, n, opts).members == F.members) return n;
    // Interpolation on the whole tuple space forces membership, so the
    // scan cannot fall through.
    throw Error("internal: no interpolation bound found up to the full tuple space");
}

} // namespace clonelab
