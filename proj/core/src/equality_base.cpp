#include "clonelab/equality_base.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace clonelab {

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (result > cap) return cap + 1;
        result = result * (n - i) / (i + 1);
    }
    return result;
}

// Keys members by their restriction to the candidate points; a collision
// between distinct members is exactly a failed separation.
std::optional<SeparationCertificate> first_collision(const std::set<Operation>& members,
                                                     const std::vector<std::uint64_t>& points,
                                                     const TupleIndex& index) {
    std::map<std::vector<Value>, const Operation*> seen;
    std::vector<Value> key(points.size());
    for (const auto& f : members) {
        for (std::size_t i = 0; i < points.size(); ++i) key[i] = f.table()[points[i]];
        auto [it, inserted] = seen.emplace(key, &f);
        if (!inserted) {
            const Operation& g = *it->second;
            for (std::uint64_t t = 0; t < f.table().size(); ++t)
                if (f.table()[t] != g.table()[t])
                    return SeparationCertificate{g, f, index.decode(t)};
            throw Error("internal: colliding members must differ somewhere");
        }
    }
    return std::nullopt;
}

void check_family_shape(const BaseSet& D, const FunctionFamily& F) {
    if (F.arity != D.arity || !(F.domain == D.domain))
        throw ContractViolation("family arity or domain does not match the base");
}

} // namespace

BaseSet full_base(const Domain& domain, std::uint32_t arity) {
    BaseSet base{domain, arity, {}};
    const TupleIndex index(domain, arity);
    for (std::uint64_t t = 0; t < index.count(); ++t) base.points.insert(index.decode(t));
    return base;
}

BaseCheck is_base_of_equality(const BaseSet& D, const FunctionFamily& F) {
    check_family_shape(D, F);
    const TupleIndex index(D.domain, D.arity);
    for (const auto& point : D.points) index.encode(point);  // validates shape

    // Restriction to the whole tuple space is injective, so the full base
    // separates any family without looking at it.
    if (D.points.size() == index.count()) return {true, std::nullopt};

    std::vector<std::uint64_t> encoded;
    encoded.reserve(D.points.size());
    for (const auto& point : D.points) encoded.push_back(index.encode(point));
    if (auto collision = first_collision(F.members, encoded, index))
        return {false, std::move(collision)};
    return {true, std::nullopt};
}

MinimalBaseResult find_minimal_base(const FunctionFamily& F, std::uint32_t size_cap,
                                    const GaloisOptions& opts) {
    const TupleIndex index(F.domain, F.arity);
    MinimalBaseResult result{{F.domain, F.arity, {}}, true, false};
    if (F.members.size() <= 1) return result;  // the empty set separates at most one member

    // Only points where some pair of members disagrees can ever separate.
    const Operation& head = *F.members.begin();
    std::vector<std::uint64_t> useful;
    for (std::uint64_t t = 0; t < index.count(); ++t) {
        for (const auto& f : F.members)
            if (f.table()[t] != head.table()[t]) {
                useful.push_back(t);
                break;
            }
    }

    auto separates = [&](const std::vector<std::uint64_t>& points) {
        return !first_collision(F.members, points, index).has_value();
    };
    auto greedy = [&]() {
        // Partition refinement: repeatedly add the point splitting the most
        // blocks of still-unseparated members, lowest point on ties.
        std::vector<std::uint64_t> chosen;
        std::vector<std::vector<const Operation*>> blocks{{}};
        for (const auto& f : F.members) blocks.front().push_back(&f);
        while (true) {
            bool any_block = false;
            for (const auto& block : blocks) any_block = any_block || block.size() > 1;
            if (!any_block) break;
            std::uint64_t best_point = 0;
            std::size_t best_blocks = 0;
            for (std::uint64_t t : useful) {
                if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) continue;
                std::size_t split = 0;
                for (const auto& block : blocks) {
                    if (block.size() <= 1) continue;
                    const Value v = block.front()->table()[t];
                    for (const Operation* f : block)
                        if (f->table()[t] != v) {
                            ++split;
                            break;
                        }
                }
                if (split > best_blocks) {
                    best_blocks = split;
                    best_point = t;
                }
            }
            if (best_blocks == 0)
                throw Error("internal: distinct members left unseparated by every point");
            chosen.push_back(best_point);
            std::vector<std::vector<const Operation*>> refined;
            for (auto& block : blocks) {
                std::map<Value, std::vector<const Operation*>> by_value;
                for (const Operation* f : block) by_value[f->table()[best_point]].push_back(f);
                for (auto& [value, group] : by_value) refined.push_back(std::move(group));
            }
            blocks = std::move(refined);
        }
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    };
    auto finish = [&](const std::vector<std::uint64_t>& points, bool minimal, bool capped) {
        for (std::uint64_t t : points) result.base.points.insert(index.decode(t));
        result.minimal = minimal;
        result.absent_under_cap = capped;
        return result;
    };

    const std::uint64_t limit = std::min<std::uint64_t>(size_cap, useful.size());
    for (std::uint64_t s = 1; s <= limit; ++s) {
        if (binomial_capped(useful.size(), s, opts.enumeration_cap) > opts.enumeration_cap)
            return finish(greedy(), false, false);
        std::vector<std::uint64_t> pick(s);
        for (std::uint64_t i = 0; i < s; ++i) pick[i] = i;
        while (true) {
            std::vector<std::uint64_t> points(s);
            for (std::uint64_t i = 0; i < s; ++i) points[i] = useful[pick[i]];
            if (separates(points)) return finish(points, true, false);
            std::uint64_t i = s;
            bool advanced = false;
            while (i-- > 0) {
                if (pick[i] + (s - i) < useful.size()) {
                    ++pick[i];
                    for (std::uint64_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (s == useful.size()) break;  // the whole useful set failed; nothing larger helps
    }
    // Cap exhausted without a separating set; fall back to greedy so the
    // caller still gets a working base.
    return finish(greedy(), false, true);
}

MinimalBaseResult find_minimal_base(const FunctionFamily& F, const GaloisOptions& opts) {
    const TupleIndex index(F.domain, F.arity);
    const std::uint64_t count = index.count();
    const std::uint32_t cap =
        count > UINT32_MAX ? UINT32_MAX : static_cast<std::uint32_t>(count);
    return find_minimal_base(F, cap, opts);
}

EqualityBaseBoundReport equality_base_bound_verify(const CloneRepr& clone, std::uint32_t n,
                                                   const BaseSet& D, const GaloisOptions& opts) {
    EqualityBaseBoundReport report;
    report.k = std::uint64_t(D.points.size()) + 1;

    FunctionFamily direct = family_of(clone, n);
    BaseCheck precondition = is_base_of_equality(D, direct);
    report.base_precondition_ok = precondition.is_base;
    if (!precondition.is_base) {
        report.precondition_violation = precondition.violation;
        report.equal = false;
        return report;
    }

    FunctionFamily interpolated = lo_k_family(direct, report.k, opts);
    report.equal = direct.members == interpolated.members;
    if (!report.equal) {
        std::vector<Operation> difference;
        std::set_symmetric_difference(direct.members.begin(), direct.members.end(),
                                      interpolated.members.begin(), interpolated.members.end(),
                                      std::back_inserter(difference));
        report.witness = difference.front();
    }
    return report;
}

BaseSet project_base(const BaseSet& D) {
    BaseSet projected{D.domain, 1, {}};
    for (const auto& point : D.points) {
        if (point.empty()) throw ContractViolation("base points must be nonempty tuples");
        projected.points.insert(Tuple{point.front()});
    }
    return projected;
}

BaseSet power_base(const BaseSet& D, std::uint32_t n) {
    if (D.arity != 1) throw ContractViolation("only a unary base can be raised to a power");
    if (n == 0) throw ContractViolation("power must be at least 1");
    BaseSet powered{D.domain, n, {}};
    std::vector<Value> values;
    for (const auto& point : D.points) values.push_back(point.front());
    if (values.empty()) return powered;
    Tuple tuple(n, values.front());
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        for (std::uint32_t i = 0; i < n; ++i) tuple[i] = values[pick[i]];
        powered.points.insert(tuple);
        std::uint32_t i = n;
        bool advanced = false;
        while (i-- > 0) {
            if (++pick[i] < values.size()) {
                advanced = true;
                break;
            }
            pick[i] = 0;
        }
        if (!advanced) break;
    }
    return powered;
}

ProjectedBaseReport verify_projected_base(const CloneRepr& clone, std::uint32_t m,
                                          const BaseSet& D, const GaloisOptions& opts) {
    (void)opts;
    ProjectedBaseReport report;
    report.projected = project_base(D);
    report.premise_full_domain = D.points.size() == TupleIndex(D.domain, D.arity).count();

    // A full base restricts injectively, so the premise holds without
    // materializing the m-ary members; this also keeps budget-truncated
    // clones usable here.
    if (report.premise_full_domain) {
        report.premise_ok = true;
    } else {
        BaseCheck premise = is_base_of_equality(D, family_of(clone, m));
        report.premise_ok = premise.is_base;
        if (!premise.is_base) {
            report.failure = premise.violation;
            report.projected_ok = false;
            return report;
        }
    }

    if (report.projected.points.size() == TupleIndex(D.domain, 1).count()) {
        report.projected_ok = true;
        return report;
    }
    BaseCheck projected = is_base_of_equality(report.projected, family_of(clone, 1));
    report.projected_ok = projected.is_base;
    if (!projected.is_base) report.failure = projected.violation;
    return report;
}

PowerBaseReport verify_power_base(const CloneRepr& clone, const BaseSet& unary_base,
                                  std::uint32_t n, const GaloisOptions& opts) {
    (void)opts;
    PowerBaseReport report;
    report.constantive = is_constantive(clone);
    report.power = power_base(unary_base, n);
    report.power_full_domain =
        report.power.points.size() == TupleIndex(unary_base.domain, n).count();

    if (unary_base.points.size() == TupleIndex(unary_base.domain, 1).count()) {
        report.premise_ok = true;
    } else {
        BaseCheck premise = is_base_of_equality(unary_base, family_of(clone, 1));
        report.premise_ok = premise.is_base;
        if (!premise.is_base) {
            report.failure = premise.violation;
            report.power_ok = false;
            return report;
        }
    }

    if (report.power_full_domain) {
        report.power_ok = true;
        return report;
    }
    BaseCheck power = is_base_of_equality(report.power, family_of(clone, n));
    report.power_ok = power.is_base;
    if (!power.is_base) report.failure = power.violation;
    return report;
}

IntegralDomainWitness integral_domain_witness(const std::vector<long long>& D) {
    IntegralDomainWitness witness;
    witness.roots = D;
    std::sort(witness.roots.begin(), witness.roots.end());
    witness.roots.erase(std::unique(witness.roots.begin(), witness.roots.end()),
                        witness.roots.end());

    // Expand the product of (x - d) over the roots, lowest coefficient first.
    witness.coefficients.assign(1, BigInt(1));
    for (long long d : witness.roots) {
        std::vector<BigInt> next(witness.coefficients.size() + 1, BigInt(0));
        for (std::size_t i = 0; i < witness.coefficients.size(); ++i) {
            next[i + 1] += witness.coefficients[i];
            next[i] -= BigInt(d) * witness.coefficients[i];
        }
        witness.coefficients = std::move(next);
    }
    witness.evaluation_point =
        witness.roots.empty() ? BigInt(1) : BigInt(witness.roots.back()) + 1;
    witness.value = evaluate_polynomial(witness.coefficients, witness.evaluation_point);
    return witness;
}

BigInt evaluate_polynomial(const std::vector<BigInt>& coefficients, const BigInt& x) {
    BigInt result = 0;
    for (std::size_t i = coefficients.size(); i-- > 0;) result = result * x + coefficients[i];
    return result;
}

} // namespace clonelab
