#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "clonelab/clone_engine.hpp"
#include "clonelab/equality_base.hpp"
#include "clonelab/errors.hpp"
#include "clonelab/finite_algebra.hpp"
#include "clonelab/galois.hpp"

using namespace clonelab;

namespace {

Operation table_op(std::uint32_t size, std::uint32_t arity, std::vector<Value> table) {
    return Operation(Domain(size), arity, std::move(table));
}

FunctionFamily family(std::uint32_t size, std::uint32_t arity, std::vector<Operation> ops) {
    FunctionFamily f{Domain(size), arity, {}, false};
    for (auto& op : ops) f.members.insert(std::move(op));
    return f;
}

FunctionFamily all_unary_on_two() {
    return family(2, 1, {table_op(2, 1, {0, 0}), table_op(2, 1, {0, 1}), table_op(2, 1, {1, 0}),
                         table_op(2, 1, {1, 1})});
}

BaseSet base(std::uint32_t size, std::uint32_t arity, std::set<Tuple> points) {
    return BaseSet{Domain(size), arity, std::move(points)};
}

// The definition, verbatim: no two distinct members agree everywhere on D.
bool pairwise_is_base(const BaseSet& D, const FunctionFamily& F) {
    for (auto i = F.members.begin(); i != F.members.end(); ++i)
        for (auto j = std::next(i); j != F.members.end(); ++j) {
            bool agree = true;
            for (const auto& point : D.points)
                if (i->evaluate(point) != j->evaluate(point)) {
                    agree = false;
                    break;
                }
            if (agree) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("base checking follows the worked examples") {
    auto consts = family(2, 1, {table_op(2, 1, {0, 0}), table_op(2, 1, {1, 1})});
    CHECK(is_base_of_equality(base(2, 1, {{0}}), consts).is_base);

    auto id_neg = family(2, 1, {table_op(2, 1, {0, 1}), table_op(2, 1, {1, 0})});
    auto empty_check = is_base_of_equality(base(2, 1, {}), id_neg);
    CHECK_FALSE(empty_check.is_base);
    REQUIRE(empty_check.violation.has_value());
    CHECK_FALSE(empty_check.violation->f == empty_check.violation->g);

    auto everything = is_base_of_equality(base(2, 1, {{0}}), all_unary_on_two());
    CHECK_FALSE(everything.is_base);
    REQUIRE(everything.violation.has_value());
    const auto& cert = *everything.violation;
    CHECK(cert.f.evaluate({0}) == cert.g.evaluate({0}));
    CHECK(cert.f.evaluate(cert.differ_at) != cert.g.evaluate(cert.differ_at));
}

TEST_CASE("the full tuple space is always a base") {
    CHECK(is_base_of_equality(full_base(Domain(2), 1), all_unary_on_two()).is_base);
    CHECK(full_base(Domain(3), 2).points.size() == 9);
}

TEST_CASE("base checks validate shapes") {
    auto consts = family(2, 1, {table_op(2, 1, {0, 0})});
    CHECK_THROWS_AS(is_base_of_equality(base(2, 2, {{0, 0}}), consts), ContractViolation);
    CHECK_THROWS_AS(is_base_of_equality(base(3, 1, {{0}}), consts), ContractViolation);
    CHECK_THROWS_AS(is_base_of_equality(base(2, 1, {{7}}), consts), ContractViolation);
}

TEST_CASE("a base stays a base under enlargement") {
    std::mt19937_64 rng(4141);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint32_t size = 2 + trial % 2;
        FunctionFamily F{Domain(size), 1, {}, false};
        for (std::uint64_t i = 0, n = 1 + rng() % 3; i < n; ++i)
            F.members.insert(random_operation(Domain(size), 1, rng));

        auto found = find_minimal_base(F);
        REQUIRE(is_base_of_equality(found.base, F).is_base);
        auto larger = found.base;
        larger.points.insert({static_cast<Value>(rng() % size)});
        CHECK(is_base_of_equality(larger, F).is_base);
    }
}

TEST_CASE("the injectivity shortcut agrees with the pairwise definition") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t size = 2 + trial % 2;
        std::uint32_t arity = 1 + trial % 2;
        FunctionFamily F{Domain(size), arity, {}, false};
        for (std::uint64_t i = 0, n = rng() % 4; i < n; ++i)
            F.members.insert(random_operation(Domain(size), arity, rng));

        TupleIndex index(Domain(size), arity);
        BaseSet D{Domain(size), arity, {}};
        for (std::uint64_t code = 0; code < index.count(); ++code)
            if (rng() % 2) D.points.insert(index.decode(code));

        CHECK(is_base_of_equality(D, F).is_base == pairwise_is_base(D, F));
    }
}

TEST_CASE("minimal bases match the worked examples") {
    auto consts = family(2, 1, {table_op(2, 1, {0, 0}), table_op(2, 1, {1, 1})});
    auto found = find_minimal_base(consts);
    CHECK(found.minimal);
    CHECK(found.base.points == std::set<Tuple>{{0}});

    auto four = find_minimal_base(all_unary_on_two());
    CHECK(four.minimal);
    CHECK(four.base.points == std::set<Tuple>{{0}, {1}});

    auto lone = find_minimal_base(family(2, 1, {table_op(2, 1, {0, 1})}));
    CHECK(lone.minimal);
    CHECK(lone.base.points.empty());

    FunctionFamily empty{Domain(2), 1, {}, false};
    CHECK(find_minimal_base(empty).base.points.empty());
}

TEST_CASE("found bases are bases and provably smallest") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 25; ++trial) {
        std::uint32_t size = 2 + trial % 2;
        std::uint32_t arity = 1 + trial % 2;
        FunctionFamily F{Domain(size), arity, {}, false};
        for (std::uint64_t i = 0, n = 1 + rng() % 4; i < n; ++i)
            F.members.insert(random_operation(Domain(size), arity, rng));

        auto found = find_minimal_base(F);
        REQUIRE(found.minimal);
        CHECK(is_base_of_equality(found.base, F).is_base);

        // Exhaust every strictly smaller candidate set.
        TupleIndex index(Domain(size), arity);
        const auto count = index.count();
        REQUIRE(count <= 16);
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << count); ++mask) {
            if (std::uint64_t(__builtin_popcountll(mask)) >= found.base.points.size()) continue;
            BaseSet D{Domain(size), arity, {}};
            for (std::uint64_t bit = 0; bit < count; ++bit)
                if (mask & (std::uint64_t(1) << bit)) D.points.insert(index.decode(bit));
            CHECK_FALSE(is_base_of_equality(D, F).is_base);
        }
    }
}

TEST_CASE("a tight size cap falls back to a labeled greedy cover") {
    auto four = all_unary_on_two();  // minimum base size is 2
    auto capped = find_minimal_base(four, 1);
    CHECK(capped.absent_under_cap);
    CHECK_FALSE(capped.minimal);
    CHECK(is_base_of_equality(capped.base, four).is_base);
}

TEST_CASE("the interpolation bound holds on the worked clones") {
    auto neg = table_op(2, 1, {1, 0});
    auto c0 = make_constant(Domain(2), 1, 0);
    auto c1 = make_constant(Domain(2), 1, 1);

    auto everything = generate_clone(Domain(2), {neg, c0}, 1);
    REQUIRE(family_of(everything, 1).members.size() == 4);
    auto full_report = equality_base_bound_verify(everything, 1, base(2, 1, {{0}, {1}}));
    CHECK(full_report.base_precondition_ok);
    CHECK(full_report.k == 3);
    CHECK(full_report.equal);

    auto bare = generate_clone(Domain(2), {}, 1);
    auto bare_report = equality_base_bound_verify(bare, 1, base(2, 1, {}));
    CHECK(bare_report.base_precondition_ok);
    CHECK(bare_report.k == 1);
    CHECK(bare_report.equal);

    auto consts = generate_clone(Domain(2), {c0, c1}, 1);
    auto minimal = find_minimal_base(family_of(consts, 1));
    auto consts_report = equality_base_bound_verify(consts, 1, minimal.base);
    CHECK(consts_report.base_precondition_ok);
    CHECK(consts_report.k == minimal.base.points.size() + 1);
    CHECK(consts_report.equal);
}

TEST_CASE("a non-base is reported as a failed precondition with a certificate") {
    auto neg = table_op(2, 1, {1, 0});
    auto c0 = make_constant(Domain(2), 1, 0);
    auto everything = generate_clone(Domain(2), {neg, c0}, 1);
    auto report = equality_base_bound_verify(everything, 1, base(2, 1, {{0}}));
    CHECK_FALSE(report.base_precondition_ok);
    REQUIRE(report.precondition_violation.has_value());
    const auto& cert = *report.precondition_violation;
    CHECK(cert.f.evaluate({0}) == cert.g.evaluate({0}));
    CHECK(cert.f.evaluate(cert.differ_at) != cert.g.evaluate(cert.differ_at));
}

TEST_CASE("base projection and powering compute the advertised sets") {
    auto projected = project_base(base(3, 2, {{0, 1}, {2, 2}}));
    CHECK(projected.arity == 1);
    CHECK(projected.points == std::set<Tuple>{{0}, {2}});
    CHECK(project_base(base(3, 2, {})).points.empty());

    auto powered = power_base(base(2, 1, {{0}, {1}}), 2);
    CHECK(powered.arity == 2);
    CHECK(powered.points == std::set<Tuple>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(power_base(base(2, 1, {}), 3).points.empty());

    CHECK_THROWS_AS(power_base(base(2, 2, {{0, 0}}), 2), ContractViolation);
    CHECK_THROWS_AS(power_base(base(2, 1, {{0}}), 0), ContractViolation);
}

TEST_CASE("projection and power verifiers pass on constantive clones") {
    std::mt19937_64 rng(171717);
    for (int trial = 0; trial < 15; ++trial) {
        std::uint32_t size = 2 + trial % 2;
        Domain domain(size);
        std::vector<Operation> gens;
        for (Value v = 0; v < size; ++v) gens.push_back(make_constant(domain, 1, v));
        for (std::uint64_t i = 0, n = rng() % 3; i < n; ++i)
            gens.push_back(random_operation(domain, 1 + rng() % 2, rng));

        auto clone = generate_clone(domain, gens, 2);
        auto unary_base = find_minimal_base(family_of(clone, 1)).base;

        auto power_report = verify_power_base(clone, unary_base, 2);
        CHECK(power_report.constantive);
        CHECK(power_report.premise_ok);
        CHECK(power_report.power_ok);

        auto projected_report = verify_projected_base(clone, 2, power_report.power);
        CHECK(projected_report.premise_ok);
        CHECK(projected_report.projected_ok);
    }
}

TEST_CASE("without constants the power construction demonstrably fails") {
    auto bare = generate_clone(Domain(2), {}, 2);
    auto report = verify_power_base(bare, base(2, 1, {{0}}), 2);
    CHECK_FALSE(report.constantive);
    CHECK(report.premise_ok);  // the unary part is just the identity
    CHECK_FALSE(report.power_ok);
    REQUIRE(report.failure.has_value());
    const auto& cert = *report.failure;
    CHECK(cert.f.evaluate(cert.differ_at) != cert.g.evaluate(cert.differ_at));
    for (const auto& point : report.power.points)
        CHECK(cert.f.evaluate(point) == cert.g.evaluate(point));
}

TEST_CASE("integer polynomial witnesses match the worked examples") {
    auto pair = integral_domain_witness({0, 1});
    CHECK(pair.coefficients == std::vector<BigInt>{0, -1, 1});
    CHECK(pair.evaluation_point == 2);
    CHECK(pair.value == 2);

    auto empty = integral_domain_witness({});
    CHECK(empty.coefficients == std::vector<BigInt>{1});
    CHECK(empty.evaluation_point == 1);
    CHECK(empty.value == 1);

    auto cubic = integral_domain_witness({-1, 0, 1});
    CHECK(cubic.coefficients == std::vector<BigInt>{0, -1, 0, 1});
    CHECK(cubic.evaluation_point == 2);
    CHECK(cubic.value == 6);

    auto dup = integral_domain_witness({2, 2});
    CHECK(dup.roots == std::vector<long long>{2});
    CHECK(dup.coefficients == std::vector<BigInt>{-2, 1});
}

TEST_CASE("witness polynomials vanish exactly on their roots") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> roots;
        for (std::uint64_t i = 0, n = rng() % 13; i < n; ++i)
            roots.push_back(static_cast<long long>(rng() % 101) - 50);

        auto witness = integral_domain_witness(roots);
        CHECK(witness.value != 0);
        CHECK(evaluate_polynomial(witness.coefficients, witness.evaluation_point) ==
              witness.value);
        for (auto root : roots)
            CHECK(evaluate_polynomial(witness.coefficients, BigInt(root)) == 0);

        // Horner evaluation against the naive power sum.
        BigInt x = 7, naive = 0, power = 1;
        for (const auto& c : witness.coefficients) {
            naive += c * power;
            power *= x;
        }
        CHECK(evaluate_polynomial(witness.coefficients, x) == naive);
    }
}
