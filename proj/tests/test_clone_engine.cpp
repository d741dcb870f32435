#include <optional>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "clonelab/clone_engine.hpp"
#include "clonelab/errors.hpp"
#include "clonelab/finite_algebra.hpp"
#include "clonelab/galois.hpp"

using namespace clonelab;

namespace {

Operation table_op(std::uint32_t size, std::uint32_t arity, std::vector<Value> table) {
    return Operation(Domain(size), arity, std::move(table));
}

// Z_n translations: addition with its two division companions.
Operation mod_add(std::uint32_t n) {
    std::vector<Value> t(n * n);
    for (Value x = 0; x < n; ++x)
        for (Value y = 0; y < n; ++y) t[x * n + y] = (x + y) % n;
    return table_op(n, 2, std::move(t));
}

Operation mod_ldiv(std::uint32_t n) {  // x \ y = y - x
    std::vector<Value> t(n * n);
    for (Value x = 0; x < n; ++x)
        for (Value y = 0; y < n; ++y) t[x * n + y] = (y + n - x) % n;
    return table_op(n, 2, std::move(t));
}

Operation mod_rdiv(std::uint32_t n) {  // x / y = x - y
    std::vector<Value> t(n * n);
    for (Value x = 0; x < n; ++x)
        for (Value y = 0; y < n; ++y) t[x * n + y] = (x + n - y) % n;
    return table_op(n, 2, std::move(t));
}

std::set<Operation> member_set(const CloneRepr& clone, std::uint32_t arity) {
    const auto& members = clone.members(arity);
    return {members.begin(), members.end()};
}

}  // namespace

TEST_CASE("the empty generating set yields projections only") {
    auto clone = generate_clone(Domain(2), {}, 2);
    CHECK(clone.complete(1));
    CHECK(clone.complete(2));
    CHECK(member_set(clone, 1) == std::set<Operation>{make_projection(Domain(2), 1, 1)});
    CHECK(member_set(clone, 2) == std::set<Operation>{make_projection(Domain(2), 2, 1),
                                                      make_projection(Domain(2), 2, 2)});
}

TEST_CASE("unary saturation closes under composition") {
    auto neg = table_op(2, 1, {1, 0});
    auto from_neg = generate_clone(Domain(2), {neg}, 1);
    CHECK(member_set(from_neg, 1) ==
          std::set<Operation>{make_projection(Domain(2), 1, 1), neg});

    auto c0 = make_constant(Domain(2), 1, 0);
    auto from_c0 = generate_clone(Domain(2), {c0}, 1);
    CHECK(member_set(from_c0, 1) ==
          std::set<Operation>{make_projection(Domain(2), 1, 1), c0});
}

TEST_CASE("membership answers by table equality") {
    auto neg = table_op(2, 1, {1, 0});
    auto c0 = make_constant(Domain(2), 1, 0);
    auto clone = generate_clone(Domain(2), {c0}, 1);
    CHECK(clone.contains(make_projection(Domain(2), 1, 1)));
    CHECK(clone.contains(c0));
    CHECK_FALSE(clone.contains(neg));
}

TEST_CASE("a truncating budget is reported, never silently answered") {
    auto neg = table_op(2, 1, {1, 0});
    auto clone = generate_clone(Domain(2), {neg}, 1, SaturationBudget{1});
    CHECK_FALSE(clone.complete(1));
    CHECK(clone.members_unchecked(1).size() <= 1);
    CHECK_THROWS_AS((void)clone.members(1), IncompleteSaturation);
    CHECK_THROWS_AS((void)clone.contains(neg), IncompleteSaturation);
}

TEST_CASE("requests outside the saturated arity range are rejected") {
    auto clone = generate_clone(Domain(2), {}, 1);
    CHECK_THROWS_AS((void)clone.members(2), ContractViolation);
    CHECK_THROWS_AS((void)clone.members(0), ContractViolation);
    CHECK_THROWS_AS((void)clone.contains(make_projection(Domain(2), 2, 1)), ContractViolation);
}

TEST_CASE("the full clone factory enumerates every table") {
    auto everything = clone_of_all_operations(Domain(2), 2);
    CHECK(everything.members(1).size() == 4);
    CHECK(everything.members(2).size() == 16);
    CHECK(is_constantive(everything));
}

TEST_CASE("constantive means every unary constant is present") {
    Domain d3(3);
    std::vector<Operation> constants;
    for (Value v = 0; v < 3; ++v) constants.push_back(make_constant(d3, 1, v));
    CHECK(is_constantive(generate_clone(d3, constants, 1)));
    CHECK_FALSE(is_constantive(generate_clone(d3, {}, 1)));
    CHECK_FALSE(is_constantive(generate_clone(d3, {constants[0], constants[2]}, 1)));
}

TEST_CASE("regenerating from a complete clone's members is idempotent") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 6; ++trial) {
        // Regeneration feeds every member back in as a generator, so keep
        // the clones small: binary generators on two elements, unary on three
        // (a random binary table on three elements tends to generate all
        // 3^9 binary operations).
        const bool two = trial % 2 == 0;
        Domain domain(two ? 2 : 3);
        std::vector<Operation> generators;
        for (std::uint64_t i = 0; i < 1 + rng() % 2; ++i)
            generators.push_back(random_operation(domain, two ? 1 + rng() % 2 : 1, rng));

        auto clone = generate_clone(domain, generators, 2);
        std::vector<Operation> members;
        for (std::uint32_t m = 1; m <= 2; ++m)
            members.insert(members.end(), clone.members(m).begin(), clone.members(m).end());

        auto again = generate_clone(domain, members, 2);
        CHECK(member_set(again, 1) == member_set(clone, 1));
        CHECK(member_set(again, 2) == member_set(clone, 2));
    }
}

TEST_CASE("complete members preserve every invariant of the generators") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 8; ++trial) {
        Domain domain(2 + trial % 2);
        std::vector<Operation> generators;
        for (std::uint64_t i = 0; i < 1 + rng() % 2; ++i)
            generators.push_back(random_operation(domain, 1 + rng() % 2, rng));
        auto clone = generate_clone(domain, generators, 2);

        for (std::uint32_t k = 1; k <= 2; ++k) {
            auto invariants = invariant_relations(generators, domain, k);
            REQUIRE_FALSE(invariants.sampled);
            for (std::uint32_t m = 1; m <= 2; ++m)
                for (const auto& op : clone.members(m))
                    for (const auto& rel : invariants.members) CHECK(preserves(op, rel));
        }
    }
}

TEST_CASE("group translation triples satisfy the cancellation laws") {
    for (std::uint32_t n : {3u, 4u, 5u}) {
        auto check = check_quasigroup(mod_add(n), mod_ldiv(n), mod_rdiv(n));
        CHECK(check.ok);
        CHECK(check.failed_law.empty());
    }
}

TEST_CASE("min admits no division companions") {
    auto min2 = table_op(2, 2, {0, 0, 0, 1});
    for (std::uint32_t ltable = 0; ltable < 16; ++ltable) {
        for (std::uint32_t rtable = 0; rtable < 16; ++rtable) {
            std::vector<Value> lt(4), rt(4);
            for (std::uint32_t i = 0; i < 4; ++i) {
                lt[i] = (ltable >> i) & 1;
                rt[i] = (rtable >> i) & 1;
            }
            auto check = check_quasigroup(min2, table_op(2, 2, lt), table_op(2, 2, rt));
            REQUIRE_FALSE(check.ok);
            REQUIRE_FALSE(check.failed_law.empty());
            REQUIRE(check.point.size() == 2);
        }
    }
}

TEST_CASE("quasigroup failure certificates re-verify by evaluation") {
    auto dot = table_op(2, 2, {0, 0, 0, 1});
    auto ldiv = table_op(2, 2, {0, 1, 0, 1});
    auto rdiv = table_op(2, 2, {0, 1, 0, 1});
    auto check = check_quasigroup(dot, ldiv, rdiv);
    REQUIRE_FALSE(check.ok);
    const Value x = check.point[0], y = check.point[1];

    auto holds = [&](const std::string& law) {
        if (law == "x\\(x*y) = y") return ldiv.evaluate({x, dot.evaluate({x, y})}) == y;
        if (law == "x*(x\\y) = y") return dot.evaluate({x, ldiv.evaluate({x, y})}) == y;
        if (law == "(x*y)/y = x") return rdiv.evaluate({dot.evaluate({x, y}), y}) == x;
        if (law == "(x/y)*y = x") return dot.evaluate({rdiv.evaluate({x, y}), y}) == x;
        FAIL("unrecognized law label: ", law);
        return true;
    };
    CHECK_FALSE(holds(check.failed_law));
}

TEST_CASE("quasigroup checking demands binary tables") {
    auto unary = table_op(2, 1, {0, 1});
    auto dot = mod_add(2);
    CHECK_THROWS_AS(check_quasigroup(unary, dot, dot), ContractViolation);
    CHECK_THROWS_AS(check_quasigroup(dot, unary, dot), ContractViolation);
    CHECK_THROWS_AS(check_quasigroup(dot, dot, unary), ContractViolation);
}

TEST_CASE("latin squares are exactly the doubly cancellative tables") {
    CHECK(is_latin_square(mod_add(3)));
    CHECK(is_latin_square(mod_ldiv(4)));
    CHECK(is_latin_square(table_op(2, 2, {0, 1, 1, 0})));
    CHECK_FALSE(is_latin_square(table_op(2, 2, {0, 0, 0, 1})));
    CHECK_FALSE(is_latin_square(table_op(2, 2, {0, 1, 0, 1})));  // columns repeat
}

TEST_CASE("the quasigroup search finds translation triples and rejects projections") {
    auto z3 = generate_clone(Domain(3), {mod_add(3), mod_ldiv(3), mod_rdiv(3)}, 2,
                             SaturationBudget{25'000});
    auto triple = find_quasigroup_ops(z3);
    REQUIRE(triple.has_value());
    CHECK(check_quasigroup(triple->dot, triple->ldiv, triple->rdiv).ok);
    CHECK(is_latin_square(triple->dot));
    CHECK(z3.contains(triple->dot));
    CHECK(z3.contains(triple->ldiv));
    CHECK(z3.contains(triple->rdiv));

    auto bare = generate_clone(Domain(2), {}, 2);
    CHECK_FALSE(find_quasigroup_ops(bare).has_value());

    auto everything = clone_of_all_operations(Domain(3), 2);
    auto found = find_quasigroup_ops(everything);
    REQUIRE(found.has_value());
    CHECK(check_quasigroup(found->dot, found->ldiv, found->rdiv).ok);
}

TEST_CASE("cancellation transfers from the group triple to unary compositions") {
    // For every r, s, f on Z_3: if r(x)\(s(x)*f(x)) = f(x) at every point,
    // then r = s. Brute force over all 27^3 table combinations, tracking
    // how many satisfy the premise.
    auto dot = mod_add(3);
    auto ldiv = mod_ldiv(3);
    auto digit = [](std::uint32_t code, Value x) -> Value {
        for (Value i = 0; i < x; ++i) code /= 3;
        return code % 3;
    };
    std::uint64_t premise_holders = 0;
    for (std::uint32_t r = 0; r < 27; ++r)
        for (std::uint32_t s = 0; s < 27; ++s)
            for (std::uint32_t f = 0; f < 27; ++f) {
                bool premise = true;
                for (Value x = 0; x < 3 && premise; ++x) {
                    Value prod = dot.evaluate({digit(s, x), digit(f, x)});
                    premise = ldiv.evaluate({digit(r, x), prod}) == digit(f, x);
                }
                if (premise) {
                    ++premise_holders;
                    CHECK(r == s);
                }
            }
    CHECK(premise_holders == 27 * 27);  // each (r, f) pair forces s = r
}

TEST_CASE("generators of mixed arity require a sufficient arity cap") {
    auto clone = generate_clone(Domain(2), {mod_add(2)}, 2);
    CHECK(member_set(clone, 2).count(mod_add(2)) == 1);
    CHECK_THROWS_AS(generate_clone(Domain(2), {mod_add(2)}, 1), ContractViolation);
}

TEST_CASE("generators must share the clone's domain") {
    CHECK_THROWS_AS(generate_clone(Domain(2), {mod_add(3)}, 2), ContractViolation);
}
