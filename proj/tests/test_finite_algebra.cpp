#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "clonelab/errors.hpp"
#include "clonelab/finite_algebra.hpp"

using namespace clonelab;

namespace {

Operation table_op(std::uint32_t size, std::uint32_t arity, std::vector<Value> table) {
    return Operation(Domain(size), arity, std::move(table));
}

Relation tuple_rel(std::uint32_t size, std::uint32_t arity, std::set<Tuple> tuples) {
    return Relation(Domain(size), arity, std::move(tuples));
}

}  // namespace

TEST_CASE("checked_pow computes small powers and reports overflow") {
    CHECK(checked_pow(2, 10) == 1024);
    CHECK(checked_pow(3, 0) == 1);
    CHECK(checked_pow(0, 0) == 1);
    CHECK(checked_pow(1, 64) == 1);
    CHECK_FALSE(checked_pow(10, 30).has_value());
    CHECK_FALSE(checked_pow(2, 64).has_value());
}

TEST_CASE("tuple index enumerates lexicographically, last coordinate fastest") {
    TupleIndex index(Domain(2), 2);
    REQUIRE(index.count() == 4);
    CHECK(index.decode(0) == Tuple{0, 0});
    CHECK(index.decode(1) == Tuple{0, 1});
    CHECK(index.decode(2) == Tuple{1, 0});
    CHECK(index.decode(3) == Tuple{1, 1});

    Tuple t{0, 0};
    CHECK(index.next(t));
    CHECK(t == Tuple{0, 1});
    CHECK(index.next(t));
    CHECK(index.next(t));
    CHECK(t == Tuple{1, 1});
    CHECK_FALSE(index.next(t));
}

TEST_CASE("encode and decode are mutually inverse") {
    for (std::uint32_t size = 1; size <= 3; ++size) {
        for (std::uint32_t arity = 1; arity <= 3; ++arity) {
            TupleIndex index(Domain(size), arity);
            for (std::uint64_t code = 0; code < index.count(); ++code)
                CHECK(index.encode(index.decode(code)) == code);
        }
    }
}

TEST_CASE("projections and constants realize their defining tables") {
    CHECK(make_projection(Domain(2), 2, 2).evaluate({0, 1}) == 1);
    CHECK(make_projection(Domain(2), 2, 1).evaluate({0, 1}) == 0);
    CHECK(make_constant(Domain(3), 1, 2).evaluate({0}) == 2);
    CHECK(make_projection(Domain(3), 1, 1).table() == std::vector<Value>{0, 1, 2});

    CHECK_THROWS_AS(make_projection(Domain(2), 2, 3), ContractViolation);
    CHECK_THROWS_AS(make_projection(Domain(2), 2, 0), ContractViolation);
    CHECK_THROWS_AS(make_constant(Domain(2), 1, 2), ContractViolation);
}

TEST_CASE("preservation matches the hand-checked examples") {
    auto leq = tuple_rel(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    auto min2 = table_op(2, 2, {0, 0, 0, 1});
    CHECK(preserves(min2, leq));

    auto neg = table_op(2, 1, {1, 0});
    auto equality = tuple_rel(2, 2, {{0, 0}, {1, 1}});
    CHECK(preserves(neg, equality));

    auto c1 = table_op(2, 1, {1, 1});
    auto zero_only = tuple_rel(2, 1, {{0}});
    CHECK_FALSE(preserves(c1, zero_only));
}

TEST_CASE("equality, full, and empty relations are preserved by every operation") {
    std::mt19937_64 rng(20240817);
    for (std::uint32_t size = 2; size <= 3; ++size) {
        Domain domain(size);
        std::set<Tuple> diagonal, full;
        for (Value v = 0; v < size; ++v) diagonal.insert({v, v});
        TupleIndex pairs(domain, 2);
        for (std::uint64_t code = 0; code < pairs.count(); ++code) full.insert(pairs.decode(code));

        Relation delta(domain, 2, diagonal);
        Relation everything(domain, 2, full);
        Relation empty(domain, 2, {});
        for (int trial = 0; trial < 20; ++trial) {
            auto op = random_operation(domain, 1 + trial % 2, rng);
            CHECK(preserves(op, delta));
            CHECK(preserves(op, everything));
            CHECK(preserves(op, empty));
        }
    }
}

TEST_CASE("projections preserve arbitrary relations") {
    std::mt19937_64 rng(7);
    Domain domain(3);
    TupleIndex pairs(domain, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::set<Tuple> tuples;
        for (std::uint64_t code = 0; code < pairs.count(); ++code)
            if (rng() % 2) tuples.insert(pairs.decode(code));
        Relation rel(domain, 2, tuples);
        for (std::uint32_t j = 1; j <= 2; ++j) CHECK(preserves(make_projection(domain, 2, j), rel));
    }
}

TEST_CASE("random operations are deterministic per seed and in range") {
    std::mt19937_64 a(42), b(42), c(43);
    auto first = random_operation(Domain(3), 2, a);
    auto second = random_operation(Domain(3), 2, b);
    auto third = random_operation(Domain(3), 2, c);
    CHECK(first == second);
    CHECK(first.table().size() == 9);
    CHECK_FALSE(first == third);  // overwhelmingly likely; fixed seeds make it certain
    for (auto v : first.table()) CHECK(v < 3);
}

TEST_CASE("operation evaluation agrees between tuple and encoded forms") {
    auto op = table_op(2, 2, {0, 1, 1, 0});
    TupleIndex index(Domain(2), 2);
    for (std::uint64_t code = 0; code < index.count(); ++code)
        CHECK(op.evaluate(index.decode(code)) == op.evaluate_encoded(code));
    CHECK_THROWS_AS(op.evaluate({0}), ContractViolation);
    CHECK_THROWS_AS(op.evaluate({0, 2}), ContractViolation);
}

TEST_CASE("parsing reads operations and relations") {
    auto alg = parse_algebra("domain 2\nop neg 1 : 1 0\n");
    CHECK(alg.domain.size() == 2);
    CHECK(alg.operation("neg").table() == std::vector<Value>{1, 0});

    auto with_rel = parse_algebra("domain 2\nrel leq 2 : (0,0) (0,1) (1,1)\n");
    CHECK(with_rel.relation("leq").tuples().size() == 3);
    CHECK(with_rel.relation("leq").tuples().count({0, 1}) == 1);
}

TEST_CASE("parsing tolerates comments, blank lines, and spacing") {
    auto alg = parse_algebra(
        "# header comment\n"
        "domain 3\n"
        "\n"
        "op f 1 : 2 1 0   # trailing comment\n"
        "rel r 2 : ( 0 , 1 )  (2,2)\n");
    CHECK(alg.operation("f").table() == std::vector<Value>{2, 1, 0});
    CHECK(alg.relation("r").tuples() == std::set<Tuple>{{0, 1}, {2, 2}});
}

TEST_CASE("serialization round-trips") {
    Algebra alg;
    alg.domain = Domain(3);
    alg.operations.emplace_back("f", table_op(3, 1, {2, 0, 1}));
    alg.operations.emplace_back("m", table_op(3, 2, {0, 0, 0, 0, 1, 1, 0, 1, 2}));
    alg.relations.emplace_back("r", tuple_rel(3, 2, {{0, 1}, {1, 2}}));
    alg.relations.emplace_back("empty", tuple_rel(3, 1, {}));
    CHECK(parse_algebra(serialize_algebra(alg)) == alg);
}

TEST_CASE("parse errors carry line numbers and reject bad shapes") {
    CHECK_THROWS_WITH_AS(parse_algebra("domain 2\nop f 2 : 0 1 2\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_algebra("op f 1 : 0 0\n"), ParseError);           // no domain yet
    CHECK_THROWS_AS(parse_algebra("domain 2\nop f 1 : 0 2\n"), ParseError); // value out of range
    CHECK_THROWS_AS(parse_algebra("domain 0\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("domain 2\ndomain 2\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("domain 2\nrel r 2 : (0,1\n"), ParseError);    // unterminated
    CHECK_THROWS_AS(parse_algebra("domain 2\nrel r 2 : (0)\n"), ParseError);     // arity mismatch
    CHECK_THROWS_AS(parse_algebra("domain 2\nrel r 2 : (0,2)\n"), ParseError);   // range
    CHECK_THROWS_AS(parse_algebra("domain 2\nbogus line\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("domain two\n"), ParseError);
}

TEST_CASE("parse limits cap the table size") {
    ParseLimits tight;
    tight.max_table_entries = 4;
    CHECK_THROWS_AS(parse_algebra("domain 3\nop f 2 : 0 0 0 0 0 0 0 0 0\n", tight), CapExceeded);
    CHECK_NOTHROW(parse_algebra("domain 2\nop f 2 : 0 0 0 0\n", tight));
}

TEST_CASE("relations and operations order deterministically by table") {
    auto a = table_op(2, 1, {0, 0});
    auto b = table_op(2, 1, {0, 1});
    CHECK(a < b);
    std::set<Operation> ops{b, a, a};
    CHECK(ops.size() == 2);
    CHECK(*ops.begin() == a);
}
