#include <vector>

#include <benchmark/benchmark.h>

#include "clonelab/clone_engine.hpp"
#include "clonelab/finite_algebra.hpp"
#include "clonelab/galois.hpp"

using namespace clonelab;

namespace {

RelationFamily chain_order(std::uint32_t size) {
    std::set<Tuple> tuples;
    for (Value a = 0; a < size; ++a)
        for (Value b = a; b < size; ++b) tuples.insert({a, b});
    return RelationFamily{Domain(size), {Relation(Domain(size), 2, std::move(tuples))}, false};
}

FunctionFamily all_unary(std::uint32_t size) {
    FunctionFamily family{Domain(size), 1, {}, false};
    std::vector<Value> table(size, 0);
    while (true) {
        family.members.insert(Operation(Domain(size), 1, table));
        std::uint32_t pos = 0;
        while (pos < size && ++table[pos] == size) table[pos++] = 0;
        if (pos == size) break;
    }
    return family;
}

}  // namespace

static void BM_PolymorphismsOfChain(benchmark::State& state) {
    const auto m = std::uint32_t(state.range(0));
    auto order = chain_order(2);
    for (auto _ : state) {
        auto family = polymorphisms(order, m);
        benchmark::DoNotOptimize(family.members.size());
    }
}
BENCHMARK(BM_PolymorphismsOfChain)->Arg(1)->Arg(2)->Arg(3);

static void BM_InvariantRelations(benchmark::State& state) {
    const auto k = std::uint32_t(state.range(0));
    std::vector<Operation> ops{Operation(Domain(2), 1, {1, 0})};
    for (auto _ : state) {
        auto family = invariant_relations(ops, Domain(2), k);
        benchmark::DoNotOptimize(family.members.size());
    }
}
BENCHMARK(BM_InvariantRelations)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

static void BM_LoKFamilyOfConstants(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    FunctionFamily consts{Domain(size), 1, {}, false};
    for (Value v = 0; v < size; ++v) consts.members.insert(make_constant(Domain(size), 1, v));
    for (auto _ : state) {
        auto closure = lo_k_family(consts, 1);
        benchmark::DoNotOptimize(closure.members.size());
    }
}
BENCHMARK(BM_LoKFamilyOfConstants)->Arg(2)->Arg(3);

static void BM_CompactnessScan(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    auto family = all_unary(size);
    for (auto _ : state) benchmark::DoNotOptimize(compactness_scan(family));
}
BENCHMARK(BM_CompactnessScan)->Arg(2)->Arg(3);

static void BM_LocalInterpolationCrossCheck(benchmark::State& state) {
    auto clone = generate_clone(Domain(2), {Operation(Domain(2), 1, {1, 0})}, 2);
    for (auto _ : state) {
        auto report = local_interpolation_check(clone, 2, 2);
        benchmark::DoNotOptimize(report.equal);
    }
}
BENCHMARK(BM_LocalInterpolationCrossCheck);

BENCHMARK_MAIN();
