#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "clonelab/clone_engine.hpp"
#include "clonelab/finite_algebra.hpp"

using namespace clonelab;

namespace {

Operation cyclic_add(std::uint32_t size) {
    std::vector<Value> table(std::size_t(size) * size);
    for (Value x = 0; x < size; ++x)
        for (Value y = 0; y < size; ++y) table[std::size_t(x) * size + y] = (x + y) % size;
    return Operation(Domain(size), 2, std::move(table));
}

}  // namespace

static void BM_SaturateBinaryFromCyclicAdd(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    for (auto _ : state) {
        auto clone = generate_clone(Domain(size), {cyclic_add(size)}, 2);
        benchmark::DoNotOptimize(clone.members(2).size());
    }
}
BENCHMARK(BM_SaturateBinaryFromCyclicAdd)->Arg(2)->Arg(3)->Arg(4);

static void BM_SaturateEverything(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    for (auto _ : state) {
        auto clone = clone_of_all_operations(Domain(size), 2);
        benchmark::DoNotOptimize(clone.members(2).size());
    }
}
BENCHMARK(BM_SaturateEverything)->Arg(2)->Arg(3);

static void BM_MembershipQuery(benchmark::State& state) {
    auto clone = generate_clone(Domain(3), {cyclic_add(3)}, 2);
    (void)clone.members(2);  // saturate outside the loop
    std::mt19937_64 rng(1);
    std::vector<Operation> probes;
    for (int i = 0; i < 64; ++i) probes.push_back(random_operation(Domain(3), 2, rng));
    std::size_t next = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clone.contains(probes[next]));
        next = (next + 1) % probes.size();
    }
}
BENCHMARK(BM_MembershipQuery);

static void BM_QuasigroupSearch(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    for (auto _ : state) {
        auto clone = clone_of_all_operations(Domain(size), 2);
        auto triple = find_quasigroup_ops(clone);
        benchmark::DoNotOptimize(triple.has_value());
    }
}
BENCHMARK(BM_QuasigroupSearch)->Arg(2)->Arg(3);

static void BM_QuasigroupLawCheck(benchmark::State& state) {
    const auto size = std::uint32_t(state.range(0));
    std::vector<Value> ldiv(std::size_t(size) * size), rdiv(std::size_t(size) * size);
    for (Value x = 0; x < size; ++x)
        for (Value y = 0; y < size; ++y) {
            ldiv[std::size_t(x) * size + y] = (y + size - x) % size;
            rdiv[std::size_t(x) * size + y] = (x + size - y) % size;
        }
    auto dot = cyclic_add(size);
    auto left = Operation(Domain(size), 2, std::move(ldiv));
    auto right = Operation(Domain(size), 2, std::move(rdiv));
    for (auto _ : state) {
        auto check = check_quasigroup(dot, left, right);
        benchmark::DoNotOptimize(check.ok);
    }
}
BENCHMARK(BM_QuasigroupLawCheck)->Arg(3)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
