#include <set>

#include <benchmark/benchmark.h>

#include "clonelab/countable_universe.hpp"

using namespace clonelab::universe;

static void BM_ComposeClosedForm(benchmark::State& state) {
    auto f = SymbolicUnary::step(40);
    auto g = SymbolicUnary::step(7);
    for (auto _ : state) benchmark::DoNotOptimize(compose(f, g));
}
BENCHMARK(BM_ComposeClosedForm);

static void BM_InterpolateParity(benchmark::State& state) {
    const auto width = Nat(state.range(0));
    std::set<Nat> B;
    for (Nat x = 0; x < width; ++x) B.insert(x * 3);
    for (auto _ : state) benchmark::DoNotOptimize(interpolate_parity(B).interpolant);
}
BENCHMARK(BM_InterpolateParity)->Arg(4)->Arg(64)->Arg(1024);

static void BM_ParityCertificateExhaustive(benchmark::State& state) {
    const auto bound = Nat(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            loc_k_parity_certificate(2, bound, CertificateMode::Exhaustive).cases_checked);
}
BENCHMARK(BM_ParityCertificateExhaustive)->Arg(16)->Arg(64)->Arg(128);

static void BM_ParityCertificateMaxReduction(benchmark::State& state) {
    const auto bound = Nat(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            loc_k_parity_certificate(64, bound, CertificateMode::MaxReduction).cases_checked);
}
BENCHMARK(BM_ParityCertificateMaxReduction)->Arg(64)->Arg(1024)->Arg(8192);

static void BM_NoBaseWitness(benchmark::State& state) {
    const auto width = Nat(state.range(0));
    std::set<Nat> D;
    for (Nat x = 0; x < width; ++x) D.insert(x * 2);
    for (auto _ : state) benchmark::DoNotOptimize(no_finite_base_witness(D).verified);
}
BENCHMARK(BM_NoBaseWitness)->Arg(4)->Arg(64)->Arg(1024);

static void BM_Diagonalize(benchmark::State& state) {
    const auto steps = std::uint64_t(state.range(0));
    for (auto _ : state) {
        auto trace = diagonalize(steps);
        benchmark::DoNotOptimize(trace.limit_matches_parity);
    }
}
BENCHMARK(BM_Diagonalize)->Arg(10)->Arg(50)->Arg(200);

static void BM_AuditTrace(benchmark::State& state) {
    const auto steps = std::uint64_t(state.range(0));
    auto trace = diagonalize(steps);
    auto enumeration = default_enumeration(steps);
    for (auto _ : state) benchmark::DoNotOptimize(audit_trace(trace, enumeration).ok);
}
BENCHMARK(BM_AuditTrace)->Arg(10)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
