#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "gtl/verify.hpp"

namespace {

const gtl::ArcSystem& fixture(const std::string& name)
{
    static std::map<std::string, gtl::ArcSystem> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, gtl::ArcSystem::load(std::string(GTL_FIXTURE_DIR) + "/" + name + ".json")).first;
    return it->second;
}

const char* fixture_name(int i)
{
    static const char* names[] = {"T1", "S3", "G2"};
    return names[i];
}

// Cold oracle: every iteration starts with an empty memo.
void BM_OracleCountCold(benchmark::State& state)
{
    const auto& sys = fixture(fixture_name(static_cast<int>(state.range(0))));
    gtl::SequenceBounds b{5, 2, false, 3};
    const auto seqs = gtl::collect_sequences(sys, b);
    for (auto _ : state) {
        gtl::CuttingOracle oracle(sys);
        std::int64_t total = 0;
        for (const auto& s : seqs) total += oracle.count(s);
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
    state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OracleCountCold)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_MuK(benchmark::State& state)
{
    const auto& sys = fixture(fixture_name(static_cast<int>(state.range(0))));
    gtl::CuttingOracle oracle(sys);
    const auto seqs = gtl::collect_sequences(sys, {4, 3, true, 2});
    for (auto _ : state)
        for (const auto& s : seqs) benchmark::DoNotOptimize(gtl::mu_k(oracle, s));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
    state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MuK)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AInfinityDefect(benchmark::State& state)
{
    const auto& sys = fixture("S3");
    gtl::CuttingOracle oracle(sys);
    const auto seqs = gtl::collect_sequences(sys, {static_cast<int>(state.range(0)), 2, true, 1});
    for (auto _ : state)
        for (const auto& s : seqs) benchmark::DoNotOptimize(gtl::a_infinity_defect(oracle, s));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
}
BENCHMARK(BM_AInfinityDefect)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_NuEvenGarages(benchmark::State& state)
{
    const auto& sys = fixture(fixture_name(static_cast<int>(state.range(0))));
    gtl::CuttingOracle oracle(sys);
    const auto nu = gtl::nu_even(oracle, 0, 1, gtl::InputScalars::uniform(sys, 0));
    gtl::GarageSweep sweep;
    sweep.max_offsets = 4;
    const auto seqs = gtl::parking_garage_sequences(sys, 0, 1, sweep);
    for (auto _ : state)
        for (const auto& s : seqs) benchmark::DoNotOptimize(nu->eval(s));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
    state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NuEvenGarages)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_DifferentialOdd(benchmark::State& state)
{
    const auto& sys = fixture("T1");
    gtl::CuttingOracle oracle(sys);
    gtl::MuCochain mu(oracle);
    const auto nu = gtl::nu_odd(oracle, 0, 1);
    const auto seqs = gtl::collect_sequences(sys, {3, 6, true, 1});
    for (auto _ : state)
        for (const auto& s : seqs) benchmark::DoNotOptimize(gtl::differential(mu, *nu, s));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
}
BENCHMARK(BM_DifferentialOdd)->Unit(benchmark::kMillisecond);

void BM_EnumerateSequences(benchmark::State& state)
{
    const auto& sys = fixture("G2");
    gtl::SequenceBounds b{static_cast<int>(state.range(0)), 4, true, 0};
    for (auto _ : state) {
        std::uint64_t n = 0;
        gtl::enumerate_sequences(sys, b, [&](std::span<const gtl::Angle>) { ++n; return true; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_EnumerateSequences)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CatalogBuild(benchmark::State& state)
{
    const auto& sys = fixture("S3");
    const int faces = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gtl::DiskCatalog::build(sys, {faces, 8, faces}).disks().size());
}
BENCHMARK(BM_CatalogBuild)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
