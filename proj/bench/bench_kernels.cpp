// Serial reference versus OpenMP kernels on a synthetic corpus.
//
//   ./build/bench/kindex_bench --benchmark_filter=Metrics

#include <benchmark/benchmark.h>

#include <random>

#include "kindex/analytics.hpp"
#include "kindex/batch.hpp"

namespace {

using namespace kindex;

CorpusBundle make_corpus(int npubs)
{
    std::mt19937_64 rng(1234);
    const int nauthors = std::max(10, npubs / 8);
    CorpusBundle b;
    b.publications.reserve(static_cast<std::size_t>(npubs));
    for (int i = 0; i < npubs; ++i) {
        PublicationRecord p;
        p.pub_id = "P" + std::to_string(i);
        p.year = 1995 + static_cast<int>(rng() % 28);
        const auto n = 1 + rng() % 6;
        while (p.authors.size() < n) {
            auto a = "a" + std::to_string(rng() % static_cast<unsigned>(nauthors));
            if (!p.has_author(a)) p.authors.push_back(std::move(a));
        }
        p.corresponding.insert(p.authors.front());
        if (rng() % 4) p.fwci = static_cast<double>(rng() % 400) / 100.0;
        b.publications.push_back(std::move(p));
    }
    const int ncites = npubs * 8;
    for (int i = 0; i < ncites; ++i) {
        CitationRecord c;
        c.citing_pub = "S" + std::to_string(rng() % static_cast<unsigned>(ncites / 3 + 1));
        c.cited_pub = b.publications[rng() % b.publications.size()].pub_id;
        c.citing_authors = {"a" + std::to_string(rng() % static_cast<unsigned>(nauthors * 2))};
        c.mention_count = 1 + static_cast<int>(rng() % 3);
        b.citations.push_back(std::move(c));
    }
    return b;
}

void BM_MetricsSerial(benchmark::State& state)
{
    const auto b = make_corpus(static_cast<int>(state.range(0)));
    const CorpusIndex index(b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_all_metrics_serial(index, index.authors(), Config{}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(index.authors().size()));
}

void BM_MetricsParallel(benchmark::State& state)
{
    const auto b = make_corpus(static_cast<int>(state.range(0)));
    const CorpusIndex index(b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_all_metrics(index, index.authors(), Config{}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(index.authors().size()));
}

void BM_YearlySerial(benchmark::State& state)
{
    const auto b = make_corpus(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(yearly_summary_serial(b));
}

void BM_YearlyParallel(benchmark::State& state)
{
    const auto b = make_corpus(static_cast<int>(state.range(0)));
    const CorpusIndex index(b);
    for (auto _ : state) benchmark::DoNotOptimize(yearly_summary(index));
}

}  // namespace

BENCHMARK(BM_MetricsSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MetricsParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_YearlySerial)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_YearlyParallel)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
