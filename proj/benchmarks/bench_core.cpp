#include <benchmark/benchmark.h>

#include "lingaff/baseline.hpp"
#include "lingaff/encode.hpp"
#include "lingaff/eval.hpp"
#include "lingaff/nnet.hpp"
#include "lingaff/synth.hpp"

namespace {

using namespace lingaff;

SynthConfig bench_config() {
    SynthConfig config;
    config.n_families = 30;
    config.languages_per_family = 8;
    config.n_concepts = 100;
    config.n_features = 195;
    config.p = 0.1;
    config.q = 0.1;
    config.mu = 0.05;
    config.seed = 1;
    return config;
}

const Corpus& bench_corpus() {
    static const Corpus corpus = generate(bench_config());
    return corpus;
}

void BM_EncodeDataset(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    for (auto _ : state) {
        auto ds = encode_dataset(corpus, EncodeMode::combined, default_classmap());
        benchmark::DoNotOptimize(ds.vectors.data());
    }
}
BENCHMARK(BM_EncodeDataset)->Unit(benchmark::kMillisecond);

void BM_BuildProfiles(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    for (auto _ : state) {
        auto profiles = build_profiles(corpus, default_classmap());
        benchmark::DoNotOptimize(profiles.data());
    }
}
BENCHMARK(BM_BuildProfiles)->Unit(benchmark::kMillisecond);

void BM_CountMatches(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    static const auto profiles = build_profiles(corpus, default_classmap());
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& a = profiles[i % profiles.size()];
        const auto& b = profiles[(i * 7 + 1) % profiles.size()];
        benchmark::DoNotOptimize(count_matches(a, b));
        ++i;
    }
}
BENCHMARK(BM_CountMatches);

void BM_ForwardBatch(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    static const auto ds = encode_dataset(corpus, EncodeMode::lexical, default_classmap());
    const auto params =
        init_params<float>(7, ds.width(), static_cast<int>(ds.families.size()));
    for (auto _ : state) {
        auto logits = forward(params, ds.vectors);
        benchmark::DoNotOptimize(logits.data());
    }
}
BENCHMARK(BM_ForwardBatch)->Unit(benchmark::kMillisecond);

void BM_TrainEpochs(benchmark::State& state) {
    const Corpus& corpus = bench_corpus();
    static const auto ds = encode_dataset(corpus, EncodeMode::lexical, default_classmap());
    static const auto split = stratified_split(ds.targets, 0.8, 3);
    static const auto train_ds = subset_dataset(ds, split.train_rows);
    static const auto monitor_ds = subset_dataset(ds, split.test_rows);
    TrainConfig config;
    config.max_epochs = static_cast<int>(state.range(0));
    config.patience = config.max_epochs;
    for (auto _ : state) {
        auto model = train(train_ds, monitor_ds, config);
        benchmark::DoNotOptimize(model.best_score);
    }
}
BENCHMARK(BM_TrainEpochs)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
