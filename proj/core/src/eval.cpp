#include "lingaff/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "lingaff/error.hpp"
#include "lingaff/rng.hpp"

namespace lingaff {

namespace {

constexpr std::uint64_t kSplitStream = 0x33;
constexpr std::uint64_t kRunStream = 0x44;

}  // namespace

SplitSpec stratified_split(std::span<const int> targets, double fraction, std::uint64_t seed) {
    if (targets.empty()) throw ArgumentError("stratified_split: no rows");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ArgumentError("stratified_split: fraction must lie strictly between 0 and 1");

    // class -> row indices, ascending; selection therefore depends only on
    // each row's rank within its class, not on global row order
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < targets.size(); ++i)
        by_class[targets[i]].push_back(static_cast<int>(i));

    SplitSpec split;
    split.fraction = fraction;
    split.seed = seed;
    for (auto& [cls, rows] : by_class) {
        if (rows.size() < 2)
            throw ArgumentError("stratified_split: class " + std::to_string(cls) +
                                " has a single member");
        const auto n_c = static_cast<double>(rows.size());
        auto test_count =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((1.0 - fraction) * n_c)));
        test_count = std::min(test_count, rows.size() - 1);  // keep a train member per class

        Pcg32 rng(derive_seed(seed, kSplitStream, static_cast<std::uint64_t>(cls) + 1));
        shuffle(std::span<int>(rows), rng);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i < test_count)
                split.test_rows.push_back(rows[i]);
            else
                split.train_rows.push_back(rows[i]);
        }
    }
    std::sort(split.train_rows.begin(), split.train_rows.end());
    std::sort(split.test_rows.begin(), split.test_rows.end());
    return split;
}

double balanced_accuracy(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw ArgumentError("balanced_accuracy: length mismatch");
    if (truth.empty()) throw ArgumentError("balanced_accuracy: empty input");

    std::map<int, std::pair<long, long>> per_class;  // class -> (correct, total)
    for (std::size_t i = 0; i < truth.size(); ++i) {
        auto& [correct, total] = per_class[truth[i]];
        ++total;
        if (predicted[i] == truth[i]) ++correct;
    }
    double recall_sum = 0.0;
    for (const auto& [cls, counts] : per_class)
        recall_sum += static_cast<double>(counts.first) / static_cast<double>(counts.second);
    return recall_sum / static_cast<double>(per_class.size());
}

AggregateStats aggregate(std::span<const double> scores) {
    if (scores.empty()) throw ArgumentError("aggregate: no scores");
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());

    const auto quantile = [&sorted](double p) {
        const double h = static_cast<double>(sorted.size() - 1) * p;
        const auto lo = static_cast<std::size_t>(h);
        if (lo + 1 >= sorted.size()) return sorted.back();
        const double frac = h - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };

    AggregateStats stats;
    stats.min = sorted.front();
    stats.max = sorted.back();
    stats.q25 = quantile(0.25);
    stats.q75 = quantile(0.75);

    double sum = 0.0;
    for (const double s : sorted) sum += s;
    stats.mean = sum / static_cast<double>(sorted.size());

    if (sorted.size() > 1) {
        double ss = 0.0;
        for (const double s : sorted) ss += (s - stats.mean) * (s - stats.mean);
        stats.sd = std::sqrt(ss / static_cast<double>(sorted.size() - 1));
    }
    return stats;
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
    return derive_seed(base_seed, kRunStream, static_cast<std::uint64_t>(run_index) + 1);
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::baseline ? "baseline" : "mlp";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "baseline") return ModelKind::baseline;
    if (name == "mlp") return ModelKind::mlp;
    throw ArgumentError("unknown model kind \"" + name + "\" (expected baseline or mlp)");
}

namespace {

RunResult single_run(const ModelData& data, ModelKind kind, const TrainConfig& config,
                     std::uint64_t seed) {
    const auto& ds = data.dataset;
    const SplitSpec split = stratified_split(ds.targets, 0.8, seed);

    RunResult result;
    result.seed = seed;

    std::vector<int> truth;
    truth.reserve(split.test_rows.size());
    for (const int row : split.test_rows) truth.push_back(ds.targets[static_cast<std::size_t>(row)]);

    std::vector<int> predicted;
    predicted.reserve(split.test_rows.size());

    if (kind == ModelKind::baseline) {
        if (data.profiles.size() != static_cast<std::size_t>(ds.rows()))
            throw ArgumentError("baseline run: missing skeleton profiles");
        std::vector<SkeletonProfile> training;
        std::vector<std::string> training_families;
        training.reserve(split.train_rows.size());
        for (const int row : split.train_rows) {
            training.push_back(data.profiles[static_cast<std::size_t>(row)]);
            training_families.push_back(
                ds.families[static_cast<std::size_t>(ds.targets[static_cast<std::size_t>(row)])]);
        }
        for (const int row : split.test_rows) {
            const auto decision = classify_baseline(data.profiles[static_cast<std::size_t>(row)],
                                                    training, training_families);
            const auto it = std::find(ds.families.begin(), ds.families.end(), decision.family);
            predicted.push_back(static_cast<int>(it - ds.families.begin()));
            result.predictions.emplace_back(ds.languages[static_cast<std::size_t>(row)],
                                            decision.family);
        }
    } else {
        const EncodedDataset train_ds = subset_dataset(ds, split.train_rows);
        const EncodedDataset test_ds = subset_dataset(ds, split.test_rows);
        TrainConfig run_config = config;
        run_config.seed = seed;
        const TrainedModel model = train(train_ds, test_ds, run_config);
        predicted = predict_classes(model.params, test_ds.vectors);
        for (std::size_t i = 0; i < split.test_rows.size(); ++i)
            result.predictions.emplace_back(
                test_ds.languages[i], ds.families[static_cast<std::size_t>(predicted[i])]);
    }

    result.balanced_accuracy = balanced_accuracy(predicted, truth);
    return result;
}

}  // namespace

void parallel_runs(int n_runs, int jobs, const std::function<void(int)>& fn) {
    if (n_runs < 1) throw ArgumentError("parallel_runs: n_runs must be >= 1");
    if (jobs < 1) jobs = 1;
    if (jobs == 1) {
        for (int i = 0; i < n_runs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_runs));
    std::vector<std::thread> workers;
    const int n_workers = std::min(jobs, n_runs);
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_runs) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
}

MultiSeedResult run_multi_seed(const ModelData& data, ModelKind kind, const TrainConfig& config,
                               int n_runs, std::uint64_t base_seed, int jobs) {
    if (n_runs < 1) throw ArgumentError("run_multi_seed: n_runs must be >= 1");

    MultiSeedResult out;
    out.runs.resize(static_cast<std::size_t>(n_runs));
    parallel_runs(n_runs, jobs, [&](int i) {
        out.runs[static_cast<std::size_t>(i)] =
            single_run(data, kind, config, run_seed(base_seed, i));
    });

    std::vector<double> scores;
    scores.reserve(out.runs.size());
    for (const auto& run : out.runs) scores.push_back(run.balanced_accuracy);
    out.stats = aggregate(scores);
    return out;
}

}  // namespace lingaff
