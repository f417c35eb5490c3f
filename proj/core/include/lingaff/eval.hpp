#pragma once

// Stratified splitting, balanced accuracy, and multi-seed run aggregation.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lingaff/baseline.hpp"
#include "lingaff/encode.hpp"
#include "lingaff/nnet.hpp"

namespace lingaff {

/// Execute fn(run_index) for run indices [0, n_runs) on at most `jobs`
/// threads. Results must be written to per-index slots by the callable; the
/// lowest-index exception, if any, is rethrown after all workers finish.
void parallel_runs(int n_runs, int jobs, const std::function<void(int)>& fn);

struct SplitSpec {
    std::vector<int> train_rows;
    std::vector<int> test_rows;
    double fraction = 0.8;
    std::uint64_t seed = 0;
};

/// Per class c with n_c members the test set receives max(1,
/// round((1-fraction)*n_c)) members, chosen by a seeded shuffle of the
/// class's row indices (per-class derived stream); the rest train. A class
/// with a single member is an ArgumentError naming the class.
SplitSpec stratified_split(std::span<const int> targets, double fraction, std::uint64_t seed);

/// Mean per-class recall over the classes present in `truth`.
double balanced_accuracy(std::span<const int> predicted, std::span<const int> truth);

struct RunResult {
    std::uint64_t seed = 0;
    double balanced_accuracy = 0.0;
    /// (language, predicted family) for each test-split row.
    std::vector<std::pair<std::string, std::string>> predictions;
};

struct AggregateStats {
    double min = 0, max = 0, q25 = 0, q75 = 0, mean = 0, sd = 0;
};

/// Quartiles by linear interpolation between closest ranks: at probability
/// p over n sorted scores, h = (n-1)p, q = x[floor(h)] + frac(h) *
/// (x[floor(h)+1] - x[floor(h)]). sd is the sample standard deviation
/// (n-1 denominator), 0 for a single run.
AggregateStats aggregate(std::span<const double> scores);

/// Seed of run i under a base seed.
std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

enum class ModelKind { baseline, mlp };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Everything one evaluation run needs: encoded vectors for the network and,
/// for baseline runs, skeleton profiles aligned with the dataset rows.
struct ModelData {
    EncodedDataset dataset;
    std::vector<SkeletonProfile> profiles;  // empty unless baseline runs are wanted
};

struct MultiSeedResult {
    std::vector<RunResult> runs;
    AggregateStats stats;
};

/// Run i splits with seed run_seed(base_seed, i), trains or indexes on the
/// train split, predicts the test split, and scores balanced accuracy.
/// `jobs` bounds parallel runs; results are identical for any jobs value.
MultiSeedResult run_multi_seed(const ModelData& data, ModelKind kind, const TrainConfig& config,
                               int n_runs, std::uint64_t base_seed, int jobs = 1);

}  // namespace lingaff
