#pragma once

// The four experiment drivers: model comparison, subgroup holdout, isolate
// probing, and affiliation of a new wordlist. Each returns a result struct
// plus serializers for the report files (results.json, summary.csv).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lingaff/corpus.hpp"
#include "lingaff/encode.hpp"
#include "lingaff/eval.hpp"

namespace lingaff {

/// Dataset plus baseline profiles for a corpus and mode. Baseline profiles
/// are built only when `with_profiles` (baseline requires lexical mode).
ModelData build_model_data(const Corpus& corpus, EncodeMode mode, const ClassMap& map,
                           bool with_profiles);

// ---------------------------------------------------------------------------
// compare

struct CompareEntry {
    ModelKind kind;
    EncodeMode mode;
    MultiSeedResult result;
};

struct CompareResult {
    std::vector<CompareEntry> entries;
};

/// One multi-seed evaluation per requested (kind, mode); baseline entries
/// with a non-lexical mode are an ArgumentError.
CompareResult run_compare(const Corpus& corpus, const ClassMap& map,
                          const std::vector<std::pair<ModelKind, EncodeMode>>& configs,
                          const TrainConfig& config, int n_runs, std::uint64_t base_seed,
                          int jobs = 1);

// ---------------------------------------------------------------------------
// holdout

struct HoldoutSpec {
    std::string family;
    std::vector<LanguageId> held_out;
    int n_runs = 100;
    std::uint64_t base_seed = 0;
};

struct HoldoutRun {
    std::uint64_t seed = 0;
    std::vector<std::pair<LanguageId, std::string>> predictions;
};

struct HoldoutResult {
    std::string family;
    std::vector<std::pair<LanguageId, double>> per_language_rate;
    double overall_accuracy = 0.0;
    bool hygiene_checked = false;  // set after every run passed the membership assertion
    std::vector<HoldoutRun> runs;
};

/// Remove the held-out languages from the corpus entirely, train (or index)
/// on a stratified 80% of the remainder, and predict each held-out language;
/// accuracy is the fraction of (run, language) predictions equal to
/// spec.family. Every run asserts that no held-out language reached the
/// training or monitor split.
HoldoutResult run_holdout(const Corpus& corpus, const ClassMap& map, const HoldoutSpec& spec,
                          ModelKind kind, EncodeMode mode, const TrainConfig& config,
                          int jobs = 1);

// ---------------------------------------------------------------------------
// probe / affiliate

struct ProbeReport {
    LanguageId language;
    int n_runs = 0;
    std::map<std::string, double> proportions;  // family -> share of runs, sums to 1
    std::vector<std::pair<std::string, double>> top3;
    double rest = 0.0;  // 1 - sum of top3
    std::vector<std::pair<std::uint64_t, std::string>> runs;  // (seed, predicted family)
};

/// Exclude `language` from every training and monitor split, predict it once
/// per run, and report the distribution of predicted families.
ProbeReport run_probe(const Corpus& corpus, const ClassMap& map, const LanguageId& language,
                      ModelKind kind, EncodeMode mode, const TrainConfig& config, int n_runs,
                      std::uint64_t base_seed, int jobs = 1);

/// Affiliate a wordlist of one new language, encoded with the training
/// corpus inventories (lexical mode). Unattested concepts encode as zeros; a
/// wordlist with zero in-inventory concepts is an UnclassifiableError.
ProbeReport run_affiliate(const Corpus& corpus, const ClassMap& map,
                          const std::string& new_wordlist_path, ModelKind kind,
                          const TrainConfig& config, int n_runs, std::uint64_t base_seed,
                          int jobs = 1);

// ---------------------------------------------------------------------------
// report serialization
//
// All serializers are pure functions of their inputs (no timestamps), so
// rerunning a command with identical inputs reproduces the files byte for
// byte. `config_echo_json` is a JSON object string echoing the caller's
// flags.

std::string compare_json(const CompareResult& result, const std::string& config_echo_json);
std::string compare_csv(const CompareResult& result);

std::string holdout_json(const HoldoutResult& result, const std::string& config_echo_json);
std::string holdout_csv(const HoldoutResult& result);

std::string probe_json(const ProbeReport& report, const std::string& config_echo_json);
std::string probe_csv(const ProbeReport& report);

/// Serialize a flat string->string map as a JSON object (used for the config
/// echo blocks above).
std::string json_object(const std::vector<std::pair<std::string, std::string>>& fields);

}  // namespace lingaff
