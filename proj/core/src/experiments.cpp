#include "lingaff/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lingaff/error.hpp"

namespace lingaff {

ModelData build_model_data(const Corpus& corpus, EncodeMode mode, const ClassMap& map,
                           bool with_profiles) {
    ModelData data;
    data.dataset = encode_dataset(corpus, mode, map);
    if (with_profiles) {
        if (mode != EncodeMode::lexical)
            throw ArgumentError("baseline runs require lexical mode, got " + to_string(mode));
        data.profiles = build_profiles(corpus, map);
    }
    return data;
}

CompareResult run_compare(const Corpus& corpus, const ClassMap& map,
                          const std::vector<std::pair<ModelKind, EncodeMode>>& configs,
                          const TrainConfig& config, int n_runs, std::uint64_t base_seed,
                          int jobs) {
    if (configs.empty()) throw ArgumentError("run_compare: no (model, mode) configurations");

    CompareResult out;
    for (const auto& [kind, mode] : configs) {
        const ModelData data = build_model_data(corpus, mode, map, kind == ModelKind::baseline);
        out.entries.push_back({kind, mode, run_multi_seed(data, kind, config, n_runs, base_seed, jobs)});
    }
    return out;
}

namespace {

Corpus remove_languages(const Corpus& corpus, const std::set<LanguageId>& removed) {
    Corpus out;
    out.concepts = corpus.concepts;
    out.features = corpus.features;
    for (const auto& form : corpus.forms)
        if (!removed.count(form.language)) out.forms.push_back(form);
    for (const auto& value : corpus.values)
        if (!removed.count(value.language)) out.values.push_back(value);
    for (const auto& label : corpus.labels)
        if (!removed.count(label.language)) out.labels.push_back(label);
    return out;
}

struct QueryInputs {
    std::vector<LanguageId> ids;
    std::vector<std::vector<float>> vectors;    // mlp path
    std::vector<SkeletonProfile> profiles;      // baseline path
};

// One prediction per (run, query). Every run asserts that no excluded
// language reached the training or monitor split.
std::vector<HoldoutRun> run_exclusion(const ModelData& data, const QueryInputs& queries,
                                      const std::set<LanguageId>& excluded, ModelKind kind,
                                      const TrainConfig& config, int n_runs,
                                      std::uint64_t base_seed, int jobs) {
    const auto& ds = data.dataset;
    std::vector<HoldoutRun> runs(static_cast<std::size_t>(n_runs));

    parallel_runs(n_runs, jobs, [&](int i) {
        const std::uint64_t seed = run_seed(base_seed, i);
        const SplitSpec split = stratified_split(ds.targets, 0.8, seed);

        const auto assert_clean = [&](const std::vector<int>& rows) {
            for (const int row : rows)
                if (excluded.count(ds.languages[static_cast<std::size_t>(row)]))
                    throw std::logic_error("excluded language " +
                                           ds.languages[static_cast<std::size_t>(row)] +
                                           " reached a training or monitor split");
        };
        assert_clean(split.train_rows);
        assert_clean(split.test_rows);

        HoldoutRun run;
        run.seed = seed;

        if (kind == ModelKind::baseline) {
            std::vector<SkeletonProfile> training;
            std::vector<std::string> training_families;
            training.reserve(split.train_rows.size());
            for (const int row : split.train_rows) {
                training.push_back(data.profiles[static_cast<std::size_t>(row)]);
                training_families.push_back(
                    ds.families[static_cast<std::size_t>(ds.targets[static_cast<std::size_t>(row)])]);
            }
            for (std::size_t qi = 0; qi < queries.ids.size(); ++qi) {
                const auto decision =
                    classify_baseline(queries.profiles[qi], training, training_families);
                run.predictions.emplace_back(queries.ids[qi], decision.family);
            }
        } else {
            const EncodedDataset train_ds = subset_dataset(ds, split.train_rows);
            const EncodedDataset monitor_ds = subset_dataset(ds, split.test_rows);
            TrainConfig run_config = config;
            run_config.seed = seed;
            const TrainedModel model = train(train_ds, monitor_ds, run_config);
            for (std::size_t qi = 0; qi < queries.ids.size(); ++qi) {
                const auto prediction = predict(model, queries.vectors[qi]);
                run.predictions.emplace_back(queries.ids[qi], prediction.family);
            }
        }
        runs[static_cast<std::size_t>(i)] = std::move(run);
    });
    return runs;
}

QueryInputs build_queries(const Corpus& source, const std::vector<LanguageId>& ids,
                          EncodeMode mode, const ClassMap& map, ModelKind kind) {
    QueryInputs queries;
    queries.ids = ids;
    for (const auto& id : ids) {
        if (kind == ModelKind::baseline)
            queries.profiles.push_back(build_profile(source, id, map));
        else
            queries.vectors.push_back(encode_for_dataset(source, id, mode, map));
    }
    return queries;
}

ProbeReport summarize_probe(const LanguageId& language, std::vector<HoldoutRun> runs) {
    ProbeReport report;
    report.language = language;
    report.n_runs = static_cast<int>(runs.size());

    std::map<std::string, int> counts;
    for (const auto& run : runs) {
        counts[run.predictions.at(0).second] += 1;
        report.runs.emplace_back(run.seed, run.predictions.at(0).second);
    }
    for (const auto& [family, count] : counts)
        report.proportions[family] = static_cast<double>(count) / static_cast<double>(report.n_runs);

    std::vector<std::pair<std::string, double>> ranked(report.proportions.begin(),
                                                       report.proportions.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    double top_sum = 0.0;
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) {
        report.top3.push_back(ranked[i]);
        top_sum += ranked[i].second;
    }
    report.rest = 1.0 - top_sum;
    return report;
}

}  // namespace

HoldoutResult run_holdout(const Corpus& corpus, const ClassMap& map, const HoldoutSpec& spec,
                          ModelKind kind, EncodeMode mode, const TrainConfig& config, int jobs) {
    if (spec.held_out.empty()) throw ArgumentError("holdout: no languages to hold out");
    const std::set<LanguageId> excluded(spec.held_out.begin(), spec.held_out.end());
    for (const auto& id : excluded) {
        const auto family = corpus.family_of(id);
        if (!family) throw ArgumentError("holdout: language " + id + " not in corpus");
        if (*family != spec.family)
            throw ArgumentError("holdout: language " + id + " belongs to " + *family + ", not " +
                                spec.family);
    }

    const Corpus reduced = remove_languages(corpus, excluded);
    bool family_survives = false;
    for (const auto& label : reduced.labels)
        if (label.family == spec.family) {
            family_survives = true;
            break;
        }
    if (!family_survives)
        throw ArgumentError("holdout: family " + spec.family +
                            " has no training members after removal");

    const ModelData data = build_model_data(reduced, mode, map, kind == ModelKind::baseline);
    const auto queries = build_queries(corpus, spec.held_out, mode, map, kind);
    auto runs = run_exclusion(data, queries, excluded, kind, config, spec.n_runs, spec.base_seed,
                              jobs);

    HoldoutResult result;
    result.family = spec.family;
    result.hygiene_checked = true;  // run_exclusion asserted every run

    std::map<LanguageId, int> correct;
    long correct_total = 0;
    for (const auto& run : runs)
        for (const auto& [id, predicted] : run.predictions)
            if (predicted == spec.family) {
                ++correct[id];
                ++correct_total;
            }
    for (const auto& id : spec.held_out)
        result.per_language_rate.emplace_back(
            id, static_cast<double>(correct[id]) / static_cast<double>(spec.n_runs));
    result.overall_accuracy = static_cast<double>(correct_total) /
                              (static_cast<double>(spec.n_runs) *
                               static_cast<double>(spec.held_out.size()));
    result.runs = std::move(runs);
    return result;
}

ProbeReport run_probe(const Corpus& corpus, const ClassMap& map, const LanguageId& language,
                      ModelKind kind, EncodeMode mode, const TrainConfig& config, int n_runs,
                      std::uint64_t base_seed, int jobs) {
    if (!corpus.family_of(language))
        throw ArgumentError("probe: language " + language + " not in corpus");

    const std::set<LanguageId> excluded{language};
    const Corpus reduced = remove_languages(corpus, excluded);
    const ModelData data = build_model_data(reduced, mode, map, kind == ModelKind::baseline);
    const auto queries = build_queries(corpus, {language}, mode, map, kind);
    auto runs = run_exclusion(data, queries, excluded, kind, config, n_runs, base_seed, jobs);
    return summarize_probe(language, std::move(runs));
}

ProbeReport run_affiliate(const Corpus& corpus, const ClassMap& map,
                          const std::string& new_wordlist_path, ModelKind kind,
                          const TrainConfig& config, int n_runs, std::uint64_t base_seed,
                          int jobs) {
    auto loaded = load_wordlist(new_wordlist_path, corpus.concepts);

    std::set<LanguageId> ids;
    for (const auto& form : loaded.forms) ids.insert(form.language);
    if (ids.empty())
        throw UnclassifiableError(new_wordlist_path + ": no in-inventory concepts attested");
    if (ids.size() > 1) {
        std::string listed;
        for (const auto& id : ids) {
            if (!listed.empty()) listed += ", ";
            listed += id;
        }
        throw ArgumentError(new_wordlist_path + ": expected one language, found " + listed);
    }
    const LanguageId language = *ids.begin();
    if (corpus.has_language(language))
        throw ArgumentError("affiliate: language " + language +
                            " is already in the corpus; use probe instead");

    Corpus view;  // the new wordlist under the training inventories
    view.concepts = corpus.concepts;
    view.forms = std::move(loaded.forms);

    const ModelData data =
        build_model_data(corpus, EncodeMode::lexical, map, kind == ModelKind::baseline);
    const auto queries = build_queries(view, {language}, EncodeMode::lexical, map, kind);
    auto runs = run_exclusion(data, queries, {}, kind, config, n_runs, base_seed, jobs);
    return summarize_probe(language, std::move(runs));
}

// ---------------------------------------------------------------------------
// report serialization

namespace {

nlohmann::json stats_json(const AggregateStats& stats) {
    return {{"min", stats.min}, {"max", stats.max},   {"q25", stats.q25},
            {"q75", stats.q75}, {"mean", stats.mean}, {"sd", stats.sd}};
}

nlohmann::json runs_json(const std::vector<RunResult>& runs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& run : runs) {
        nlohmann::json predictions = nlohmann::json::object();
        for (const auto& [language, family] : run.predictions) predictions[language] = family;
        out.push_back({{"seed", run.seed},
                       {"balanced_accuracy", run.balanced_accuracy},
                       {"predictions", predictions}});
    }
    return out;
}

nlohmann::json parse_echo(const std::string& config_echo_json) {
    if (config_echo_json.empty()) return nlohmann::json::object();
    return nlohmann::json::parse(config_echo_json);
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

}  // namespace

std::string compare_json(const CompareResult& result, const std::string& config_echo_json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& entry : result.entries)
        entries.push_back({{"model", to_string(entry.kind)},
                           {"mode", to_string(entry.mode)},
                           {"aggregate", stats_json(entry.result.stats)},
                           {"runs", runs_json(entry.result.runs)}});
    const nlohmann::json doc = {{"config", parse_echo(config_echo_json)}, {"results", entries}};
    return doc.dump(2) + "\n";
}

std::string compare_csv(const CompareResult& result) {
    std::ostringstream out;
    out << "model,mode,runs,mean,sd,min,q25,q75,max\n";
    for (const auto& entry : result.entries) {
        const auto& stats = entry.result.stats;
        out << to_string(entry.kind) << ',' << to_string(entry.mode) << ','
            << entry.result.runs.size() << ',' << format_number(stats.mean) << ','
            << format_number(stats.sd) << ',' << format_number(stats.min) << ','
            << format_number(stats.q25) << ',' << format_number(stats.q75) << ','
            << format_number(stats.max) << '\n';
    }
    return out.str();
}

std::string holdout_json(const HoldoutResult& result, const std::string& config_echo_json) {
    nlohmann::json per_language = nlohmann::json::object();
    for (const auto& [language, rate] : result.per_language_rate) per_language[language] = rate;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : result.runs) {
        nlohmann::json predictions = nlohmann::json::object();
        for (const auto& [language, family] : run.predictions) predictions[language] = family;
        runs.push_back({{"seed", run.seed}, {"predictions", predictions}});
    }
    const nlohmann::json doc = {{"config", parse_echo(config_echo_json)},
                                {"family", result.family},
                                {"overall_accuracy", result.overall_accuracy},
                                {"hygiene_checked", result.hygiene_checked},
                                {"per_language", per_language},
                                {"runs", runs}};
    return doc.dump(2) + "\n";
}

std::string holdout_csv(const HoldoutResult& result) {
    std::ostringstream out;
    out << "language,affiliation_rate\n";
    for (const auto& [language, rate] : result.per_language_rate)
        out << language << ',' << format_number(rate) << '\n';
    out << "(overall)," << format_number(result.overall_accuracy) << '\n';
    return out.str();
}

std::string probe_json(const ProbeReport& report, const std::string& config_echo_json) {
    nlohmann::json proportions = nlohmann::json::object();
    for (const auto& [family, share] : report.proportions) proportions[family] = share;
    nlohmann::json top3 = nlohmann::json::array();
    for (const auto& [family, share] : report.top3)
        top3.push_back({{"family", family}, {"proportion", share}});
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& [seed, family] : report.runs)
        runs.push_back({{"seed", seed}, {"predicted", family}});
    const nlohmann::json doc = {{"config", parse_echo(config_echo_json)},
                                {"language", report.language},
                                {"n_runs", report.n_runs},
                                {"proportions", proportions},
                                {"top3", top3},
                                {"rest", report.rest},
                                {"runs", runs}};
    return doc.dump(2) + "\n";
}

std::string probe_csv(const ProbeReport& report) {
    std::vector<std::pair<std::string, double>> ranked(report.proportions.begin(),
                                                       report.proportions.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::ostringstream out;
    out << "family,proportion\n";
    for (const auto& [family, share] : ranked) out << family << ',' << format_number(share) << '\n';
    return out.str();
}

std::string json_object(const std::vector<std::pair<std::string, std::string>>& fields) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [key, value] : fields) obj[key] = value;
    return obj.dump();
}

}  // namespace lingaff
