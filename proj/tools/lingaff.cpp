// lingaff: affiliate languages to families from lexical and grammatical
// evidence. Subcommands: encode, baseline, train, compare, holdout, probe,
// affiliate, synth. All outputs land under --out and are byte-reproducible
// for identical inputs and flags.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lingaff/baseline.hpp"
#include "lingaff/corpus.hpp"
#include "lingaff/encode.hpp"
#include "lingaff/error.hpp"
#include "lingaff/eval.hpp"
#include "lingaff/experiments.hpp"
#include "lingaff/nnet.hpp"
#include "lingaff/soundclass.hpp"
#include "lingaff/synth.hpp"
#include "lingaff/tsv.hpp"

namespace {

using namespace lingaff;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LINGAFF_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ArgumentError(std::string("LINGAFF_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

struct CorpusOpts {
    std::string wordlist;
    std::string features;
    std::string labels;
    std::string concepts;
    std::string features_meta;
    std::string classmap;
    int min_family_size = 5;
};

void add_corpus_options(CLI::App* cmd, CorpusOpts& opts) {
    cmd->add_option("--wordlist", opts.wordlist, "wordlist.tsv (ID, Language_ID, Parameter_ID, Segments)");
    cmd->add_option("--features", opts.features, "features.tsv (Language_ID, Parameter_ID, Value)");
    cmd->add_option("--labels", opts.labels, "labels.tsv (Language_ID, Family)")->required();
    cmd->add_option("--concepts", opts.concepts, "concepts.txt, one concept id per line");
    cmd->add_option("--features-meta", opts.features_meta, "features_meta.tsv (Parameter_ID, Kind)");
    cmd->add_option("--classmap", opts.classmap,
                    "sound class map (token<TAB>class); built-in default when omitted");
    cmd->add_option("--min-family-size", opts.min_family_size,
                    "drop languages whose family has fewer members")
        ->capture_default_str();
}

void require_paths_for_mode(const CorpusOpts& opts, EncodeMode mode) {
    const bool needs_lexicon = mode != EncodeMode::grammatical;
    const bool needs_grammar = mode != EncodeMode::lexical;
    if (needs_lexicon && opts.wordlist.empty())
        throw ArgumentError("--wordlist is required for mode " + to_string(mode));
    if (needs_lexicon && opts.concepts.empty())
        throw ArgumentError("--concepts is required for mode " + to_string(mode));
    if (needs_grammar && opts.features.empty())
        throw ArgumentError("--features is required for mode " + to_string(mode));
    if (needs_grammar && opts.features_meta.empty())
        throw ArgumentError("--features-meta is required for mode " + to_string(mode));
}

ClassMap load_map(const CorpusOpts& opts) {
    return opts.classmap.empty() ? default_classmap() : load_classmap(opts.classmap);
}

Corpus load_and_filter(const CorpusOpts& opts, const ClassMap& map) {
    CorpusPaths paths{opts.wordlist, opts.features, opts.labels, opts.concepts,
                      opts.features_meta};
    LoadReport report;
    Corpus corpus = load_corpus(paths, &report);

    if (report.wordlist_rows_skipped > 0)
        std::cerr << "note: " << report.wordlist_rows_skipped
                  << " wordlist rows outside the concept inventory were skipped\n";
    if (report.feature_rows_skipped > 0)
        std::cerr << "note: " << report.feature_rows_skipped
                  << " feature rows with unknown feature ids were skipped\n";

    if (!corpus.forms.empty()) {
        std::vector<std::vector<std::string>> sequences;
        sequences.reserve(corpus.forms.size());
        for (const auto& form : corpus.forms) sequences.push_back(form.segments);
        const auto tally = unknown_segment_tally(sequences, map);
        if (!tally.empty()) {
            long total = 0;
            for (const auto& [token, count] : tally) total += count;
            std::cerr << "note: " << tally.size() << " unknown segment types (" << total
                      << " tokens) classify as ignored:";
            int shown = 0;
            for (const auto& [token, count] : tally) {
                if (++shown > 5) {
                    std::cerr << " ...";
                    break;
                }
                std::cerr << ' ' << token << " (x" << count << ")";
            }
            std::cerr << '\n';
        }
    }

    return filter_min_family_size(corpus, opts.min_family_size);
}

std::filesystem::path prepare_out_dir(const std::string& out) {
    std::filesystem::path dir(out);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string flag_list(const std::vector<std::string>& items) {
    std::string joined;
    for (const auto& item : items) {
        if (!joined.empty()) joined += ",";
        joined += item;
    }
    return joined;
}

using Echo = std::vector<std::pair<std::string, std::string>>;

Echo corpus_echo(const CorpusOpts& opts, std::uint64_t seed, int runs, int jobs) {
    return {{"wordlist", opts.wordlist},
            {"features", opts.features},
            {"labels", opts.labels},
            {"concepts", opts.concepts},
            {"features_meta", opts.features_meta},
            {"classmap", opts.classmap.empty() ? "<builtin>" : opts.classmap},
            {"min_family_size", std::to_string(opts.min_family_size)},
            {"runs", std::to_string(runs)},
            {"seed", std::to_string(seed)},
            {"jobs", std::to_string(jobs)}};
}

// ---------------------------------------------------------------------------

int cmd_encode(const CorpusOpts& opts, const std::string& mode_name, const std::string& out) {
    const EncodeMode mode = encode_mode_from_string(mode_name);
    require_paths_for_mode(opts, mode);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);
    const EncodedDataset ds = encode_dataset(corpus, mode, map);

    const auto dir = prepare_out_dir(out);
    std::ostringstream dump;
    write_dataset_dump(ds, dump);
    write_text_file((dir / "encoded.tsv").string(), dump.str());
    std::cout << "encoded " << ds.rows() << " languages (width " << ds.width() << ", "
              << ds.families.size() << " families) -> " << (dir / "encoded.tsv").string() << '\n';
    return 0;
}

int cmd_baseline(const CorpusOpts& opts, const std::string& query, int runs, std::uint64_t seed,
                 int jobs, const std::string& out) {
    require_paths_for_mode(opts, EncodeMode::lexical);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);

    if (!query.empty()) {
        if (!corpus.family_of(query))
            throw ArgumentError("language " + query + " not in corpus");
        const auto profiles = build_profiles(corpus, map);
        std::vector<SkeletonProfile> training;
        std::vector<std::string> training_families;
        SkeletonProfile query_profile;
        for (const auto& profile : profiles) {
            if (profile.language == query) {
                query_profile = profile;
            } else {
                training_families.push_back(*corpus.family_of(profile.language));
                training.push_back(profile);
            }
        }
        const auto decision = classify_baseline(query_profile, training, training_families);
        std::cout << query << '\t' << decision.family << '\t' << decision.best << '\t'
                  << decision.score << '\n';
        return 0;
    }

    if (out.empty()) throw ArgumentError("--out is required unless --query is given");
    const ModelData data = build_model_data(corpus, EncodeMode::lexical, map, true);
    CompareResult result;
    result.entries.push_back({ModelKind::baseline, EncodeMode::lexical,
                              run_multi_seed(data, ModelKind::baseline, TrainConfig{}, runs, seed,
                                             jobs)});

    auto echo = corpus_echo(opts, seed, runs, jobs);
    echo.emplace_back("command", "baseline");
    const auto dir = prepare_out_dir(out);
    write_text_file((dir / "results.json").string(), compare_json(result, json_object(echo)));
    write_text_file((dir / "summary.csv").string(), compare_csv(result));
    std::cout << "baseline mean balanced accuracy " << result.entries[0].result.stats.mean
              << " over " << runs << " runs -> " << (dir / "results.json").string() << '\n';
    return 0;
}

int cmd_train(const CorpusOpts& opts, const std::string& mode_name, std::uint64_t seed, int jobs,
              const std::string& out, bool verbose) {
    (void)jobs;
    const EncodeMode mode = encode_mode_from_string(mode_name);
    require_paths_for_mode(opts, mode);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);
    const EncodedDataset ds = encode_dataset(corpus, mode, map);

    const SplitSpec split = stratified_split(ds.targets, 0.8, seed);
    const EncodedDataset train_ds = subset_dataset(ds, split.train_rows);
    const EncodedDataset monitor_ds = subset_dataset(ds, split.test_rows);

    TrainConfig config;
    config.seed = seed;
    TrainHooks hooks;
    double best_seen = -1.0;
    if (verbose) {
        hooks.on_epoch = [&best_seen](int epoch, double score) {
            if (score > best_seen) {
                best_seen = score;
                std::cerr << "epoch " << epoch << ": monitor balanced accuracy " << score << '\n';
            }
        };
    }
    const TrainedModel model = train(train_ds, monitor_ds, config, hooks);

    const auto dir = prepare_out_dir(out);
    const auto model_path = (dir / "model.laff").string();
    save_model(model, model_path);

    auto echo = corpus_echo(opts, seed, 1, 1);
    echo.emplace_back("command", "train");
    echo.emplace_back("mode", mode_name);
    Echo summary = {{"model", "model.laff"},
                    {"best_epoch", std::to_string(model.best_epoch)},
                    {"epochs_run", std::to_string(model.epochs_run)},
                    {"best_score", std::to_string(model.best_score)},
                    {"train_rows", std::to_string(train_ds.rows())},
                    {"monitor_rows", std::to_string(monitor_ds.rows())},
                    {"config", json_object(echo)}};
    write_text_file((dir / "results.json").string(), json_object(summary) + "\n");
    std::cout << "trained " << to_string(mode) << " model: best epoch " << model.best_epoch
              << " of " << model.epochs_run << ", monitor balanced accuracy " << model.best_score
              << " -> " << model_path << '\n';
    return 0;
}

std::vector<std::pair<ModelKind, EncodeMode>> compare_configs(
    const std::vector<std::string>& model_names, const std::vector<std::string>& mode_names,
    bool models_defaulted) {
    std::vector<std::pair<ModelKind, EncodeMode>> configs;
    for (const auto& mode_name : mode_names) {
        const EncodeMode mode = encode_mode_from_string(mode_name);
        for (const auto& model_name : model_names) {
            const ModelKind kind = model_kind_from_string(model_name);
            if (kind == ModelKind::baseline && mode != EncodeMode::lexical) {
                if (models_defaulted) continue;  // only run baseline where it is defined
                throw ArgumentError("baseline supports lexical mode only, got " + mode_name);
            }
            configs.emplace_back(kind, mode);
        }
    }
    return configs;
}

int cmd_compare(const CorpusOpts& opts, const std::vector<std::string>& model_names,
                const std::vector<std::string>& mode_names, bool models_defaulted, int runs,
                std::uint64_t seed, int jobs, const std::string& out) {
    for (const auto& mode_name : mode_names)
        require_paths_for_mode(opts, encode_mode_from_string(mode_name));
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);

    const auto configs = compare_configs(model_names, mode_names, models_defaulted);
    const CompareResult result = run_compare(corpus, map, configs, TrainConfig{}, runs, seed, jobs);

    auto echo = corpus_echo(opts, seed, runs, jobs);
    echo.emplace_back("command", "compare");
    echo.emplace_back("models", flag_list(model_names));
    echo.emplace_back("modes", flag_list(mode_names));
    const auto dir = prepare_out_dir(out);
    write_text_file((dir / "results.json").string(), compare_json(result, json_object(echo)));
    write_text_file((dir / "summary.csv").string(), compare_csv(result));

    for (const auto& entry : result.entries)
        std::cout << to_string(entry.kind) << '/' << to_string(entry.mode) << ": mean "
                  << entry.result.stats.mean << " sd " << entry.result.stats.sd << '\n';
    std::cout << "reports -> " << (dir / "results.json").string() << ", "
              << (dir / "summary.csv").string() << '\n';
    return 0;
}

int cmd_holdout(const CorpusOpts& opts, const std::string& family, std::string held_out_csv,
                const std::string& held_out_file, const std::string& model_name,
                const std::string& mode_name, int runs, std::uint64_t seed, int jobs,
                const std::string& out) {
    const EncodeMode mode = encode_mode_from_string(mode_name);
    const ModelKind kind = model_kind_from_string(model_name);
    require_paths_for_mode(opts, mode);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);

    HoldoutSpec spec;
    spec.family = family;
    spec.n_runs = runs;
    spec.base_seed = seed;
    if (!held_out_file.empty()) {
        std::ifstream in(held_out_file);
        if (!in) throw ArgumentError(held_out_file + ": cannot open file");
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) spec.held_out.push_back(line);
        }
    }
    std::stringstream csv(held_out_csv);
    std::string id;
    while (std::getline(csv, id, ','))
        if (!id.empty()) spec.held_out.push_back(id);
    if (spec.held_out.empty())
        throw ArgumentError("no held-out languages given (use --held-out or --held-out-file)");

    const HoldoutResult result = run_holdout(corpus, map, spec, kind, mode, TrainConfig{}, jobs);

    auto echo = corpus_echo(opts, seed, runs, jobs);
    echo.emplace_back("command", "holdout");
    echo.emplace_back("family", family);
    echo.emplace_back("held_out", flag_list(spec.held_out));
    echo.emplace_back("model", model_name);
    echo.emplace_back("mode", mode_name);
    const auto dir = prepare_out_dir(out);
    write_text_file((dir / "results.json").string(), holdout_json(result, json_object(echo)));
    write_text_file((dir / "summary.csv").string(), holdout_csv(result));
    std::cout << "holdout " << family << ": overall affiliation accuracy "
              << result.overall_accuracy << " over " << runs << " runs -> "
              << (dir / "results.json").string() << '\n';
    return 0;
}

int cmd_probe(const CorpusOpts& opts, const std::string& language, const std::string& model_name,
              const std::string& mode_name, int runs, std::uint64_t seed, int jobs,
              const std::string& out) {
    const EncodeMode mode = encode_mode_from_string(mode_name);
    const ModelKind kind = model_kind_from_string(model_name);
    require_paths_for_mode(opts, mode);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);

    const ProbeReport report =
        run_probe(corpus, map, language, kind, mode, TrainConfig{}, runs, seed, jobs);

    auto echo = corpus_echo(opts, seed, runs, jobs);
    echo.emplace_back("command", "probe");
    echo.emplace_back("language", language);
    echo.emplace_back("model", model_name);
    echo.emplace_back("mode", mode_name);
    const auto dir = prepare_out_dir(out);
    write_text_file((dir / "results.json").string(), probe_json(report, json_object(echo)));
    write_text_file((dir / "summary.csv").string(), probe_csv(report));

    std::cout << "probe " << language << ":";
    for (const auto& [family, share] : report.top3) std::cout << ' ' << family << ' ' << share;
    std::cout << " (rest " << report.rest << ") -> " << (dir / "results.json").string() << '\n';
    return 0;
}

int cmd_affiliate(const CorpusOpts& opts, const std::string& new_wordlist,
                  const std::string& model_name, int runs, std::uint64_t seed, int jobs,
                  const std::string& out) {
    const ModelKind kind = model_kind_from_string(model_name);
    require_paths_for_mode(opts, EncodeMode::lexical);
    const ClassMap map = load_map(opts);
    const Corpus corpus = load_and_filter(opts, map);

    const ProbeReport report =
        run_affiliate(corpus, map, new_wordlist, kind, TrainConfig{}, runs, seed, jobs);

    auto echo = corpus_echo(opts, seed, runs, jobs);
    echo.emplace_back("command", "affiliate");
    echo.emplace_back("new", new_wordlist);
    echo.emplace_back("model", model_name);
    const auto dir = prepare_out_dir(out);
    write_text_file((dir / "results.json").string(), probe_json(report, json_object(echo)));
    write_text_file((dir / "summary.csv").string(), probe_csv(report));

    std::cout << "affiliate " << report.language << ":";
    for (const auto& [family, share] : report.top3) std::cout << ' ' << family << ' ' << share;
    std::cout << " (rest " << report.rest << ") -> " << (dir / "results.json").string() << '\n';
    return 0;
}

int cmd_synth(const SynthConfig& config, const std::string& out) {
    const Corpus corpus = generate(config);
    const auto dir = prepare_out_dir(out);
    save_corpus(corpus, dir.string());
    std::cout << "synthesized " << corpus.labels.size() << " languages in " << config.n_families
              << " families -> " << dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"language family affiliation from lexical and grammatical evidence"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int runs = 100;
    int jobs = 1;
    std::string out;

    try {
        seed = default_seed();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    const auto add_run_options = [&](CLI::App* cmd, bool with_runs = true) {
        if (with_runs) cmd->add_option("--runs", runs, "number of seeded runs")->capture_default_str();
        cmd->add_option("--seed", seed, "base seed (default: LINGAFF_SEED or 1)")
            ->capture_default_str();
        cmd->add_option("--jobs", jobs, "parallel seeds; results are independent of this value")
            ->capture_default_str();
    };

    // encode
    CorpusOpts encode_opts;
    std::string encode_mode = "lexical";
    auto* encode_cmd = app.add_subcommand("encode", "encode a corpus and dump the vectors");
    add_corpus_options(encode_cmd, encode_opts);
    encode_cmd->add_option("--mode", encode_mode, "lexical, grammatical, or combined")
        ->capture_default_str();
    encode_cmd->add_option("--out", out, "output directory")->required();

    // baseline
    CorpusOpts baseline_opts;
    std::string baseline_query;
    auto* baseline_cmd =
        app.add_subcommand("baseline", "consonant-class baseline: evaluate, or classify one language");
    add_corpus_options(baseline_cmd, baseline_opts);
    baseline_cmd->add_option("--query", baseline_query,
                             "classify this language against the rest of the corpus");
    baseline_cmd->add_option("--out", out, "output directory (evaluation runs)");
    add_run_options(baseline_cmd);

    // train
    CorpusOpts train_opts;
    std::string train_mode = "lexical";
    bool train_verbose = false;
    auto* train_cmd = app.add_subcommand("train", "train one network on a stratified split");
    add_corpus_options(train_cmd, train_opts);
    train_cmd->add_option("--mode", train_mode, "lexical, grammatical, or combined")
        ->capture_default_str();
    train_cmd->add_flag("--verbose", train_verbose, "log monitor improvements per epoch");
    train_cmd->add_option("--out", out, "output directory")->required();
    add_run_options(train_cmd, /*with_runs=*/false);

    // compare
    CorpusOpts compare_opts;
    std::vector<std::string> compare_models{"baseline", "mlp"};
    std::vector<std::string> compare_modes{"lexical"};
    auto* compare_cmd = app.add_subcommand("compare", "multi-seed model comparison");
    add_corpus_options(compare_cmd, compare_opts);
    auto* compare_models_opt = compare_cmd
                                   ->add_option("--model", compare_models,
                                                "model kinds to run (baseline, mlp)")
                                   ->delimiter(',')
                                   ->capture_default_str();
    compare_cmd->add_option("--mode", compare_modes, "modes to run (lexical, grammatical, combined)")
        ->delimiter(',')
        ->capture_default_str();
    compare_cmd->add_option("--out", out, "output directory")->required();
    add_run_options(compare_cmd);

    // holdout
    CorpusOpts holdout_opts;
    std::string holdout_family, holdout_list, holdout_file;
    std::string holdout_model = "mlp", holdout_mode = "lexical";
    auto* holdout_cmd = app.add_subcommand("holdout", "remove a subgroup and test its affiliation");
    add_corpus_options(holdout_cmd, holdout_opts);
    holdout_cmd->add_option("--family", holdout_family, "family the held-out languages belong to")
        ->required();
    holdout_cmd->add_option("--held-out", holdout_list, "comma-separated held-out language ids");
    holdout_cmd->add_option("--held-out-file", holdout_file, "file with one language id per line");
    holdout_cmd->add_option("--model", holdout_model, "baseline or mlp")->capture_default_str();
    holdout_cmd->add_option("--mode", holdout_mode, "lexical, grammatical, or combined")
        ->capture_default_str();
    holdout_cmd->add_option("--out", out, "output directory")->required();
    add_run_options(holdout_cmd);

    // probe
    CorpusOpts probe_opts;
    std::string probe_language;
    std::string probe_model = "mlp", probe_mode = "lexical";
    auto* probe_cmd = app.add_subcommand("probe", "probe the affiliation of one corpus language");
    add_corpus_options(probe_cmd, probe_opts);
    probe_cmd->add_option("--language", probe_language, "language id to probe")->required();
    probe_cmd->add_option("--model", probe_model, "baseline or mlp")->capture_default_str();
    probe_cmd->add_option("--mode", probe_mode, "lexical, grammatical, or combined")
        ->capture_default_str();
    probe_cmd->add_option("--out", out, "output directory")->required();
    add_run_options(probe_cmd);

    // affiliate
    CorpusOpts affiliate_opts;
    std::string affiliate_new;
    std::string affiliate_model = "mlp";
    auto* affiliate_cmd =
        app.add_subcommand("affiliate", "affiliate a new wordlist against the corpus");
    add_corpus_options(affiliate_cmd, affiliate_opts);
    affiliate_cmd->add_option("--new", affiliate_new, "wordlist.tsv of the new language")
        ->required();
    affiliate_cmd->add_option("--model", affiliate_model, "baseline or mlp")->capture_default_str();
    affiliate_cmd->add_option("--out", out, "output directory")->required();
    add_run_options(affiliate_cmd);

    // synth
    SynthConfig synth_config;
    synth_config.n_families = 30;
    synth_config.languages_per_family = 8;
    synth_config.n_concepts = 100;
    synth_config.n_features = 50;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus with planted families");
    synth_cmd->add_option("--families", synth_config.n_families, "number of families")
        ->capture_default_str();
    synth_cmd->add_option("--per-family", synth_config.languages_per_family, "languages per family")
        ->capture_default_str();
    synth_cmd->add_option("--concepts", synth_config.n_concepts, "concept inventory size")
        ->capture_default_str();
    synth_cmd->add_option("--features", synth_config.n_features, "feature inventory size")
        ->capture_default_str();
    synth_cmd->add_option("--p", synth_config.p, "per-slot class mutation probability")
        ->capture_default_str();
    synth_cmd->add_option("--q", synth_config.q, "per-concept replacement probability")
        ->capture_default_str();
    synth_cmd->add_option("--r", synth_config.r, "per-feature flip probability")
        ->capture_default_str();
    synth_cmd->add_option("--mu", synth_config.mu, "missing-data probability")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_config.seed, "generator seed")->capture_default_str();
    synth_cmd->add_option("--out", out, "output directory for the corpus files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (encode_cmd->parsed()) return cmd_encode(encode_opts, encode_mode, out);
        if (baseline_cmd->parsed())
            return cmd_baseline(baseline_opts, baseline_query, runs, seed, jobs, out);
        if (train_cmd->parsed())
            return cmd_train(train_opts, train_mode, seed, jobs, out, train_verbose);
        if (compare_cmd->parsed())
            return cmd_compare(compare_opts, compare_models, compare_modes,
                               compare_models_opt->count() == 0, runs, seed, jobs, out);
        if (holdout_cmd->parsed())
            return cmd_holdout(holdout_opts, holdout_family, holdout_list, holdout_file,
                               holdout_model, holdout_mode, runs, seed, jobs, out);
        if (probe_cmd->parsed())
            return cmd_probe(probe_opts, probe_language, probe_model, probe_mode, runs, seed, jobs,
                             out);
        if (affiliate_cmd->parsed())
            return cmd_affiliate(affiliate_opts, affiliate_new, affiliate_model, runs, seed, jobs,
                                 out);
        if (synth_cmd->parsed()) return cmd_synth(synth_config, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
