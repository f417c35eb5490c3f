#include "lingaff/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lingaff/error.hpp"
#include "lingaff/tsv.hpp"

namespace lingaff {

std::vector<LanguageId> Corpus::languages() const {
    std::set<LanguageId> ids;
    for (const auto& label : labels) ids.insert(label.language);
    return {ids.begin(), ids.end()};
}

std::optional<std::string> Corpus::family_of(const LanguageId& language) const {
    for (const auto& label : labels)
        if (label.language == language) return label.family;
    return std::nullopt;
}

bool Corpus::has_language(const LanguageId& language) const {
    if (family_of(language)) return true;
    for (const auto& form : forms)
        if (form.language == language) return true;
    for (const auto& value : values)
        if (value.language == language) return true;
    return false;
}

std::vector<std::string> load_concepts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::vector<std::string> concepts;
    std::set<std::string> seen;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!seen.insert(line).second)
            throw ParseError(path + ":" + std::to_string(line_no) + ": duplicate concept \"" +
                             line + "\"");
        concepts.push_back(line);
    }
    return concepts;
}

std::vector<FeatureSpec> load_features_meta(const std::string& path) {
    std::vector<FeatureSpec> specs;
    std::set<std::string> seen;
    for_each_tsv_row(path, {"Parameter_ID", "Kind"}, [&](long line_no, const auto& fields) {
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                             std::to_string(fields.size()));
        FeatureKind kind;
        if (fields[1] == "bin") {
            kind = FeatureKind::binary;
        } else if (fields[1] == "tri") {
            kind = FeatureKind::three_valued;
        } else {
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown kind \"" +
                             fields[1] + "\" (expected bin or tri)");
        }
        if (!seen.insert(fields[0]).second)
            throw ParseError(path + ":" + std::to_string(line_no) + ": duplicate feature \"" +
                             fields[0] + "\"");
        specs.push_back({fields[0], kind});
    });
    return specs;
}

WordlistLoad load_wordlist(const std::string& path, const std::vector<std::string>& concepts) {
    const std::unordered_set<std::string> inventory(concepts.begin(), concepts.end());
    WordlistLoad out;
    for_each_tsv_row(path, {"ID", "Language_ID", "Parameter_ID", "Segments"},
                     [&](long line_no, const auto& fields) {
                         if (fields.size() != 4)
                             throw ParseError(path + ":" + std::to_string(line_no) +
                                              ": expected 4 columns, got " +
                                              std::to_string(fields.size()));
                         if (!inventory.count(fields[2])) {
                             ++out.skipped_out_of_inventory;
                             return;
                         }
                         auto segments = split_spaces(fields[3]);
                         if (segments.empty())
                             throw ParseError(path + ":" + std::to_string(line_no) +
                                              ": empty Segments field");
                         out.forms.push_back({fields[1], fields[2], std::move(segments)});
                     });
    return out;
}

namespace {

std::optional<int> parse_feature_value(const std::string& raw, const FeatureSpec& spec,
                                       const std::string& language, const std::string& origin) {
    if (raw == "-") return std::nullopt;
    if (raw.size() == 1 && raw[0] >= '0' && raw[0] <= '3') {
        const int v = raw[0] - '0';
        const bool ok = spec.kind == FeatureKind::binary ? (v == 0 || v == 1)
                                                         : (v >= 1 && v <= 3);
        if (!ok)
            throw ValidationError(origin + ": value " + raw + " invalid for " +
                                  (spec.kind == FeatureKind::binary ? "binary" : "three-valued") +
                                  " feature " + spec.id + " (language " + language + ")");
        return v;
    }
    throw ParseError(origin + ": bad feature value \"" + raw + "\" (expected 0, 1, 2, 3, or -)");
}

}  // namespace

FeaturesLoad load_features(const std::string& path, const std::vector<FeatureSpec>& features) {
    std::unordered_map<std::string, const FeatureSpec*> by_id;
    for (const auto& spec : features) by_id.emplace(spec.id, &spec);

    FeaturesLoad out;
    for_each_tsv_row(path, {"Language_ID", "Parameter_ID", "Value"},
                     [&](long line_no, const auto& fields) {
                         if (fields.size() != 3)
                             throw ParseError(path + ":" + std::to_string(line_no) +
                                              ": expected 3 columns, got " +
                                              std::to_string(fields.size()));
                         const auto it = by_id.find(fields[1]);
                         if (it == by_id.end()) {
                             ++out.skipped_unknown_feature;
                             return;
                         }
                         const auto origin = path + ":" + std::to_string(line_no);
                         out.values.push_back(
                             {fields[0], fields[1],
                              parse_feature_value(fields[2], *it->second, fields[0], origin)});
                     });
    return out;
}

std::vector<FamilyLabel> load_labels(const std::string& path) {
    std::vector<FamilyLabel> labels;
    std::map<std::string, std::string> family_of;
    for_each_tsv_row(path, {"Language_ID", "Family"}, [&](long line_no, const auto& fields) {
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                             std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(path + ":" + std::to_string(line_no) + ": empty field");
        const auto [it, inserted] = family_of.emplace(fields[0], fields[1]);
        if (!inserted) {
            if (it->second != fields[1])
                throw ConflictError(path + ":" + std::to_string(line_no) + ": language " +
                                    fields[0] + " labelled both " + it->second + " and " +
                                    fields[1]);
            return;  // identical duplicate collapses
        }
        labels.push_back({fields[0], fields[1]});
    });
    return labels;
}

Corpus load_corpus(const CorpusPaths& paths, LoadReport* report) {
    Corpus corpus;
    if (!paths.concepts.empty()) corpus.concepts = load_concepts(paths.concepts);
    if (!paths.features_meta.empty()) corpus.features = load_features_meta(paths.features_meta);

    LoadReport local;
    if (!paths.wordlist.empty()) {
        auto loaded = load_wordlist(paths.wordlist, corpus.concepts);
        corpus.forms = std::move(loaded.forms);
        local.wordlist_rows_skipped = loaded.skipped_out_of_inventory;
    }
    if (!paths.features.empty()) {
        auto loaded = load_features(paths.features, corpus.features);
        corpus.values = std::move(loaded.values);
        local.feature_rows_skipped = loaded.skipped_unknown_feature;
    }
    corpus.labels = load_labels(paths.labels);
    if (report) *report = local;

    validate_corpus(corpus);
    return corpus;
}

void validate_corpus(const Corpus& corpus) {
    const std::unordered_set<std::string> concepts(corpus.concepts.begin(), corpus.concepts.end());
    std::unordered_map<std::string, FeatureKind> feature_kinds;
    for (const auto& spec : corpus.features) {
        if (spec.id.empty()) throw ValidationError("empty feature id in inventory");
        if (!feature_kinds.emplace(spec.id, spec.kind).second)
            throw ValidationError("duplicate feature id in inventory: " + spec.id);
    }

    std::unordered_map<std::string, std::string> family_of;
    for (const auto& label : corpus.labels) {
        if (label.language.empty()) throw ValidationError("label with empty language id");
        if (label.family.empty())
            throw ValidationError("empty family for language " + label.language);
        const auto [it, inserted] = family_of.emplace(label.language, label.family);
        if (!inserted && it->second != label.family)
            throw ConflictError("language " + label.language + " labelled both " + it->second +
                                " and " + label.family);
    }

    for (const auto& form : corpus.forms) {
        if (form.language.empty()) throw ValidationError("word form with empty language id");
        if (form.segments.empty())
            throw ValidationError("word form with empty segments (language " + form.language +
                                  ", concept " + form.concept_id + ")");
        if (!concepts.count(form.concept_id))
            throw ValidationError("word form references unknown concept " + form.concept_id);
        if (!family_of.count(form.language))
            throw ValidationError("language " + form.language + " has word forms but no label");
    }

    std::map<std::pair<std::string, std::string>, std::optional<int>> seen_values;
    for (const auto& value : corpus.values) {
        const auto it = feature_kinds.find(value.feature);
        if (it == feature_kinds.end())
            throw ValidationError("feature value references unknown feature " + value.feature);
        if (value.value) {
            const int v = *value.value;
            const bool ok = it->second == FeatureKind::binary ? (v == 0 || v == 1)
                                                              : (v >= 1 && v <= 3);
            if (!ok)
                throw ValidationError("value " + std::to_string(v) + " invalid for feature " +
                                      value.feature + " (language " + value.language + ")");
        }
        if (!family_of.count(value.language))
            throw ValidationError("language " + value.language + " has feature values but no label");
        const auto key = std::make_pair(value.language, value.feature);
        const auto [pos, inserted] = seen_values.emplace(key, value.value);
        if (!inserted && pos->second != value.value)
            throw ConflictError("conflicting values for feature " + value.feature +
                                " of language " + value.language);
    }
}

void save_corpus(const Corpus& corpus, const std::string& dir) {
    {
        std::ostringstream out;
        for (const auto& concept_id : corpus.concepts) out << concept_id << '\n';
        write_text_file(dir + "/concepts.txt", out.str());
    }
    {
        std::ostringstream out;
        out << "ID\tLanguage_ID\tParameter_ID\tSegments\n";
        long id = 0;
        for (const auto& form : corpus.forms) {
            out << ++id << '\t' << form.language << '\t' << form.concept_id << '\t';
            for (std::size_t i = 0; i < form.segments.size(); ++i) {
                if (i) out << ' ';
                out << form.segments[i];
            }
            out << '\n';
        }
        write_text_file(dir + "/wordlist.tsv", out.str());
    }
    {
        std::ostringstream out;
        out << "Language_ID\tFamily\n";
        for (const auto& label : corpus.labels) out << label.language << '\t' << label.family << '\n';
        write_text_file(dir + "/labels.tsv", out.str());
    }
    if (!corpus.features.empty()) {
        std::ostringstream meta;
        meta << "Parameter_ID\tKind\n";
        for (const auto& spec : corpus.features)
            meta << spec.id << '\t' << (spec.kind == FeatureKind::binary ? "bin" : "tri") << '\n';
        write_text_file(dir + "/features_meta.tsv", meta.str());

        std::ostringstream out;
        out << "Language_ID\tParameter_ID\tValue\n";
        for (const auto& value : corpus.values) {
            out << value.language << '\t' << value.feature << '\t';
            if (value.value)
                out << *value.value;
            else
                out << '-';
            out << '\n';
        }
        write_text_file(dir + "/features.tsv", out.str());
    }
}

Corpus filter_min_family_size(const Corpus& corpus, int k) {
    if (k < 1) throw ArgumentError("minimum family size must be >= 1, got " + std::to_string(k));

    std::map<std::string, int> family_sizes;
    for (const auto& label : corpus.labels) ++family_sizes[label.family];

    std::unordered_set<std::string> kept;
    for (const auto& label : corpus.labels)
        if (family_sizes[label.family] >= k) kept.insert(label.language);

    Corpus out;
    out.concepts = corpus.concepts;
    out.features = corpus.features;
    for (const auto& form : corpus.forms)
        if (kept.count(form.language)) out.forms.push_back(form);
    for (const auto& value : corpus.values)
        if (kept.count(value.language)) out.values.push_back(value);
    for (const auto& label : corpus.labels)
        if (kept.count(label.language)) out.labels.push_back(label);
    return out;
}

}  // namespace lingaff
