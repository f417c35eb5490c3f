#include "lingaff/encode.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

#include "lingaff/error.hpp"

namespace lingaff {

std::string to_string(EncodeMode mode) {
    switch (mode) {
        case EncodeMode::lexical: return "lexical";
        case EncodeMode::grammatical: return "grammatical";
        case EncodeMode::combined: return "combined";
    }
    return "?";
}

EncodeMode encode_mode_from_string(const std::string& name) {
    if (name == "lexical") return EncodeMode::lexical;
    if (name == "grammatical") return EncodeMode::grammatical;
    if (name == "combined") return EncodeMode::combined;
    throw ArgumentError("unknown mode \"" + name + "\" (expected lexical, grammatical, or combined)");
}

namespace {

std::string joined(const std::vector<std::string>& segments) {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += ' ';
        out += segments[i];
    }
    return out;
}

// Designated form per concept among the given forms (all of one language):
// lexicographically smallest space-joined segment string wins, so selection
// is independent of row order.
std::map<std::string, const WordForm*> select_from(std::span<const WordForm* const> forms) {
    std::map<std::string, const WordForm*> selected;
    std::map<std::string, std::string> selected_joined;
    for (const WordForm* form : forms) {
        auto key = joined(form->segments);
        const auto it = selected_joined.find(form->concept_id);
        if (it == selected_joined.end() || key < it->second) {
            selected_joined[form->concept_id] = std::move(key);
            selected[form->concept_id] = form;
        }
    }
    return selected;
}

std::vector<const WordForm*> forms_of(const Corpus& corpus, const LanguageId& language) {
    std::vector<const WordForm*> out;
    for (const auto& form : corpus.forms)
        if (form.language == language) out.push_back(&form);
    return out;
}

void set_lexical_bits(std::vector<std::uint8_t>& vec, const std::vector<std::string>& concepts,
                      const std::map<std::string, const WordForm*>& chosen, const ClassMap& map) {
    for (std::size_t c = 0; c < concepts.size(); ++c) {
        const auto it = chosen.find(concepts[c]);
        if (it == chosen.end()) continue;
        const Skeleton skel = skeleton(it->second->segments, map);
        const std::size_t base = c * 2 * kNumSoundClasses;
        if (skel.first) vec[base + static_cast<std::size_t>(index_of(*skel.first))] = 1;
        if (skel.second)
            vec[base + kNumSoundClasses + static_cast<std::size_t>(index_of(*skel.second))] = 1;
    }
}

void set_grammar_bits(std::vector<std::uint8_t>& vec, const Corpus& corpus,
                      const std::unordered_map<std::string, std::size_t>& feature_index,
                      std::span<const FeatureValue* const> values) {
    for (const FeatureValue* value : values) {
        if (!value->value) continue;
        const auto it = feature_index.find(value->feature);
        if (it == feature_index.end()) continue;
        const std::size_t base = it->second * 2;
        const FeatureKind kind = corpus.features[it->second].kind;
        const int v = *value->value;
        if (kind == FeatureKind::binary) {
            vec[base + static_cast<std::size_t>(v)] = 1;  // 0 -> [1,0], 1 -> [0,1]
        } else {
            if (v == 1 || v == 3) vec[base] = 1;
            if (v == 2 || v == 3) vec[base + 1] = 1;
        }
    }
}

std::unordered_map<std::string, std::size_t> feature_index_of(const Corpus& corpus) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t f = 0; f < corpus.features.size(); ++f)
        index.emplace(corpus.features[f].id, f);
    return index;
}

}  // namespace

std::map<std::string, std::vector<std::string>> select_forms(const Corpus& corpus,
                                                             const LanguageId& language) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [concept_id, form] : select_from(forms_of(corpus, language)))
        out.emplace(concept_id, form->segments);
    return out;
}

std::vector<std::uint8_t> encode_lexical(const Corpus& corpus, const LanguageId& language,
                                         const ClassMap& map) {
    std::vector<std::uint8_t> vec(corpus.concepts.size() * 2 * kNumSoundClasses, 0);
    set_lexical_bits(vec, corpus.concepts, select_from(forms_of(corpus, language)), map);
    return vec;
}

std::vector<std::uint8_t> encode_grammar(const Corpus& corpus, const LanguageId& language) {
    std::vector<std::uint8_t> vec(corpus.features.size() * 2, 0);
    std::vector<const FeatureValue*> values;
    for (const auto& value : corpus.values)
        if (value.language == language) values.push_back(&value);
    set_grammar_bits(vec, corpus, feature_index_of(corpus), values);
    return vec;
}

std::vector<std::uint8_t> encode_combined(std::span<const std::uint8_t> lexical,
                                          std::span<const std::uint8_t> grammar) {
    std::vector<std::uint8_t> vec;
    vec.reserve(lexical.size() + grammar.size());
    vec.insert(vec.end(), lexical.begin(), lexical.end());
    vec.insert(vec.end(), grammar.begin(), grammar.end());
    return vec;
}

EncodedDataset encode_dataset(const Corpus& corpus, EncodeMode mode, const ClassMap& map) {
    if (mode != EncodeMode::lexical && corpus.values.empty())
        throw ArgumentError("mode " + to_string(mode) + " requires grammatical feature values");

    EncodedDataset ds;
    ds.mode = mode;
    ds.lexical_width = mode == EncodeMode::grammatical
                           ? 0
                           : static_cast<int>(corpus.concepts.size()) * 2 * kNumSoundClasses;
    ds.grammar_width =
        mode == EncodeMode::lexical ? 0 : static_cast<int>(corpus.features.size()) * 2;
    ds.languages = corpus.languages();

    std::set<std::string> family_set;
    std::unordered_map<std::string, std::string> family_of;
    for (const auto& label : corpus.labels) {
        family_set.insert(label.family);
        family_of.emplace(label.language, label.family);
    }
    ds.families.assign(family_set.begin(), family_set.end());
    std::unordered_map<std::string, int> family_index;
    for (std::size_t i = 0; i < ds.families.size(); ++i)
        family_index.emplace(ds.families[i], static_cast<int>(i));

    std::unordered_map<std::string, std::vector<const WordForm*>> forms_by_language;
    if (mode != EncodeMode::grammatical)
        for (const auto& form : corpus.forms) forms_by_language[form.language].push_back(&form);
    std::unordered_map<std::string, std::vector<const FeatureValue*>> values_by_language;
    if (mode != EncodeMode::lexical)
        for (const auto& value : corpus.values) values_by_language[value.language].push_back(&value);
    const auto feature_index = feature_index_of(corpus);

    static const std::vector<const WordForm*> no_forms;
    static const std::vector<const FeatureValue*> no_values;

    const int n = static_cast<int>(ds.languages.size());
    ds.vectors = Mat<float>(n, ds.lexical_width + ds.grammar_width);
    ds.targets.resize(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> bits;
    for (int row = 0; row < n; ++row) {
        const auto& language = ds.languages[static_cast<std::size_t>(row)];
        bits.assign(static_cast<std::size_t>(ds.width()), 0);
        if (mode != EncodeMode::grammatical) {
            const auto it = forms_by_language.find(language);
            set_lexical_bits(bits, corpus.concepts,
                             select_from(it == forms_by_language.end() ? no_forms : it->second),
                             map);
        }
        if (mode != EncodeMode::lexical) {
            const auto it = values_by_language.find(language);
            std::vector<std::uint8_t> gram(static_cast<std::size_t>(ds.grammar_width), 0);
            set_grammar_bits(gram, corpus, feature_index,
                             it == values_by_language.end() ? no_values : it->second);
            std::copy(gram.begin(), gram.end(),
                      bits.begin() + static_cast<std::ptrdiff_t>(ds.lexical_width));
        }
        auto dest = ds.vectors.row(row);
        for (std::size_t j = 0; j < bits.size(); ++j) dest[j] = static_cast<float>(bits[j]);
        ds.targets[static_cast<std::size_t>(row)] = family_index.at(family_of.at(language));
    }
    return ds;
}

EncodedDataset subset_dataset(const EncodedDataset& ds, std::span<const int> rows) {
    EncodedDataset out;
    out.mode = ds.mode;
    out.lexical_width = ds.lexical_width;
    out.grammar_width = ds.grammar_width;
    out.families = ds.families;
    out.vectors = Mat<float>(static_cast<int>(rows.size()), ds.width());
    out.targets.resize(rows.size());
    out.languages.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int r = rows[i];
        const auto src = ds.vectors.row(r);
        std::copy(src.begin(), src.end(), out.vectors.row(static_cast<int>(i)).begin());
        out.targets[i] = ds.targets[static_cast<std::size_t>(r)];
        out.languages[i] = ds.languages[static_cast<std::size_t>(r)];
    }
    return out;
}

std::vector<float> encode_for_dataset(const Corpus& source, const LanguageId& language,
                                      EncodeMode mode, const ClassMap& map) {
    std::vector<std::uint8_t> bits;
    switch (mode) {
        case EncodeMode::lexical: bits = encode_lexical(source, language, map); break;
        case EncodeMode::grammatical: bits = encode_grammar(source, language); break;
        case EncodeMode::combined:
            bits = encode_combined(encode_lexical(source, language, map),
                                   encode_grammar(source, language));
            break;
    }
    std::vector<float> vec(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) vec[i] = static_cast<float>(bits[i]);
    return vec;
}

void write_dataset_dump(const EncodedDataset& ds, std::ostream& out) {
    out << "# mode=" << to_string(ds.mode) << " lexical_width=" << ds.lexical_width
        << " grammar_width=" << ds.grammar_width << " classes=" << ds.families.size() << '\n';
    for (int row = 0; row < ds.rows(); ++row) {
        out << ds.languages[static_cast<std::size_t>(row)] << '\t'
            << ds.families[static_cast<std::size_t>(ds.targets[static_cast<std::size_t>(row)])]
            << '\t';
        for (const float v : ds.vectors.row(row)) out << (v > 0.5f ? '1' : '0');
        out << '\n';
    }
}

}  // namespace lingaff
