#include "lingaff/baseline.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "lingaff/encode.hpp"
#include "lingaff/error.hpp"

namespace lingaff {

SkeletonProfile build_profile(const Corpus& corpus, const LanguageId& language,
                              const ClassMap& map) {
    SkeletonProfile profile;
    profile.language = language;
    profile.table.resize(corpus.concepts.size());
    const auto forms = select_forms(corpus, language);
    for (std::size_t c = 0; c < corpus.concepts.size(); ++c) {
        const auto it = forms.find(corpus.concepts[c]);
        if (it != forms.end()) profile.table[c] = skeleton(it->second, map);
    }
    return profile;
}

std::vector<SkeletonProfile> build_profiles(const Corpus& corpus, const ClassMap& map) {
    std::unordered_map<std::string, std::vector<const WordForm*>> forms_by_language;
    for (const auto& form : corpus.forms) forms_by_language[form.language].push_back(&form);

    std::vector<SkeletonProfile> profiles;
    for (const auto& language : corpus.languages()) {
        SkeletonProfile profile;
        profile.language = language;
        profile.table.resize(corpus.concepts.size());

        // same designated-form rule as build_profile, over the grouped forms
        std::map<std::string, std::pair<std::string, const WordForm*>> chosen;
        const auto it = forms_by_language.find(language);
        if (it != forms_by_language.end()) {
            for (const WordForm* form : it->second) {
                std::string key;
                for (std::size_t i = 0; i < form->segments.size(); ++i) {
                    if (i) key += ' ';
                    key += form->segments[i];
                }
                const auto pos = chosen.find(form->concept_id);
                if (pos == chosen.end() || key < pos->second.first)
                    chosen[form->concept_id] = {std::move(key), form};
            }
        }
        for (std::size_t c = 0; c < corpus.concepts.size(); ++c) {
            const auto pos = chosen.find(corpus.concepts[c]);
            if (pos != chosen.end()) profile.table[c] = skeleton(pos->second.second->segments, map);
        }
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

int count_matches(const SkeletonProfile& a, const SkeletonProfile& b) {
    if (a.table.size() != b.table.size())
        throw ArgumentError("count_matches: profiles built from different inventories");
    int matches = 0;
    for (std::size_t c = 0; c < a.table.size(); ++c)
        if (a.table[c] && b.table[c] && *a.table[c] == *b.table[c]) ++matches;
    return matches;
}

BaselineDecision classify_baseline(const SkeletonProfile& query,
                                   std::span<const SkeletonProfile> training,
                                   std::span<const std::string> training_families) {
    if (training.empty()) throw ArgumentError("classify_baseline: empty training set");
    if (training.size() != training_families.size())
        throw ArgumentError("classify_baseline: training/family length mismatch");

    const bool attested =
        std::any_of(query.table.begin(), query.table.end(), [](const auto& s) { return s.has_value(); });
    if (!attested)
        throw UnclassifiableError("language " + query.language + " attests no concepts");

    int best_score = -1;
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < training.size(); ++i) {
        const int score = count_matches(query, training[i]);
        if (score > best_score) {
            best_score = score;
            tied.clear();
        }
        if (score == best_score) tied.push_back(i);
    }

    // tie-break 1: most frequent family among the tied languages
    std::map<std::string, int> family_counts;
    for (const std::size_t i : tied) ++family_counts[training_families[i]];
    int best_count = 0;
    for (const auto& [family, count] : family_counts) best_count = std::max(best_count, count);

    // tie-break 2: lexicographically smallest family name (map iteration order)
    std::string family;
    for (const auto& [name, count] : family_counts) {
        if (count == best_count) {
            family = name;
            break;
        }
    }

    // tie-break 3: smallest language id within the chosen family
    LanguageId best_language;
    for (const std::size_t i : tied) {
        if (training_families[i] != family) continue;
        if (best_language.empty() || training[i].language < best_language)
            best_language = training[i].language;
    }

    return {family, best_language, best_score};
}

}  // namespace lingaff
