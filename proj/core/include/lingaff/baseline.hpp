#pragma once

// Nearest-language classifier: count words matching in the first two
// consonant classes and adopt the family of the best-matching language.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lingaff/corpus.hpp"
#include "lingaff/soundclass.hpp"

namespace lingaff {

/// Skeletons of one language, one slot per inventory concept; nullopt where
/// the concept is unattested.
struct SkeletonProfile {
    LanguageId language;
    std::vector<std::optional<Skeleton>> table;
};

/// Profile of one language under the corpus concept inventory, using the
/// designated form per concept.
SkeletonProfile build_profile(const Corpus& corpus, const LanguageId& language, const ClassMap& map);

/// Profiles for all labelled languages, in corpus.languages() order.
std::vector<SkeletonProfile> build_profiles(const Corpus& corpus, const ClassMap& map);

/// Number of concepts attested in both profiles whose skeletons are equal,
/// comparing both slots (absent equals absent).
int count_matches(const SkeletonProfile& a, const SkeletonProfile& b);

struct BaselineDecision {
    std::string family;
    LanguageId best;
    int score = 0;
};

/// Family of the argmax training language by count_matches. Ties break by
/// (1) most frequent family among the tied languages, (2) lexicographically
/// smallest family name, (3) lexicographically smallest language id.
/// A query attesting zero concepts is an UnclassifiableError.
BaselineDecision classify_baseline(const SkeletonProfile& query,
                                   std::span<const SkeletonProfile> training,
                                   std::span<const std::string> training_families);

}  // namespace lingaff
