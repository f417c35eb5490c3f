#pragma once

// Wordlists, grammatical feature values, and family labels under fixed
// concept and feature inventories.
//
// File formats (UTF-8, LF, literal tabs):
//   wordlist.tsv       ID, Language_ID, Parameter_ID, Segments (space-separated)
//   features.tsv       Language_ID, Parameter_ID, Value   with Value in {0,1,2,3,-}
//   labels.tsv         Language_ID, Family
//   concepts.txt       one concept id per line, order significant
//   features_meta.tsv  Parameter_ID, Kind                 with Kind in {bin,tri}

#include <optional>
#include <string>
#include <vector>

namespace lingaff {

using LanguageId = std::string;

struct WordForm {
    LanguageId language;
    std::string concept_id;
    std::vector<std::string> segments;

    bool operator==(const WordForm&) const = default;
};

enum class FeatureKind { binary, three_valued };

struct FeatureSpec {
    std::string id;
    FeatureKind kind = FeatureKind::binary;

    bool operator==(const FeatureSpec&) const = default;
};

/// nullopt encodes missing data ("-" in files).
struct FeatureValue {
    LanguageId language;
    std::string feature;
    std::optional<int> value;

    bool operator==(const FeatureValue&) const = default;
};

/// "Isolate" is an ordinary family value reserved for unaffiliated languages.
struct FamilyLabel {
    LanguageId language;
    std::string family;

    bool operator==(const FamilyLabel&) const = default;
};

inline constexpr const char* kIsolateFamily = "Isolate";

struct Corpus {
    std::vector<std::string> concepts;        // inventory, order fixed at load
    std::vector<FeatureSpec> features;        // inventory, order fixed at load
    std::vector<WordForm> forms;
    std::vector<FeatureValue> values;
    std::vector<FamilyLabel> labels;

    bool operator==(const Corpus&) const = default;

    /// Labelled languages in sorted order; this is the row order of every
    /// encoding derived from the corpus.
    std::vector<LanguageId> languages() const;

    /// Family of a language, or nullopt when unlabelled.
    std::optional<std::string> family_of(const LanguageId& language) const;

    bool has_language(const LanguageId& language) const;
};

std::vector<std::string> load_concepts(const std::string& path);
std::vector<FeatureSpec> load_features_meta(const std::string& path);

struct WordlistLoad {
    std::vector<WordForm> forms;
    long skipped_out_of_inventory = 0;
};

/// Rows whose Parameter_ID is outside the inventory are skip-counted, not
/// errors (probe wordlists legitimately contain extra entries).
WordlistLoad load_wordlist(const std::string& path, const std::vector<std::string>& concepts);

struct FeaturesLoad {
    std::vector<FeatureValue> values;
    long skipped_unknown_feature = 0;
};

FeaturesLoad load_features(const std::string& path, const std::vector<FeatureSpec>& features);

/// Duplicate rows with identical family collapse to one label; the same
/// language under two distinct families is a ConflictError.
std::vector<FamilyLabel> load_labels(const std::string& path);

/// Paths for assembling a corpus; features/features_meta may be empty when
/// only lexical data is used.
struct CorpusPaths {
    std::string wordlist;
    std::string features;
    std::string labels;
    std::string concepts;
    std::string features_meta;
};

struct LoadReport {
    long wordlist_rows_skipped = 0;
    long feature_rows_skipped = 0;
};

/// Load, assemble, and validate a corpus.
Corpus load_corpus(const CorpusPaths& paths, LoadReport* report = nullptr);

/// Check the corpus invariants: inventory membership of all forms and
/// values, feature-kind conformance, exactly one label per referenced
/// language, non-empty segment sequences. Throws on violation.
void validate_corpus(const Corpus& corpus);

/// Write wordlist.tsv, labels.tsv, concepts.txt and, when the corpus has a
/// feature inventory, features.tsv and features_meta.tsv, into `dir`.
void save_corpus(const Corpus& corpus, const std::string& dir);

/// Keep exactly the languages whose family has at least `k` members.
/// Inventories are unchanged. k < 1 is an ArgumentError.
Corpus filter_min_family_size(const Corpus& corpus, int k);

}  // namespace lingaff
