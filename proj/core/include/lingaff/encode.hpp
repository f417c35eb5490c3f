#pragma once

// Fixed-width binary vectors per language.
//
// Lexical layout: concept-major, two 10-wide one-hot blocks per concept
// (first consonant class, then second). Grammatical layout: feature-major,
// one 2-wide block per feature. Combined: lexical block then grammatical
// block. Layout depends only on the inventories, the class map, and the
// synonym rule, so languages encoded from different corpora sharing
// inventories are directly comparable.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lingaff/corpus.hpp"
#include "lingaff/matrix.hpp"
#include "lingaff/soundclass.hpp"

namespace lingaff {

enum class EncodeMode { lexical, grammatical, combined };

std::string to_string(EncodeMode mode);
EncodeMode encode_mode_from_string(const std::string& name);

/// When a (language, concept) pair has several forms, the designated form is
/// the one whose space-joined segment string is lexicographically smallest.
/// Returns concept -> segments for every concept the language attests.
std::map<std::string, std::vector<std::string>> select_forms(const Corpus& corpus,
                                                             const LanguageId& language);

/// Length |concepts| * 20; all-zero blocks for unattested concepts and
/// absent skeleton slots.
std::vector<std::uint8_t> encode_lexical(const Corpus& corpus, const LanguageId& language,
                                         const ClassMap& map);

/// Length |features| * 2. Binary features: 0 -> [1,0], 1 -> [0,1].
/// Three-valued: 1 -> [1,0], 2 -> [0,1], 3 -> [1,1]. Missing -> [0,0].
std::vector<std::uint8_t> encode_grammar(const Corpus& corpus, const LanguageId& language);

/// Concatenation, lexical block first.
std::vector<std::uint8_t> encode_combined(std::span<const std::uint8_t> lexical,
                                          std::span<const std::uint8_t> grammar);

/// One row per labelled language, rows in corpus.languages() order. The
/// family index table is built from the sorted distinct family names.
struct EncodedDataset {
    EncodeMode mode = EncodeMode::lexical;
    int lexical_width = 0;
    int grammar_width = 0;
    std::vector<LanguageId> languages;   // row order
    Mat<float> vectors;                  // entries are exactly 0.0f or 1.0f
    std::vector<int> targets;            // family index per row
    std::vector<std::string> families;   // index -> family name, sorted

    int width() const { return vectors.cols(); }
    int rows() const { return vectors.rows(); }
};

EncodedDataset encode_dataset(const Corpus& corpus, EncodeMode mode, const ClassMap& map);

/// Rows of `ds` selected by index, preserving the family table.
EncodedDataset subset_dataset(const EncodedDataset& ds, std::span<const int> rows);

/// Encode one language with the dataset's layout (used for languages outside
/// the training corpus). `source` must share the corpus inventories.
std::vector<float> encode_for_dataset(const Corpus& source, const LanguageId& language,
                                      EncodeMode mode, const ClassMap& map);

/// Header line with mode, widths, and class count, then one line per
/// language: "Language_ID<TAB>family<TAB>bitstring".
void write_dataset_dump(const EncodedDataset& ds, std::ostream& out);

}  // namespace lingaff
