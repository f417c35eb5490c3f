#pragma once

// Dolgopolsky sound classes and first-two-consonant-class skeletons.
//
// Every phonetic segment token maps to one of the ten consonant classes, to
// Vowel, or to Ignore. A word form is reduced to the classes of its first
// two consonants; a word-initial vowel counts as the special class H.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lingaff {

/// The ten Dolgopolsky consonant classes, in canonical index order 0..9.
enum class SoundClass : std::uint8_t { P, T, S, K, M, N, R, W, J, H };

inline constexpr int kNumSoundClasses = 10;

constexpr int index_of(SoundClass c) { return static_cast<int>(c); }
constexpr char letter_of(SoundClass c) { return "PTSKMNRWJH"[static_cast<int>(c)]; }

/// Result category of classifying one segment token.
enum class SegmentCategory : std::uint8_t {
    P, T, S, K, M, N, R, W, J, H,  // consonant classes, same order as SoundClass
    vowel,
    ignore,
};

constexpr bool is_consonant(SegmentCategory c) {
    return static_cast<std::uint8_t>(c) < kNumSoundClasses;
}

/// Valid only when is_consonant(c).
constexpr SoundClass to_sound_class(SegmentCategory c) {
    return static_cast<SoundClass>(static_cast<std::uint8_t>(c));
}

/// Lookup table segment token -> category. Tokens absent from the table
/// classify as ignore.
struct ClassMap {
    std::unordered_map<std::string, SegmentCategory> table;
};

/// The class letters used in classmap files: PTSKMNRWJH plus V (vowel) and
/// 0 (ignore).
std::optional<SegmentCategory> category_from_letter(const std::string& letter);
std::string letter_from_category(SegmentCategory c);

/// Parse classmap text: one "token<TAB>class" pair per line, '#' comments and
/// blank lines allowed, no header.
ClassMap parse_classmap(const std::string& text, const std::string& origin = "<classmap>");

/// Load a classmap file (same format as parse_classmap).
ClassMap load_classmap(const std::string& path);

/// Built-in default map covering a broad IPA inventory. Identical to the
/// shipped data/classmap.tsv.
const ClassMap& default_classmap();

/// The text the default map is built from, for re-serialization.
std::string default_classmap_text();

/// Deterministic total lookup; unknown tokens classify as ignore.
SegmentCategory classify_segment(const std::string& token, const ClassMap& map);

/// Classes of the first two consonants of a word. An initial vowel yields H
/// in the first slot. second has a value only when first does.
struct Skeleton {
    std::optional<SoundClass> first;
    std::optional<SoundClass> second;

    bool operator==(const Skeleton&) const = default;
    bool empty() const { return !first.has_value(); }
};

/// Reduce a segment sequence to its skeleton: skip leading ignored tokens;
/// if the word then starts with a vowel, take H as the first class; collect
/// consonant classes left to right (vowels and ignored tokens skipped) until
/// two slots are filled or the word ends.
Skeleton skeleton(std::span<const std::string> segments, const ClassMap& map);

/// "T-", "NR", "KK", "--": one letter per slot, '-' for an absent slot.
std::string skeleton_string(const Skeleton& s);

/// Full class transcription of a word, one letter per non-ignored segment
/// ('V' for vowels), e.g. [d, e] -> "TV". Ignored segments are dropped.
std::string sound_class_string(std::span<const std::string> segments, const ClassMap& map);

/// Tokens absent from the map, with occurrence counts, across a set of word
/// forms. Callers surface this as the unknown-segment report of a run.
std::map<std::string, long> unknown_segment_tally(
    std::span<const std::vector<std::string>> segment_sequences, const ClassMap& map);

}  // namespace lingaff
