#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lingaff/error.hpp"
#include "lingaff/rng.hpp"
#include "lingaff/soundclass.hpp"
#include "test_util.hpp"

using namespace lingaff;

namespace {

std::vector<std::string> seg(std::initializer_list<const char*> tokens) {
    return {tokens.begin(), tokens.end()};
}

}  // namespace

TEST_CASE("classify_segment under the default map") {
    const ClassMap& map = default_classmap();
    CHECK(classify_segment("d", map) == SegmentCategory::T);
    CHECK(classify_segment("a", map) == SegmentCategory::vowel);
    CHECK(classify_segment("k", map) == SegmentCategory::K);
    CHECK(classify_segment("m", map) == SegmentCategory::M);
    CHECK(classify_segment("ʘ", map) == SegmentCategory::ignore);  // unmapped
    CHECK(classify_segment("˥", map) == SegmentCategory::ignore);  // tone letter
}

TEST_CASE("canonical class order and letters") {
    CHECK(index_of(SoundClass::P) == 0);
    CHECK(index_of(SoundClass::T) == 1);
    CHECK(index_of(SoundClass::H) == 9);
    CHECK(letter_of(SoundClass::S) == 'S');
    CHECK(letter_of(SoundClass::J) == 'J');
}

TEST_CASE("skeleton of basic words") {
    const ClassMap& map = default_classmap();

    const Skeleton de = skeleton(seg({"d", "e"}), map);
    CHECK(de.first == SoundClass::T);
    CHECK_FALSE(de.second.has_value());
    CHECK(skeleton_string(de) == "T-");

    const Skeleton kokon = skeleton(seg({"k", "o", "k", "o", "n"}), map);
    CHECK(kokon.first == SoundClass::K);
    CHECK(kokon.second == SoundClass::K);
    CHECK(skeleton_string(kokon) == "KK");

    const Skeleton nala = skeleton(seg({"n", "a", "l", "a"}), map);
    CHECK(skeleton_string(nala) == "NR");
}

TEST_CASE("a word-initial vowel counts as class H") {
    const ClassMap& map = default_classmap();
    const Skeleton ama = skeleton(seg({"a", "m", "a"}), map);
    CHECK(ama.first == SoundClass::H);
    CHECK(ama.second == SoundClass::M);

    // only the initial vowel is special; later vowels are skipped
    const Skeleton tau = skeleton(seg({"t", "a", "u"}), map);
    CHECK(tau.first == SoundClass::T);
    CHECK_FALSE(tau.second.has_value());

    // ignored tokens before the vowel do not hide it
    const Skeleton toned = skeleton(seg({"˥", "a", "t", "a"}), map);
    CHECK(toned.first == SoundClass::H);
    CHECK(toned.second == SoundClass::T);
}

TEST_CASE("all-ignored input yields the empty skeleton") {
    const ClassMap& map = default_classmap();
    const Skeleton none = skeleton(seg({"˥", "˩"}), map);
    CHECK(none.empty());
    CHECK(skeleton_string(none) == "--");
}

TEST_CASE("sound class strings") {
    const ClassMap& map = default_classmap();
    CHECK(sound_class_string(seg({"d", "e"}), map) == "TV");
    CHECK(sound_class_string(seg({"n", "a", "l", "a"}), map) == "NVRV");
    CHECK(sound_class_string(seg({"k", "o", "k", "o", "n"}), map) == "KVKVN");
}

TEST_CASE("skeleton is invariant under non-initial vowel insertion") {
    const ClassMap& map = default_classmap();
    const std::vector<std::string> vowels{"a", "e", "i", "o", "u"};
    Pcg32 rng(2024);
    const std::vector<std::string> alphabet{"p", "t", "s", "k", "m", "n",
                                            "r", "w", "j", "h", "a", "e"};
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::string> word;
        const int length = 1 + static_cast<int>(rng.next_below(6));
        for (int i = 0; i < length; ++i)
            word.push_back(alphabet[rng.next_below(static_cast<std::uint32_t>(alphabet.size()))]);

        const Skeleton base = skeleton(word, map);

        auto enriched = word;
        const auto pos = 1 + rng.next_below(static_cast<std::uint32_t>(word.size()));
        enriched.insert(enriched.begin() + pos, vowels[rng.next_below(5)]);
        CHECK(skeleton(enriched, map) == base);
    }
}

TEST_CASE("skeleton never produces {absent, present}") {
    const ClassMap& map = default_classmap();
    Pcg32 rng(55);
    const std::vector<std::string> alphabet{"p", "a", "˥", "k", "e", "zz-unknown"};
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::string> word;
        const int length = 1 + static_cast<int>(rng.next_below(5));
        for (int i = 0; i < length; ++i)
            word.push_back(alphabet[rng.next_below(static_cast<std::uint32_t>(alphabet.size()))]);
        const Skeleton s = skeleton(word, map);
        if (s.second.has_value()) CHECK(s.first.has_value());
    }
}

TEST_CASE("classmap files parse and reject bad classes") {
    const ClassMap map = parse_classmap("x\tP\ny\tV\nz\t0\n# comment\n\n");
    CHECK(classify_segment("x", map) == SegmentCategory::P);
    CHECK(classify_segment("y", map) == SegmentCategory::vowel);
    CHECK(classify_segment("z", map) == SegmentCategory::ignore);

    CHECK_THROWS_AS(parse_classmap("x\tQ\n"), ParseError);
    CHECK_THROWS_AS(parse_classmap("onlyonecolumn\n"), ParseError);
}

TEST_CASE("shipped classmap.tsv equals the built-in map") {
    const std::string path = std::string(LINGAFF_SOURCE_DIR) + "/data/classmap.tsv";
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "data/classmap.tsv missing");
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(text.str() == default_classmap_text());

    const ClassMap from_file = load_classmap(path);
    CHECK(from_file.table == default_classmap().table);
}

TEST_CASE("unknown segments are tallied") {
    const ClassMap& map = default_classmap();
    const std::vector<std::vector<std::string>> sequences{{"p", "ʘ", "a"}, {"ʘ", "qq"}};
    const auto tally = unknown_segment_tally(sequences, map);
    REQUIRE(tally.size() == 2);
    CHECK(tally.at("ʘ") == 2);
    CHECK(tally.at("qq") == 1);
}
