#include <doctest.h>

#include "lingaff/corpus.hpp"
#include "lingaff/error.hpp"
#include "lingaff/synth.hpp"
#include "test_util.hpp"

using namespace lingaff;
using testutil::TempDir;

namespace {

const std::vector<std::string> kConcepts{"hand", "moon", "sun"};

}  // namespace

TEST_CASE("load_wordlist maps rows to word forms") {
    TempDir dir;
    const auto path = dir.file("wordlist.tsv",
                               "ID\tLanguage_ID\tParameter_ID\tSegments\n"
                               "1\tdeu1000\thand\th a n t\n");
    const auto loaded = load_wordlist(path, kConcepts);
    REQUIRE(loaded.forms.size() == 1);
    CHECK(loaded.forms[0].language == "deu1000");
    CHECK(loaded.forms[0].concept_id == "hand");
    CHECK(loaded.forms[0].segments == std::vector<std::string>{"h", "a", "n", "t"});
    CHECK(loaded.skipped_out_of_inventory == 0);
}

TEST_CASE("load_wordlist with zero data rows yields an empty sequence") {
    TempDir dir;
    const auto path = dir.file("wordlist.tsv", "ID\tLanguage_ID\tParameter_ID\tSegments\n");
    const auto loaded = load_wordlist(path, kConcepts);
    CHECK(loaded.forms.empty());
}

TEST_CASE("load_wordlist skip-counts out-of-inventory rows") {
    TempDir dir;
    const auto path = dir.file("wordlist.tsv",
                               "ID\tLanguage_ID\tParameter_ID\tSegments\n"
                               "1\tx1\tmoon\tm u n\n");
    const std::vector<std::string> inventory{"hand", "sun"};  // no "moon"
    const auto loaded = load_wordlist(path, inventory);
    CHECK(loaded.forms.empty());
    CHECK(loaded.skipped_out_of_inventory == 1);
}

TEST_CASE("load_wordlist errors name the line number") {
    TempDir dir;
    SUBCASE("wrong column count") {
        const auto path = dir.file("wordlist.tsv",
                                   "ID\tLanguage_ID\tParameter_ID\tSegments\n"
                                   "1\tx1\thand\th a\n"
                                   "2\tx1\thand\n");
        CHECK_THROWS_WITH_AS(load_wordlist(path, kConcepts),
                             doctest::Contains(":3:"), ParseError);
    }
    SUBCASE("empty segments") {
        const auto path = dir.file("wordlist.tsv",
                                   "ID\tLanguage_ID\tParameter_ID\tSegments\n"
                                   "1\tx1\thand\t\n");
        CHECK_THROWS_WITH_AS(load_wordlist(path, kConcepts),
                             doctest::Contains("empty Segments"), ParseError);
    }
    SUBCASE("bad header") {
        const auto path = dir.file("wordlist.tsv", "A\tB\n1\t2\n");
        CHECK_THROWS_AS(load_wordlist(path, kConcepts), ParseError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_wordlist((dir.path() / "nope.tsv").string(), kConcepts), ParseError);
    }
}

TEST_CASE("load_features parses values and missing data") {
    TempDir dir;
    const std::vector<FeatureSpec> specs{{"GB020", FeatureKind::binary},
                                         {"GB193", FeatureKind::three_valued}};
    const auto path = dir.file("features.tsv",
                               "Language_ID\tParameter_ID\tValue\n"
                               "x1\tGB020\t1\n"
                               "x1\tGB193\t-\n");
    const auto loaded = load_features(path, specs);
    REQUIRE(loaded.values.size() == 2);
    CHECK(loaded.values[0].value == 1);
    CHECK_FALSE(loaded.values[1].value.has_value());
}

TEST_CASE("load_features validates the declared kind") {
    TempDir dir;
    const std::vector<FeatureSpec> specs{{"GB020", FeatureKind::binary}};
    const auto path = dir.file("features.tsv",
                               "Language_ID\tParameter_ID\tValue\n"
                               "x1\tGB020\t3\n");
    CHECK_THROWS_WITH_AS(load_features(path, specs), doctest::Contains("GB020"), ValidationError);

    const auto tri_zero = dir.file("tri.tsv",
                                   "Language_ID\tParameter_ID\tValue\n"
                                   "x1\tT1\t0\n");
    const std::vector<FeatureSpec> tri{{"T1", FeatureKind::three_valued}};
    CHECK_THROWS_AS(load_features(tri_zero, tri), ValidationError);
}

TEST_CASE("load_features skip-counts unknown feature ids") {
    TempDir dir;
    const std::vector<FeatureSpec> specs{{"GB020", FeatureKind::binary}};
    const auto path = dir.file("features.tsv",
                               "Language_ID\tParameter_ID\tValue\n"
                               "x1\tZZ999\t1\n");
    const auto loaded = load_features(path, specs);
    CHECK(loaded.values.empty());
    CHECK(loaded.skipped_unknown_feature == 1);
}

TEST_CASE("load_labels accepts Isolate and collapses duplicates") {
    TempDir dir;
    const auto path = dir.file("labels.tsv",
                               "Language_ID\tFamily\n"
                               "bang1363\tIsolate\n"
                               "bang1363\tIsolate\n");
    const auto labels = load_labels(path);
    REQUIRE(labels.size() == 1);
    CHECK(labels[0].language == "bang1363");
    CHECK(labels[0].family == "Isolate");
}

TEST_CASE("load_labels rejects conflicting families") {
    TempDir dir;
    const auto path = dir.file("labels.tsv",
                               "Language_ID\tFamily\n"
                               "x1\tA\n"
                               "x1\tB\n");
    CHECK_THROWS_WITH_AS(load_labels(path), doctest::Contains("x1"), ConflictError);
}

TEST_CASE("filter_min_family_size keeps exactly the large families") {
    Corpus corpus;
    corpus.concepts = {"hand"};
    for (int i = 0; i < 5; ++i) corpus.labels.push_back({"a" + std::to_string(i), "A"});
    for (int i = 0; i < 4; ++i) corpus.labels.push_back({"b" + std::to_string(i), "B"});
    corpus.forms.push_back({"a0", "hand", {"t", "a"}});
    corpus.forms.push_back({"b0", "hand", {"k", "a"}});

    const Corpus filtered = filter_min_family_size(corpus, 5);
    CHECK(filtered.languages() ==
          std::vector<LanguageId>{"a0", "a1", "a2", "a3", "a4"});
    CHECK(filtered.forms.size() == 1);
    CHECK(filtered.concepts == corpus.concepts);

    SUBCASE("k = 1 is the identity") { CHECK(filter_min_family_size(corpus, 1) == corpus); }
    SUBCASE("k < 1 is rejected") { CHECK_THROWS_AS(filter_min_family_size(corpus, 0), ArgumentError); }
    SUBCASE("idempotent") {
        CHECK(filter_min_family_size(filtered, 5) == filtered);
    }
}

TEST_CASE("validate_corpus enforces label completeness") {
    Corpus corpus;
    corpus.concepts = {"hand"};
    corpus.forms.push_back({"x1", "hand", {"t", "a"}});
    CHECK_THROWS_WITH_AS(validate_corpus(corpus), doctest::Contains("no label"), ValidationError);

    corpus.labels.push_back({"x1", "A"});
    CHECK_NOTHROW(validate_corpus(corpus));
}

TEST_CASE("validate_corpus rejects conflicting duplicate feature values") {
    Corpus corpus;
    corpus.features = {{"F1", FeatureKind::binary}};
    corpus.labels.push_back({"x1", "A"});
    corpus.values.push_back({"x1", "F1", 0});
    corpus.values.push_back({"x1", "F1", 1});
    CHECK_THROWS_AS(validate_corpus(corpus), ConflictError);
}

TEST_CASE("corpus save/load round-trips") {
    SynthConfig config;
    config.n_families = 4;
    config.languages_per_family = 3;
    config.n_concepts = 12;
    config.n_features = 6;
    config.p = 0.2;
    config.q = 0.1;
    config.r = 0.2;
    config.mu = 0.15;
    config.seed = 77;
    const Corpus corpus = generate(config);
    validate_corpus(corpus);

    TempDir dir;
    save_corpus(corpus, dir.path().string());

    CorpusPaths paths;
    paths.wordlist = (dir.path() / "wordlist.tsv").string();
    paths.features = (dir.path() / "features.tsv").string();
    paths.labels = (dir.path() / "labels.tsv").string();
    paths.concepts = (dir.path() / "concepts.txt").string();
    paths.features_meta = (dir.path() / "features_meta.tsv").string();
    LoadReport report;
    const Corpus reloaded = load_corpus(paths, &report);

    CHECK(reloaded == corpus);
    CHECK(report.wordlist_rows_skipped == 0);
    CHECK(report.feature_rows_skipped == 0);
}
