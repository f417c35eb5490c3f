#include <doctest.h>

#include <map>
#include <set>

#include "lingaff/baseline.hpp"
#include "lingaff/error.hpp"
#include "lingaff/rng.hpp"
#include "lingaff/soundclass.hpp"
#include "lingaff/synth.hpp"

using namespace lingaff;

TEST_CASE("generation is deterministic with exact family sizes") {
    SynthConfig config;
    config.n_families = 6;
    config.languages_per_family = 7;
    config.n_concepts = 9;
    config.n_features = 5;
    config.p = 0.2;
    config.q = 0.1;
    config.r = 0.3;
    config.mu = 0.2;
    config.seed = 31;

    const Corpus a = generate(config);
    const Corpus b = generate(config);
    CHECK(a == b);

    std::map<std::string, int> family_sizes;
    for (const auto& label : a.labels) ++family_sizes[label.family];
    CHECK(family_sizes.size() == 6);
    for (const auto& [family, size] : family_sizes) CHECK(size == 7);

    CHECK(a.concepts.size() == 9);
    CHECK(a.features.size() == 5);
    validate_corpus(a);
}

TEST_CASE("rendered segments round-trip through skeleton") {
    const ClassMap& map = default_classmap();
    Pcg32 rng(12);
    for (int trial = 0; trial < 500; ++trial) {
        Skeleton s;
        s.first = static_cast<SoundClass>(rng.next_below(10));
        s.second = static_cast<SoundClass>(rng.next_below(10));
        CHECK(skeleton(render_skeleton(s), map) == s);

        Skeleton single;
        single.first = static_cast<SoundClass>(rng.next_below(10));
        CHECK(skeleton(render_skeleton(single), map) == single);
    }
    CHECK(render_skeleton(Skeleton{}).empty());
}

TEST_CASE("exemplar segments map back to their own class") {
    const ClassMap& map = default_classmap();
    for (int c = 0; c < kNumSoundClasses; ++c) {
        const auto cls = static_cast<SoundClass>(c);
        const auto category = classify_segment(exemplar_segment(cls), map);
        REQUIRE(is_consonant(category));
        CHECK(to_sound_class(category) == cls);
    }
}

TEST_CASE("zero noise copies the proto-profile exactly") {
    SynthConfig config;
    config.n_families = 3;
    config.languages_per_family = 4;
    config.n_concepts = 10;
    config.n_features = 4;
    config.seed = 8;

    const Corpus corpus = generate(config);
    const ClassMap& map = default_classmap();
    const auto profiles = build_profiles(corpus, map);

    std::map<std::string, std::vector<const SkeletonProfile*>> by_family;
    for (const auto& profile : profiles)
        by_family[*corpus.family_of(profile.language)].push_back(&profile);

    for (const auto& [family, members] : by_family)
        for (std::size_t i = 1; i < members.size(); ++i) {
            CHECK(members[i]->table == members[0]->table);
            CHECK(count_matches(*members[i], *members[0]) == 10);
        }
}

TEST_CASE("mu = 1 attests nothing and the baseline refuses to classify") {
    SynthConfig config;
    config.n_families = 2;
    config.languages_per_family = 3;
    config.n_concepts = 5;
    config.n_features = 2;
    config.mu = 1.0;
    config.seed = 3;

    const Corpus corpus = generate(config);
    CHECK(corpus.forms.empty());
    for (const auto& value : corpus.values) CHECK_FALSE(value.value.has_value());

    const auto profiles = build_profiles(corpus, default_classmap());
    std::vector<std::string> families;
    for (const auto& profile : profiles) families.push_back(*corpus.family_of(profile.language));
    CHECK_THROWS_AS(
        classify_baseline(profiles[0], std::span(profiles).subspan(1), std::span(families).subspan(1)),
        UnclassifiableError);
}

TEST_CASE("invalid configurations are rejected") {
    SynthConfig config;
    config.n_families = 0;
    CHECK_THROWS_AS(generate(config), ArgumentError);
    config.n_families = 1;
    config.p = 1.5;
    CHECK_THROWS_AS(generate(config), ArgumentError);
}

TEST_CASE("increasing q lowers mean within-family skeleton agreement") {
    const ClassMap& map = default_classmap();
    const auto mean_within_family_matches = [&map](double q, std::uint64_t seed) {
        SynthConfig config;
        config.n_families = 6;
        config.languages_per_family = 4;
        config.n_concepts = 40;
        config.n_features = 1;
        config.q = q;
        config.seed = seed;
        const Corpus corpus = generate(config);
        const auto profiles = build_profiles(corpus, map);

        std::map<std::string, std::vector<const SkeletonProfile*>> by_family;
        for (const auto& profile : profiles)
            by_family[*corpus.family_of(profile.language)].push_back(&profile);
        double total = 0.0;
        long pairs = 0;
        for (const auto& [family, members] : by_family)
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    total += count_matches(*members[i], *members[j]);
                    ++pairs;
                }
        return total / static_cast<double>(pairs);
    };

    for (const std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
        const double at0 = mean_within_family_matches(0.0, seed);
        const double at2 = mean_within_family_matches(0.2, seed);
        const double at4 = mean_within_family_matches(0.4, seed);
        CHECK(at0 > at2);
        CHECK(at2 > at4);
    }
}

TEST_CASE("within-family match rate agrees with a direct simulation of the process") {
    const double p = 0.1, q = 0.1;

    // simulate the per-concept generative process exactly as documented:
    // proto skeleton with two uniform class slots; each descendant replaces
    // the whole skeleton with probability q, otherwise remutates each slot
    // with probability p
    Pcg32 sim_rng(909);
    long matches = 0;
    const long trials = 400000;
    for (long t = 0; t < trials; ++t) {
        const int proto_first = static_cast<int>(sim_rng.next_below(10));
        const int proto_second = static_cast<int>(sim_rng.next_below(10));
        int slots[2][2];
        for (int lang = 0; lang < 2; ++lang) {
            if (sim_rng.bernoulli(q)) {
                slots[lang][0] = static_cast<int>(sim_rng.next_below(10));
                slots[lang][1] = static_cast<int>(sim_rng.next_below(10));
            } else {
                slots[lang][0] =
                    sim_rng.bernoulli(p) ? static_cast<int>(sim_rng.next_below(10)) : proto_first;
                slots[lang][1] =
                    sim_rng.bernoulli(p) ? static_cast<int>(sim_rng.next_below(10)) : proto_second;
            }
        }
        if (slots[0][0] == slots[1][0] && slots[0][1] == slots[1][1]) ++matches;
    }
    const double simulated = static_cast<double>(matches) / static_cast<double>(trials);

    // empirical rate over a generated corpus, conditioned on joint attestation
    SynthConfig config;
    config.n_families = 30;
    config.languages_per_family = 8;
    config.n_concepts = 100;
    config.n_features = 1;
    config.p = p;
    config.q = q;
    config.mu = 0.05;
    config.seed = 1234;
    const Corpus corpus = generate(config);
    const auto profiles = build_profiles(corpus, default_classmap());

    std::map<std::string, std::vector<const SkeletonProfile*>> by_family;
    for (const auto& profile : profiles)
        by_family[*corpus.family_of(profile.language)].push_back(&profile);

    long attested_pairs = 0, matched_pairs = 0;
    for (const auto& [family, members] : by_family)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                for (std::size_t c = 0; c < corpus.concepts.size(); ++c) {
                    const auto& a = members[i]->table[c];
                    const auto& b = members[j]->table[c];
                    if (!a.has_value() || !b.has_value()) continue;
                    ++attested_pairs;
                    if (*a == *b) ++matched_pairs;
                }
    const double empirical = static_cast<double>(matched_pairs) / static_cast<double>(attested_pairs);

    CHECK(std::abs(empirical - simulated) < 0.02);
}
