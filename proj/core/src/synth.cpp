#include "lingaff/synth.hpp"

#include <cstdio>

#include "lingaff/error.hpp"
#include "lingaff/rng.hpp"

namespace lingaff {

namespace {

constexpr std::uint64_t kProtoStream = 0x51;
constexpr std::uint64_t kLanguageStream = 0x52;

std::string zero_padded(const char* prefix, int value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%02d", prefix, value);
    return buf;
}

void check_config(const SynthConfig& c) {
    if (c.n_families < 1 || c.languages_per_family < 1 || c.n_concepts < 1 || c.n_features < 1)
        throw ArgumentError("synth: counts must be >= 1");
    const auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!ok(c.p) || !ok(c.q) || !ok(c.r) || !ok(c.mu))
        throw ArgumentError("synth: probabilities must lie in [0,1]");
}

SoundClass random_class(Pcg32& rng) {
    return static_cast<SoundClass>(rng.next_below(kNumSoundClasses));
}

Skeleton random_skeleton(Pcg32& rng) {
    Skeleton s;
    s.first = random_class(rng);
    s.second = random_class(rng);
    return s;
}

}  // namespace

std::string exemplar_segment(SoundClass c) {
    static const char* const kExemplars[kNumSoundClasses] = {"p", "t", "s", "k", "m",
                                                             "n", "r", "w", "j", "h"};
    return kExemplars[index_of(c)];
}

std::vector<std::string> render_skeleton(const Skeleton& s) {
    std::vector<std::string> segments;
    if (!s.first) return segments;
    segments.push_back(exemplar_segment(*s.first));
    segments.push_back("a");
    if (s.second) segments.push_back(exemplar_segment(*s.second));
    return segments;
}

Corpus generate(const SynthConfig& config) {
    check_config(config);

    Corpus corpus;
    corpus.concepts.reserve(static_cast<std::size_t>(config.n_concepts));
    for (int c = 0; c < config.n_concepts; ++c)
        corpus.concepts.push_back(zero_padded("concept", c));
    corpus.features.reserve(static_cast<std::size_t>(config.n_features));
    for (int f = 0; f < config.n_features; ++f)
        corpus.features.push_back({zero_padded("feat", f), FeatureKind::binary});

    for (int fam = 0; fam < config.n_families; ++fam) {
        const std::string family = zero_padded("fam", fam);

        Pcg32 proto_rng(derive_seed(config.seed, kProtoStream, static_cast<std::uint64_t>(fam) + 1));
        std::vector<Skeleton> proto_skeletons(static_cast<std::size_t>(config.n_concepts));
        for (auto& s : proto_skeletons) s = random_skeleton(proto_rng);
        std::vector<bool> proto_bits(static_cast<std::size_t>(config.n_features));
        for (std::size_t f = 0; f < proto_bits.size(); ++f) proto_bits[f] = proto_rng.bernoulli(0.5);

        for (int lang = 0; lang < config.languages_per_family; ++lang) {
            const std::string language = family + zero_padded("_l", lang);
            corpus.labels.push_back({language, family});

            Pcg32 rng(derive_seed(config.seed, kLanguageStream,
                                  (static_cast<std::uint64_t>(fam) << 20) +
                                      static_cast<std::uint64_t>(lang) + 1));

            for (int c = 0; c < config.n_concepts; ++c) {
                Skeleton s = proto_skeletons[static_cast<std::size_t>(c)];
                if (rng.bernoulli(config.q)) {
                    s = random_skeleton(rng);
                } else {
                    if (rng.bernoulli(config.p)) s.first = random_class(rng);
                    if (rng.bernoulli(config.p)) s.second = random_class(rng);
                }
                if (rng.bernoulli(config.mu)) continue;  // concept unattested
                corpus.forms.push_back(
                    {language, corpus.concepts[static_cast<std::size_t>(c)], render_skeleton(s)});
            }

            for (int f = 0; f < config.n_features; ++f) {
                bool bit = proto_bits[static_cast<std::size_t>(f)];
                if (rng.bernoulli(config.r)) bit = !bit;
                const bool missing = rng.bernoulli(config.mu);
                corpus.values.push_back({language, corpus.features[static_cast<std::size_t>(f)].id,
                                         missing ? std::optional<int>{} : std::optional<int>{bit ? 1 : 0}});
            }
        }
    }
    return corpus;
}

}  // namespace lingaff
