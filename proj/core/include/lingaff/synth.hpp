#pragma once

// Synthetic corpora with planted family structure. Each family draws a
// proto-profile of random two-class skeletons; descendants copy it under
// per-concept replacement (q), per-slot mutation (p), and attrition (mu).
// Grammatical features are family-level random bits flipped per language
// with probability r. Word forms are rendered from skeletons through a fixed
// class-to-exemplar-segment table, so generated data flows through the same
// files and class map as real data.

#include <cstdint>
#include <string>
#include <vector>

#include "lingaff/corpus.hpp"
#include "lingaff/soundclass.hpp"

namespace lingaff {

struct SynthConfig {
    int n_families = 1;
    int languages_per_family = 1;
    int n_concepts = 1;
    int n_features = 1;
    double p = 0.0;   // per-slot class mutation probability
    double q = 0.0;   // per-concept skeleton replacement probability
    double r = 0.0;   // per-feature flip probability
    double mu = 0.0;  // missing-data probability (concepts and features)
    std::uint64_t seed = 0;
};

/// "p" for class P, ..., "h" for class H.
std::string exemplar_segment(SoundClass c);

/// Minimal segment sequence whose skeleton is s, using exemplar segments and
/// the vowel filler "a".
std::vector<std::string> render_skeleton(const Skeleton& s);

/// Deterministic under config.seed; family sizes are exactly as configured.
/// Family f is named "fam00".., language l of family f "fam00_l00"..
Corpus generate(const SynthConfig& config);

}  // namespace lingaff
