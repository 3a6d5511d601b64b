#pragma once

#include "stemsim/corpus.hpp"
#include "stemsim/measures.hpp"

#include <array>
#include <string>

namespace stemsim {

/// Applicability gates for the detailed-analysis measures.
struct MeasureGates {
    std::size_t min_shared_identifiers = 20;  // distinct symbols shared by the pair
    std::size_t min_references = 3;           // per document, for citation measures
    std::size_t identifier_tile_min = 5;
    std::size_t citation_tile_min = 2;
};

/// All seven measure scores for one ordered document pair (doc_a is the
/// query). A verdict is true iff the score is applicable and at least the
/// measure's significance threshold.
struct SimilarityReport {
    std::string doc_a;
    std::string doc_b;
    std::array<MeasureScore, kMeasureCount> scores;
    std::array<bool, kMeasureCount> verdicts{};
    std::vector<Tile> identifier_tiles;
    std::vector<Tile> citation_tiles;

    const MeasureScore& score(Measure m) const { return scores[static_cast<std::size_t>(m)]; }
    bool verdict(Measure m) const { return verdicts[static_cast<std::size_t>(m)]; }
};

SimilarityReport compare_pair(const DocumentFeatures& query, const DocumentFeatures& candidate,
                              const MeasureGates& gates, const ThresholdConfig& thresholds);

/// Histo and GIT only (same gates as compare_pair). Used by the exploratory
/// scan, which filters on these two scores before computing full reports.
struct MathPairScores {
    std::optional<double> histo;
    std::optional<double> git;
};

MathPairScores math_pair_scores(const DocumentFeatures& query, const DocumentFeatures& candidate,
                                const MeasureGates& gates);

} // namespace stemsim
