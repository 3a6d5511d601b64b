#pragma once

#include "stemsim/compare.hpp"
#include "stemsim/corpus.hpp"
#include "stemsim/measures.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stemsim {

/// Significance thresholds: Histo .56, LCIS .76, GIT .15, BC .13, LCCS .22,
/// GCT .10, Enco .06.
ThresholdConfig default_thresholds();

/// Summary statistics of one measure over a random pair sample. Percentiles
/// use the nearest-rank definition on the applicable scores; statistics are
/// absent when no pair was applicable.
struct ScoreDistribution {
    Measure measure = Measure::histo;
    std::size_t sample_size = 0;
    std::size_t applicable_count = 0;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> median;
    std::optional<double> p90;
    std::optional<double> p99;
    std::optional<double> p999;
};

/// n distinct unordered random pairs, excluding pairs that share a
/// normalized author and pairs where either document cites the other.
/// Deterministic for a fixed seed. Throws Error when the corpus cannot
/// yield n pairs within the attempt budget (default 200*n + 100000 draws);
/// the message reports how many pairs were found.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const CorpusFeatures& features,
                                                              std::size_t n, std::uint64_t seed,
                                                              std::size_t max_attempts = 0);

/// Scores every pair with all measures and summarizes each one.
/// Not-applicable results are excluded from the statistics and counted.
std::array<ScoreDistribution, kMeasureCount> score_distributions(
    const CorpusFeatures& features, std::span<const std::pair<std::size_t, std::size_t>> pairs,
    const MeasureGates& gates, std::size_t threads = 1);

ScoreDistribution score_distribution(Measure measure, const CorpusFeatures& features,
                                     std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                     const MeasureGates& gates, std::size_t threads = 1);

/// Percentile-based threshold suggestion (p99.9 of the chance-level sample).
/// A heuristic starting point, not the calibrated defaults; measures without
/// applicable pairs keep their default threshold.
ThresholdConfig suggest_thresholds(std::span<const ScoreDistribution> distributions);

} // namespace stemsim
