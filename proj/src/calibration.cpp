#include "stemsim/calibration.hpp"

#include "stemsim/errors.hpp"
#include "stemsim/util.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace stemsim {

ThresholdConfig default_thresholds() {
    ThresholdConfig config;
    config.set(Measure::histo, 0.56);
    config.set(Measure::lcis, 0.76);
    config.set(Measure::git, 0.15);
    config.set(Measure::bc, 0.13);
    config.set(Measure::lccs, 0.22);
    config.set(Measure::gct, 0.10);
    config.set(Measure::enco, 0.06);
    return config;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const CorpusFeatures& features,
                                                              std::size_t n, std::uint64_t seed,
                                                              std::size_t max_attempts) {
    if (features.size() < 2) {
        throw Error("pair sampling needs at least 2 documents, corpus has " +
                    std::to_string(features.size()));
    }
    if (n == 0) {
        return {};
    }
    if (max_attempts == 0) {
        max_attempts = 200 * n + 100000;
    }
    std::mt19937_64 rng(seed);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n);
    for (std::size_t attempt = 0; attempt < max_attempts && pairs.size() < n; ++attempt) {
        const std::size_t a = bounded_draw(rng, features.size());
        const std::size_t b = bounded_draw(rng, features.size());
        if (a == b) {
            continue;
        }
        const std::pair<std::size_t, std::size_t> key{std::min(a, b), std::max(a, b)};
        if (seen.contains(key)) {
            continue;
        }
        if (features.share_author(a, b) || features.cites(a, b) || features.cites(b, a)) {
            continue;
        }
        seen.insert(key);
        pairs.push_back(key);
    }
    if (pairs.size() < n) {
        throw Error("pair sampling exhausted after finding " + std::to_string(pairs.size()) +
                    " of " + std::to_string(n) + " requested pairs");
    }
    return pairs;
}

namespace {

std::optional<double> nearest_rank(const std::vector<double>& sorted, double percentile) {
    if (sorted.empty()) {
        return std::nullopt;
    }
    const double rank = std::ceil(percentile / 100.0 * static_cast<double>(sorted.size()));
    const std::size_t idx =
        std::min(sorted.size() - 1, static_cast<std::size_t>(std::max(rank, 1.0)) - 1);
    return sorted[idx];
}

} // namespace

std::array<ScoreDistribution, kMeasureCount> score_distributions(
    const CorpusFeatures& features, std::span<const std::pair<std::size_t, std::size_t>> pairs,
    const MeasureGates& gates, std::size_t threads) {
    // Verdict thresholds do not influence the raw scores.
    const ThresholdConfig thresholds = default_thresholds();
    std::vector<std::array<std::optional<double>, kMeasureCount>> raw(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const SimilarityReport report =
            compare_pair(features.of(pairs[i].first), features.of(pairs[i].second), gates,
                         thresholds);
        for (Measure m : kAllMeasures) {
            raw[i][static_cast<std::size_t>(m)] = report.score(m).value;
        }
    });

    std::array<ScoreDistribution, kMeasureCount> out;
    for (Measure m : kAllMeasures) {
        const std::size_t mi = static_cast<std::size_t>(m);
        std::vector<double> scores;
        scores.reserve(pairs.size());
        for (const auto& row : raw) {
            if (row[mi]) {
                scores.push_back(*row[mi]);
            }
        }
        std::sort(scores.begin(), scores.end());
        ScoreDistribution& dist = out[mi];
        dist.measure = m;
        dist.sample_size = pairs.size();
        dist.applicable_count = scores.size();
        if (!scores.empty()) {
            dist.min = scores.front();
            dist.max = scores.back();
            dist.median = nearest_rank(scores, 50.0);
            dist.p90 = nearest_rank(scores, 90.0);
            dist.p99 = nearest_rank(scores, 99.0);
            dist.p999 = nearest_rank(scores, 99.9);
        }
    }
    return out;
}

ScoreDistribution score_distribution(Measure measure, const CorpusFeatures& features,
                                     std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                     const MeasureGates& gates, std::size_t threads) {
    return score_distributions(features, pairs, gates,
                               threads)[static_cast<std::size_t>(measure)];
}

ThresholdConfig suggest_thresholds(std::span<const ScoreDistribution> distributions) {
    ThresholdConfig config = default_thresholds();
    for (const ScoreDistribution& dist : distributions) {
        if (dist.p999) {
            config.set(dist.measure, *dist.p999);
        }
    }
    return config;
}

} // namespace stemsim
