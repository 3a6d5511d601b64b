#include "stemsim/compare.hpp"

#include <span>

namespace stemsim {

namespace {

void store(SimilarityReport& report, Measure m, MeasureScore score) {
    report.scores[static_cast<std::size_t>(m)] = std::move(score);
}

} // namespace

SimilarityReport compare_pair(const DocumentFeatures& query, const DocumentFeatures& candidate,
                              const MeasureGates& gates, const ThresholdConfig& thresholds) {
    SimilarityReport report;
    report.doc_a = query.doc_id;
    report.doc_b = candidate.doc_id;

    // Math-based measures share the 20-shared-identifier gate.
    if (query.identifier_total == 0 || candidate.identifier_total == 0) {
        const MeasureScore na = MeasureScore::not_applicable("no identifiers");
        store(report, Measure::histo, na);
        store(report, Measure::lcis, na);
        store(report, Measure::git, na);
    } else if (shared_distinct_identifiers(query, candidate) < gates.min_shared_identifiers) {
        const MeasureScore na = MeasureScore::not_applicable(
            "fewer than " + std::to_string(gates.min_shared_identifiers) +
            " shared identifiers");
        store(report, Measure::histo, na);
        store(report, Measure::lcis, na);
        store(report, Measure::git, na);
    } else {
        store(report, Measure::histo,
              MeasureScore::of(histo_value(
                  query.identifier_counts.begin(), query.identifier_counts.end(),
                  static_cast<double>(query.identifier_total), candidate.identifier_counts.begin(),
                  candidate.identifier_counts.end(),
                  static_cast<double>(candidate.identifier_total))));
        const std::span<const std::int32_t> ids_q(query.identifier_ids);
        const std::span<const std::int32_t> ids_c(candidate.identifier_ids);
        store(report, Measure::lcis, subsequence_score(ids_q, ids_c));
        store(report, Measure::git,
              tiling_score(ids_q, ids_c, gates.identifier_tile_min, &report.identifier_tiles));
    }

    // Citation-based measures require min_references on both sides.
    if (query.reference_ids.size() < gates.min_references ||
        candidate.reference_ids.size() < gates.min_references) {
        const MeasureScore na = MeasureScore::not_applicable(
            "fewer than " + std::to_string(gates.min_references) + " references");
        store(report, Measure::bc, na);
        store(report, Measure::lccs, na);
        store(report, Measure::gct, na);
    } else {
        store(report, Measure::bc,
              bibliographic_coupling(query.reference_ids, candidate.reference_ids,
                                     gates.min_references));
        const std::span<const GlobalReferenceId> cites_q(query.citation_sequence);
        const std::span<const GlobalReferenceId> cites_c(candidate.citation_sequence);
        if (cites_q.empty()) {
            const MeasureScore na = MeasureScore::not_applicable("no resolved citations");
            store(report, Measure::lccs, na);
            store(report, Measure::gct, na);
        } else {
            store(report, Measure::lccs, subsequence_score(cites_q, cites_c));
            store(report, Measure::gct,
                  tiling_score(cites_q, cites_c, gates.citation_tile_min,
                               &report.citation_tiles));
        }
    }

    store(report, Measure::enco, encoplot(query.grams, candidate.grams));

    for (Measure m : kAllMeasures) {
        const MeasureScore& s = report.score(m);
        report.verdicts[static_cast<std::size_t>(m)] =
            s.applicable() && *s.value >= thresholds.get(m);
    }
    return report;
}

MathPairScores math_pair_scores(const DocumentFeatures& query, const DocumentFeatures& candidate,
                                const MeasureGates& gates) {
    MathPairScores scores;
    if (query.identifier_total == 0 || candidate.identifier_total == 0 ||
        shared_distinct_identifiers(query, candidate) < gates.min_shared_identifiers) {
        return scores;
    }
    scores.histo = histo_value(query.identifier_counts.begin(), query.identifier_counts.end(),
                               static_cast<double>(query.identifier_total),
                               candidate.identifier_counts.begin(),
                               candidate.identifier_counts.end(),
                               static_cast<double>(candidate.identifier_total));
    scores.git = *tiling_score(std::span<const std::int32_t>(query.identifier_ids),
                               std::span<const std::int32_t>(candidate.identifier_ids),
                               gates.identifier_tile_min)
                      .value;
    return scores;
}

} // namespace stemsim
