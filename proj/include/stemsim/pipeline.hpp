#pragma once

#include "stemsim/calibration.hpp"
#include "stemsim/compare.hpp"
#include "stemsim/corpus.hpp"
#include "stemsim/index.hpp"
#include "stemsim/retrieval.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stemsim {

struct AnalyzeOptions {
    std::size_t top_k = 100;
    MeasureGates gates;
    ThresholdConfig thresholds = default_thresholds();
    std::size_t threads = 1;
};

/// Detailed analysis of one query document against its retrieved candidates.
struct Analysis {
    std::string query_id;
    CandidateSet candidates;
    std::vector<SimilarityReport> reports;  // one per union candidate, union order
    std::string diagnostic;                 // set when nothing was analyzable

    const SimilarityReport* report_for(std::string_view candidate_id) const;
};

/// Retrieval channel a measure's candidates come from.
Channel measure_channel(Measure m);

/// retrieve_candidates + compare_pair against every union candidate.
/// Throws Error when query_id is unknown.
Analysis analyze(const CorpusFeatures& features, const SearchIndex& index,
                 std::string_view query_id, const AnalyzeOptions& options = {});

/// Report indices restricted to one channel's candidates, ranked by the
/// measure: applicable scores descending, then not-applicable; ties broken
/// by ascending candidate id.
std::vector<std::size_t> ranked_reports(const Analysis& analysis, Channel channel, Measure m);

// --- confirmed-case evaluation ----------------------------------------------

struct TestCase {
    std::string case_id;
    std::string query_doc;
    std::string source_doc;
};

/// Loads a case manifest: JSON array of {case_id, query_doc, source_doc}
/// or CSV with those three columns (optional header line).
std::vector<TestCase> load_cases(const std::filesystem::path& path);

struct MeasureOutcome {
    std::optional<std::size_t> rank;  // within the measure's own channel
    std::optional<double> score;
    bool tied = false;
    std::optional<std::size_t> union_rank;  // within the candidate union
    bool union_tied = false;
};

struct CaseOutcome {
    TestCase test_case;
    std::array<bool, kChannelCount> retrieved{};
    std::array<MeasureOutcome, kMeasureCount> measures;
};

struct EvaluationResult {
    std::vector<CaseOutcome> cases;
    std::array<double, kChannelCount> recall{};
    std::array<double, kMeasureCount> mrr{};        // own-channel candidates
    std::array<double, kMeasureCount> mrr_union{};  // union candidates

    double channel_recall(Channel c) const { return recall[static_cast<std::size_t>(c)]; }
    double measure_mrr(Measure m) const { return mrr[static_cast<std::size_t>(m)]; }
    double measure_mrr_union(Measure m) const { return mrr_union[static_cast<std::size_t>(m)]; }
};

/// Runs every test case through analyze. Rank of the source uses the
/// pessimistic tie rule: tied candidates get the ceiling of the tie group's
/// mean rank. A case contributes 0 to a measure's MRR when the source is
/// absent from the candidates or the measure is not applicable.
/// Throws Error naming the case when one of its documents is unknown.
EvaluationResult evaluate(const CorpusFeatures& features, const SearchIndex& index,
                          std::span<const TestCase> cases, const AnalyzeOptions& options = {});

// --- exploratory corpus-wide study ------------------------------------------

struct ExploreOptions {
    std::size_t top_k = 100;
    double histo_gate = 0.25;
    std::size_t limit = 10;
    MeasureGates gates;
    ThresholdConfig thresholds = default_thresholds();
    std::size_t threads = 1;
};

struct SuspectPair {
    std::string doc_a;  // query orientation
    std::string doc_b;
    double histo_score = 0.0;
    double git_score = 0.0;
    SimilarityReport report;
};

/// Compares every document against its candidate union and returns the
/// `limit` most suspicious pairs by GIT, after dropping pairs that share an
/// author, pairs where the older document cites the newer one, and pairs
/// with a Histo score below histo_gate. Unordered pairs are deduplicated,
/// keeping the orientation with the higher GIT score.
std::vector<SuspectPair> explore(const CorpusFeatures& features, const SearchIndex& index,
                                 const ExploreOptions& options = {});

// --- rendering ---------------------------------------------------------------

enum class ReportFormat { json, html };

ReportFormat report_format_from_name(std::string_view name);

/// Machine-readable (JSON) or human-readable (HTML) rendering of similarity
/// reports: all scores with not-applicable reasons, significance marks, and
/// matched tile listings.
std::string render_report(std::span<const SimilarityReport> reports, ReportFormat format,
                          const ThresholdConfig& thresholds);

/// JSON object for a single report (same shape as one render_report entry).
std::string report_to_json_string(const SimilarityReport& report);

} // namespace stemsim
