#include "stemsim/serialize.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace stemsim {

namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

ordered_json optional_number(const std::optional<std::size_t>& v) {
    if (v) {
        return *v;
    }
    return nullptr;
}

} // namespace

std::string candidates_to_json(std::string_view query_id, const CandidateSet& candidates) {
    ordered_json out;
    out["query"] = std::string(query_id);
    out["math"] = candidates.math;
    out["citation"] = candidates.citation;
    out["text"] = candidates.text;
    out["union"] = candidates.union_ids;
    return out.dump(2);
}

std::string analysis_to_json(const Analysis& analysis, const ThresholdConfig& thresholds) {
    ordered_json out;
    out["query"] = analysis.query_id;
    if (!analysis.diagnostic.empty()) {
        out["diagnostic"] = analysis.diagnostic;
    }
    out["candidates"] = {
        {"math", analysis.candidates.math},
        {"citation", analysis.candidates.citation},
        {"text", analysis.candidates.text},
        {"union", analysis.candidates.union_ids},
    };
    // per-measure candidate rankings over the union (best first, not
    // applicable last)
    ordered_json rankings;
    for (Measure m : kAllMeasures) {
        ordered_json ranked = ordered_json::array();
        for (const std::size_t idx : ranked_reports(analysis, Channel::union_all, m)) {
            ranked.push_back(analysis.reports[idx].doc_b);
        }
        rankings[std::string(measure_name(m))] = std::move(ranked);
    }
    out["rankings"] = std::move(rankings);
    out["reports"] =
        nlohmann::ordered_json::parse(render_report(analysis.reports, ReportFormat::json,
                                                    thresholds));
    return out.dump(2);
}

std::string evaluation_to_json(const EvaluationResult& result) {
    ordered_json out;
    ordered_json recall;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        recall[std::string(channel_name(static_cast<Channel>(c)))] = result.recall[c];
    }
    out["recall"] = std::move(recall);

    ordered_json mrr;
    ordered_json mrr_union;
    for (Measure m : kAllMeasures) {
        mrr[std::string(measure_name(m))] = result.measure_mrr(m);
        mrr_union[std::string(measure_name(m))] = result.measure_mrr_union(m);
    }
    out["mrr"] = std::move(mrr);
    out["mrr_union"] = std::move(mrr_union);

    ordered_json cases = ordered_json::array();
    for (const CaseOutcome& outcome : result.cases) {
        ordered_json item;
        item["case_id"] = outcome.test_case.case_id;
        item["query_doc"] = outcome.test_case.query_doc;
        item["source_doc"] = outcome.test_case.source_doc;
        ordered_json retrieved;
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            retrieved[std::string(channel_name(static_cast<Channel>(c)))] = outcome.retrieved[c];
        }
        item["retrieved"] = std::move(retrieved);
        ordered_json measures;
        for (Measure m : kAllMeasures) {
            const MeasureOutcome& mo = outcome.measures[static_cast<std::size_t>(m)];
            measures[std::string(measure_name(m))] = {
                {"rank", optional_number(mo.rank)},
                {"score", optional_number(mo.score)},
                {"tied", mo.tied},
                {"union_rank", optional_number(mo.union_rank)},
                {"union_tied", mo.union_tied},
            };
        }
        item["measures"] = std::move(measures);
        cases.push_back(std::move(item));
    }
    out["cases"] = std::move(cases);
    return out.dump(2);
}

std::string evaluation_to_csv(const EvaluationResult& result) {
    std::ostringstream out;
    out << "case_id,query_doc,source_doc,math,citation,text,union";
    for (Measure m : kAllMeasures) {
        out << ',' << measure_name(m) << "_rank," << measure_name(m) << "_score";
    }
    out << '\n';
    const auto mark = [](bool b) { return b ? "+" : "-"; };
    for (const CaseOutcome& outcome : result.cases) {
        out << outcome.test_case.case_id << ',' << outcome.test_case.query_doc << ','
            << outcome.test_case.source_doc;
        for (std::size_t c = 0; c < kChannelCount; ++c) {
            out << ',' << mark(outcome.retrieved[c]);
        }
        for (Measure m : kAllMeasures) {
            const MeasureOutcome& mo = outcome.measures[static_cast<std::size_t>(m)];
            out << ',';
            if (mo.rank) {
                out << *mo.rank << (mo.tied ? "'" : "");
            } else {
                out << '-';
            }
            out << ',';
            if (mo.score) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.4f", *mo.score);
                out << buf;
            } else {
                out << '-';
            }
        }
        out << '\n';
    }
    out << "MRR,,,,,,";
    for (Measure m : kAllMeasures) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", result.measure_mrr(m));
        out << ',' << buf << ',';
    }
    out << '\n';
    return out.str();
}

std::string distributions_to_json(std::span<const ScoreDistribution> distributions,
                                  const ThresholdConfig& suggested) {
    ordered_json out;
    ordered_json items = ordered_json::array();
    for (const ScoreDistribution& dist : distributions) {
        ordered_json item;
        item["measure"] = std::string(measure_name(dist.measure));
        item["sample_size"] = dist.sample_size;
        item["applicable_count"] = dist.applicable_count;
        item["min"] = optional_number(dist.min);
        item["max"] = optional_number(dist.max);
        item["median"] = optional_number(dist.median);
        item["p90"] = optional_number(dist.p90);
        item["p99"] = optional_number(dist.p99);
        item["p99_9"] = optional_number(dist.p999);
        items.push_back(std::move(item));
    }
    out["distributions"] = std::move(items);
    ordered_json thresholds;
    for (Measure m : kAllMeasures) {
        thresholds[std::string(measure_name(m))] = suggested.get(m);
    }
    out["suggested_thresholds"] = std::move(thresholds);
    out["note"] = "suggested thresholds are the p99.9 heuristic, not calibrated defaults";
    return out.dump(2);
}

std::string distributions_to_csv(std::span<const ScoreDistribution> distributions) {
    std::ostringstream out;
    out << "measure,sample_size,applicable_count,min,max,median,p90,p99,p99.9\n";
    const auto cell = [&](const std::optional<double>& v) {
        if (!v) {
            return std::string("-");
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", *v);
        return std::string(buf);
    };
    for (const ScoreDistribution& dist : distributions) {
        out << measure_name(dist.measure) << ',' << dist.sample_size << ','
            << dist.applicable_count << ',' << cell(dist.min) << ',' << cell(dist.max) << ','
            << cell(dist.median) << ',' << cell(dist.p90) << ',' << cell(dist.p99) << ','
            << cell(dist.p999) << '\n';
    }
    return out.str();
}

std::string suspects_to_json(std::span<const SuspectPair> suspects) {
    ordered_json out;
    out["suspect_count"] = suspects.size();
    ordered_json items = ordered_json::array();
    for (const SuspectPair& suspect : suspects) {
        ordered_json item;
        item["doc_a"] = suspect.doc_a;
        item["doc_b"] = suspect.doc_b;
        item["histo"] = suspect.histo_score;
        item["git"] = suspect.git_score;
        item["report"] = ordered_json::parse(report_to_json_string(suspect.report));
        items.push_back(std::move(item));
    }
    out["suspects"] = std::move(items);
    return out.dump(2);
}

std::string cases_to_json(std::span<const SyntheticCase> cases) {
    ordered_json out = ordered_json::array();
    for (const SyntheticCase& c : cases) {
        out.push_back({{"case_id", c.case_id},
                       {"query_doc", c.query_doc},
                       {"source_doc", c.source_doc}});
    }
    return out.dump(2);
}

std::string cases_to_csv(std::span<const SyntheticCase> cases) {
    std::ostringstream out;
    out << "case_id,query_doc,source_doc\n";
    for (const SyntheticCase& c : cases) {
        out << c.case_id << ',' << c.query_doc << ',' << c.source_doc << '\n';
    }
    return out.str();
}

} // namespace stemsim
