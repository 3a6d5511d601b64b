#pragma once

#include "stemsim/calibration.hpp"
#include "stemsim/pipeline.hpp"
#include "stemsim/retrieval.hpp"
#include "stemsim/synthetic.hpp"

#include <span>
#include <string>

namespace stemsim {

/// JSON emitters for the machine-readable CLI outputs. The shapes are pinned
/// by the JSON Schema files under schemas/.
std::string candidates_to_json(std::string_view query_id, const CandidateSet& candidates);
std::string analysis_to_json(const Analysis& analysis, const ThresholdConfig& thresholds);
std::string evaluation_to_json(const EvaluationResult& result);
std::string evaluation_to_csv(const EvaluationResult& result);
std::string distributions_to_json(std::span<const ScoreDistribution> distributions,
                                  const ThresholdConfig& suggested);
std::string distributions_to_csv(std::span<const ScoreDistribution> distributions);
std::string suspects_to_json(std::span<const SuspectPair> suspects);
std::string cases_to_json(std::span<const SyntheticCase> cases);
std::string cases_to_csv(std::span<const SyntheticCase> cases);

} // namespace stemsim
