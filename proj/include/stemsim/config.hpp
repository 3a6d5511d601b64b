#pragma once

#include "stemsim/compare.hpp"
#include "stemsim/features.hpp"
#include "stemsim/measures.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace stemsim {

/// Flat "key = value" configuration file ('#' starts a comment, keys are
/// dotted paths). See README for the key reference.
class Config {
public:
    static Config from_string(std::string_view content, const std::string& origin = "<string>");
    static Config load_file(const std::filesystem::path& path);

    std::optional<std::string> get(std::string_view key) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

    void set(std::string key, std::string value);

private:
    std::map<std::string, std::string> values_;
};

/// Resolved run settings: defaults, overridden by the config file, overridden
/// by STEMSIM_* environment variables (key uppercased, dots to underscores,
/// e.g. thresholds.git -> STEMSIM_THRESHOLDS_GIT).
struct RunConfig {
    std::size_t top_k = 100;
    std::size_t threads = 0;  // 0: one per hardware thread
    std::uint64_t seed = 42;
    std::size_t sample_size = 100000;
    ThresholdConfig thresholds;
    MeasureGates gates;
    ConsolidationConfig consolidation;
    double explore_histo_gate = 0.25;
    std::size_t explore_limit = 10;

    std::size_t effective_threads() const;

    /// Throws Error on unknown keys, malformed values, or violated
    /// invariants (top_k and all gates must be at least 1).
    static RunConfig resolve(const Config& config, bool apply_environment = true);
    static RunConfig load(const std::optional<std::filesystem::path>& config_path,
                          bool apply_environment = true);
};

} // namespace stemsim
