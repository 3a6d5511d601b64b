#include "stemsim/config.hpp"

#include "stemsim/calibration.hpp"
#include "stemsim/errors.hpp"
#include "stemsim/text.hpp"
#include "stemsim/util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace stemsim {

Config Config::from_string(std::string_view content, const std::string& origin) {
    Config config;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line.resize(comment);
        }
        const std::string entry = trim(line);
        if (entry.empty()) {
            continue;
        }
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin + " line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(entry).substr(0, eq));
        const std::string value = trim(std::string_view(entry).substr(eq + 1));
        if (key.empty()) {
            throw ParseError(origin + " line " + std::to_string(line_no) + ": empty key");
        }
        config.values_[key] = value;
    }
    return config;
}

Config Config::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str(), path.string());
}

std::optional<std::string> Config::get(std::string_view key) const {
    const auto it = values_.find(std::string(key));
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void Config::set(std::string key, std::string value) {
    values_[std::move(key)] = std::move(value);
}

namespace {

const char* const kKnownKeys[] = {
    "top_k",
    "threads",
    "seed",
    "calibration.sample_size",
    "thresholds.histo",
    "thresholds.lcis",
    "thresholds.git",
    "thresholds.bc",
    "thresholds.lccs",
    "thresholds.gct",
    "thresholds.enco",
    "gates.min_shared_identifiers",
    "gates.min_references",
    "gates.identifier_tile_min",
    "gates.citation_tile_min",
    "consolidation.max_edits",
    "consolidation.max_edit_fraction",
    "explore.histo_gate",
    "explore.limit",
};

std::string environment_name(std::string_view key) {
    std::string name = "STEMSIM_";
    for (char c : key) {
        name.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return name;
}

class Resolver {
public:
    Resolver(const Config& config, bool apply_environment)
        : config_(config), environment_(apply_environment) {
        for (const auto& [key, value] : config.entries()) {
            bool known = false;
            for (const char* k : kKnownKeys) {
                if (key == k) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                throw Error("unknown config key '" + key + "'");
            }
        }
    }

    std::optional<std::string> lookup(std::string_view key) const {
        if (environment_) {
            if (const char* env = std::getenv(environment_name(key).c_str())) {
                return std::string(env);
            }
        }
        return config_.get(key);
    }

    void read(std::string_view key, std::size_t& out) const {
        const auto value = lookup(key);
        if (!value) {
            return;
        }
        try {
            const long long parsed = std::stoll(*value);
            if (parsed < 0) {
                throw std::invalid_argument("negative");
            }
            out = static_cast<std::size_t>(parsed);
        } catch (const std::exception&) {
            throw Error("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                        *value + "'");
        }
    }

    void read(std::string_view key, double& out, double lo, double hi) const {
        const auto value = lookup(key);
        if (!value) {
            return;
        }
        try {
            const double parsed = std::stod(*value);
            if (parsed < lo || parsed > hi) {
                throw std::invalid_argument("range");
            }
            out = parsed;
        } catch (const std::exception&) {
            throw Error("config key '" + std::string(key) + "': expected a number in [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "], got '" + *value +
                        "'");
        }
    }

private:
    const Config& config_;
    bool environment_;
};

} // namespace

std::size_t RunConfig::effective_threads() const {
    return threads == 0 ? default_thread_count() : threads;
}

RunConfig RunConfig::resolve(const Config& config, bool apply_environment) {
    RunConfig run;
    run.thresholds = default_thresholds();
    const Resolver resolver(config, apply_environment);

    resolver.read("top_k", run.top_k);
    resolver.read("threads", run.threads);
    resolver.read("seed", run.seed);
    resolver.read("calibration.sample_size", run.sample_size);

    double value;
    const auto threshold_key = [&](Measure m, const char* key) {
        value = run.thresholds.get(m);
        resolver.read(key, value, 0.0, 1.0);
        run.thresholds.set(m, value);
    };
    threshold_key(Measure::histo, "thresholds.histo");
    threshold_key(Measure::lcis, "thresholds.lcis");
    threshold_key(Measure::git, "thresholds.git");
    threshold_key(Measure::bc, "thresholds.bc");
    threshold_key(Measure::lccs, "thresholds.lccs");
    threshold_key(Measure::gct, "thresholds.gct");
    threshold_key(Measure::enco, "thresholds.enco");

    resolver.read("gates.min_shared_identifiers", run.gates.min_shared_identifiers);
    resolver.read("gates.min_references", run.gates.min_references);
    resolver.read("gates.identifier_tile_min", run.gates.identifier_tile_min);
    resolver.read("gates.citation_tile_min", run.gates.citation_tile_min);
    resolver.read("consolidation.max_edits", run.consolidation.max_edits);
    resolver.read("consolidation.max_edit_fraction", run.consolidation.max_edit_fraction, 0.0,
                  1.0);
    resolver.read("explore.histo_gate", run.explore_histo_gate, 0.0, 1.0);
    resolver.read("explore.limit", run.explore_limit);

    if (run.top_k < 1) {
        throw Error("top_k must be at least 1");
    }
    if (run.gates.min_shared_identifiers < 1 || run.gates.min_references < 1 ||
        run.gates.identifier_tile_min < 1 || run.gates.citation_tile_min < 1) {
        throw Error("all gate parameters must be at least 1");
    }
    if (run.explore_limit < 1) {
        throw Error("explore.limit must be at least 1");
    }
    return run;
}

RunConfig RunConfig::load(const std::optional<std::filesystem::path>& config_path,
                          bool apply_environment) {
    if (config_path) {
        return resolve(Config::load_file(*config_path), apply_environment);
    }
    return resolve(Config{}, apply_environment);
}

} // namespace stemsim
