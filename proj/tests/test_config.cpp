#include "stemsim/config.hpp"

#include "stemsim/errors.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace stemsim;

TEST_CASE("key=value parsing with comments and blank lines") {
    const Config config = Config::from_string(
        "# a comment\n"
        "top_k = 50\n"
        "\n"
        "thresholds.git=0.3   # trailing comment\n"
        "  gates.min_references =  4  \n");
    CHECK(config.get("top_k") == "50");
    CHECK(config.get("thresholds.git") == "0.3");
    CHECK(config.get("gates.min_references") == "4");
    CHECK_FALSE(config.get("missing").has_value());
}

TEST_CASE("malformed lines and unknown keys are errors") {
    CHECK_THROWS_AS(Config::from_string("just words\n"), ParseError);
    CHECK_THROWS_AS(Config::from_string("= value\n"), ParseError);
    CHECK_THROWS_AS(RunConfig::resolve(Config::from_string("not_a_key = 1\n"), false), Error);
    CHECK_THROWS_AS(RunConfig::resolve(Config::from_string("top_k = banana\n"), false), Error);
    CHECK_THROWS_AS(RunConfig::resolve(Config::from_string("thresholds.git = 1.5\n"), false),
                    Error);
}

TEST_CASE("defaults and invariants") {
    const RunConfig run = RunConfig::resolve(Config{}, false);
    CHECK(run.top_k == 100);
    CHECK(run.gates.min_shared_identifiers == 20);
    CHECK(run.gates.min_references == 3);
    CHECK(run.gates.identifier_tile_min == 5);
    CHECK(run.gates.citation_tile_min == 2);
    CHECK(run.consolidation.max_edits == 2);
    CHECK(run.consolidation.max_edit_fraction == 0.1);
    CHECK(run.explore_histo_gate == 0.25);
    CHECK(run.effective_threads() >= 1);

    CHECK_THROWS_AS(RunConfig::resolve(Config::from_string("top_k = 0\n"), false), Error);
    CHECK_THROWS_AS(
        RunConfig::resolve(Config::from_string("gates.min_references = 0\n"), false), Error);
}

TEST_CASE("environment variables override file values") {
    ::setenv("STEMSIM_TOP_K", "7", 1);
    ::setenv("STEMSIM_THRESHOLDS_GIT", "0.4", 1);
    const Config config = Config::from_string("top_k = 50\nthresholds.git = 0.2\n");
    const RunConfig run = RunConfig::resolve(config, true);
    CHECK(run.top_k == 7);
    CHECK(run.thresholds.get(Measure::git) == 0.4);
    ::unsetenv("STEMSIM_TOP_K");
    ::unsetenv("STEMSIM_THRESHOLDS_GIT");

    const RunConfig after = RunConfig::resolve(config, true);
    CHECK(after.top_k == 50);
}
