#include "stemsim/measures.hpp"

#include "oracles.hpp"
#include "stemsim/util.hpp"

#include <doctest.h>

#include <random>
#include <span>

using namespace stemsim;

namespace {

std::vector<int> random_sequence(std::mt19937_64& rng, std::size_t max_len,
                                 std::size_t alphabet) {
    const std::size_t len = bounded_draw(rng, max_len + 1);
    std::vector<int> seq(len);
    for (std::size_t i = 0; i < len; ++i) {
        seq[i] = static_cast<int>(bounded_draw(rng, alphabet));
    }
    return seq;
}

IdentifierHistogram hist(std::map<std::string, std::size_t> counts) {
    IdentifierHistogram h;
    h.counts = std::move(counts);
    for (const auto& [k, v] : h.counts) {
        h.total += v;
    }
    return h;
}

} // namespace

TEST_CASE("histo hand values") {
    // {x:2,y:1} vs {x:1,z:1}: 1 - (1/6 + 1/3 + 1/2) / (2/3 + 1/3 + 1/2) = 1/3
    const MeasureScore score = histo(hist({{"x", 2}, {"y", 1}}), hist({{"x", 1}, {"z", 1}}));
    REQUIRE(score.applicable());
    CHECK(*score.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const MeasureScore identical = histo(hist({{"x", 2}, {"y", 1}}), hist({{"x", 2}, {"y", 1}}));
    CHECK(*identical.value == doctest::Approx(1.0).epsilon(1e-12));

    const MeasureScore disjoint = histo(hist({{"x", 1}}), hist({{"y", 1}}));
    CHECK(*disjoint.value == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_FALSE(histo(hist({}), hist({{"x", 1}})).applicable());
    // scale invariance of relative frequencies
    const MeasureScore scaled = histo(hist({{"x", 4}, {"y", 2}}), hist({{"x", 2}, {"y", 1}}));
    CHECK(*scaled.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("histo is symmetric and matches the oracle on random histograms") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 500; ++round) {
        std::map<std::string, std::size_t> a;
        std::map<std::string, std::size_t> b;
        const std::size_t keys = 1 + bounded_draw(rng, 8);
        for (std::size_t k = 0; k < keys; ++k) {
            if (bounded_draw(rng, 2)) {
                a["k" + std::to_string(bounded_draw(rng, 10))] = 1 + bounded_draw(rng, 5);
            }
            if (bounded_draw(rng, 2)) {
                b["k" + std::to_string(bounded_draw(rng, 10))] = 1 + bounded_draw(rng, 5);
            }
        }
        if (a.empty() || b.empty()) {
            continue;
        }
        const MeasureScore ab = histo(hist(a), hist(b));
        const MeasureScore ba = histo(hist(b), hist(a));
        CHECK(*ab.value == doctest::Approx(*ba.value).epsilon(1e-12));
        CHECK(*ab.value == doctest::Approx(oracle::histo(a, b)).epsilon(1e-12));
        CHECK(*ab.value >= 0.0);
        CHECK(*ab.value <= 1.0);
    }
}

TEST_CASE("lcs_length examples") {
    const std::vector<int> a = {1, 2, 3, 1};
    const std::vector<int> b = {2, 1, 3};
    CHECK(lcs_length(std::span<const int>(a), std::span<const int>(b)) == 2);
    CHECK(lcs_length(std::span<const int>(a), std::span<const int>(a)) == 4);
    const std::vector<int> c = {9, 9};
    CHECK(lcs_length(std::span<const int>(a), std::span<const int>(c)) == 0);
    CHECK(lcs_length(std::span<const int>(a), {}) == 0);
}

TEST_CASE("lcs_length matches DP oracle on random pairs") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 3000; ++round) {
        const std::vector<int> a = random_sequence(rng, 12, 4);
        const std::vector<int> b = random_sequence(rng, 12, 4);
        CHECK(lcs_length(std::span<const int>(a), std::span<const int>(b)) ==
              oracle::lcs_length(a, b));
    }
}

TEST_CASE("greedy_tiles examples") {
    SUBCASE("identical sequences make one full tile") {
        const std::vector<int> a = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        const auto tiles = greedy_tiles(std::span<const int>(a), std::span<const int>(a), 5);
        REQUIRE(tiles.size() == 1);
        CHECK(tiles[0] == Tile{0, 0, 10});
    }
    SUBCASE("no common token") {
        const std::vector<int> a = {1, 2, 3};
        const std::vector<int> b = {4, 5, 6};
        CHECK(greedy_tiles(std::span<const int>(a), std::span<const int>(b), 1).empty());
    }
    SUBCASE("block below min length is dropped") {
        const std::vector<int> a = {1, 2, 3, 4};
        const std::vector<int> b = {1, 2, 3, 4};
        CHECK(greedy_tiles(std::span<const int>(a), std::span<const int>(b), 5).empty());
    }
    SUBCASE("single shifted block") {
        // a=[a,b,c,d,e,f,g], b=[z,a,b,c,d,e,y] -> one tile (0,1,5)
        const std::vector<int> a = {1, 2, 3, 4, 5, 6, 7};
        const std::vector<int> b = {26, 1, 2, 3, 4, 5, 25};
        const auto tiles = greedy_tiles(std::span<const int>(a), std::span<const int>(b), 5);
        REQUIRE(tiles.size() == 1);
        CHECK(tiles[0] == Tile{0, 1, 5});
    }
    SUBCASE("tie-break prefers smallest pos_a then pos_b") {
        // two equal-length candidate blocks; the one starting earlier in a wins
        const std::vector<int> a = {1, 2, 0, 1, 2};
        const std::vector<int> b = {1, 2};
        const auto tiles = greedy_tiles(std::span<const int>(a), std::span<const int>(b), 2);
        REQUIRE(tiles.size() == 1);
        CHECK(tiles[0] == Tile{0, 0, 2});
    }
}

TEST_CASE("greedy_tiles matches the exhaustive oracle on random pairs") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 2000; ++round) {
        const std::vector<int> a = random_sequence(rng, 12, 4);
        const std::vector<int> b = random_sequence(rng, 12, 4);
        const std::size_t min_len = 1 + bounded_draw(rng, 3);
        const auto actual = greedy_tiles(std::span<const int>(a), std::span<const int>(b), min_len);
        const auto expected = oracle::greedy_tiles(a, b, min_len);
        CHECK(actual == expected);
    }
}

TEST_CASE("greedy tiles never overlap and respect min length") {
    std::mt19937_64 rng(123);
    for (int round = 0; round < 500; ++round) {
        const std::vector<int> a = random_sequence(rng, 40, 3);
        const std::vector<int> b = random_sequence(rng, 40, 3);
        const std::size_t min_len = 1 + bounded_draw(rng, 4);
        const auto tiles = greedy_tiles(std::span<const int>(a), std::span<const int>(b), min_len);
        std::vector<char> used_a(a.size(), 0);
        std::vector<char> used_b(b.size(), 0);
        for (const Tile& t : tiles) {
            CHECK(t.length >= min_len);
            REQUIRE(t.pos_a + t.length <= a.size());
            REQUIRE(t.pos_b + t.length <= b.size());
            for (std::size_t k = 0; k < t.length; ++k) {
                CHECK(a[t.pos_a + k] == b[t.pos_b + k]);
                CHECK_FALSE(used_a[t.pos_a + k]);
                CHECK_FALSE(used_b[t.pos_b + k]);
                used_a[t.pos_a + k] = 1;
                used_b[t.pos_b + k] = 1;
            }
        }
    }
}

TEST_CASE("subsequence and tiling scores (LCIS/GIT/LCCS/GCT kernels)") {
    const std::vector<int> q = {1, 2, 3, 1};
    const std::vector<int> c = {2, 1, 3};
    // lcis-style: 2/4
    const MeasureScore s = subsequence_score(std::span<const int>(q), std::span<const int>(c));
    CHECK(*s.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*subsequence_score(std::span<const int>(q), std::span<const int>(q)).value ==
          doctest::Approx(1.0));
    CHECK(*subsequence_score(std::span<const int>(q), {}).value == doctest::Approx(0.0));
    CHECK_FALSE(subsequence_score(std::span<const int>{}, std::span<const int>(c)).applicable());

    // git-style: tile example 5/7
    const std::vector<int> a = {1, 2, 3, 4, 5, 6, 7};
    const std::vector<int> b = {26, 1, 2, 3, 4, 5, 25};
    std::vector<Tile> tiles;
    const MeasureScore g = tiling_score(std::span<const int>(a), std::span<const int>(b), 5, &tiles);
    CHECK(*g.value == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
    REQUIRE(tiles.size() == 1);

    // gct-style: [5,9,7,3] vs [1,5,9,2,7,3] with min 2 -> 4/4
    const std::vector<GlobalReferenceId> cq = {5, 9, 7, 3};
    const std::vector<GlobalReferenceId> cc = {1, 5, 9, 2, 7, 3};
    const MeasureScore gct_like = tiling_score(std::span<const GlobalReferenceId>(cq),
                                               std::span<const GlobalReferenceId>(cc), 2);
    CHECK(*gct_like.value == doctest::Approx(1.0).epsilon(1e-12));

    // lccs-style: [5,9,5,7] vs [9,5,7] -> 3/4
    const std::vector<GlobalReferenceId> lq = {5, 9, 5, 7};
    const std::vector<GlobalReferenceId> lc = {9, 5, 7};
    CHECK(*subsequence_score(std::span<const GlobalReferenceId>(lq),
                             std::span<const GlobalReferenceId>(lc))
               .value == doctest::Approx(0.75).epsilon(1e-12));

    // shared tokens never adjacent in the same order -> tiling score 0
    const std::vector<int> na = {1, 9, 2, 8, 3};
    const std::vector<int> nb = {3, 7, 2, 6, 1};
    CHECK(*tiling_score(std::span<const int>(na), std::span<const int>(nb), 2).value ==
          doctest::Approx(0.0));
}

TEST_CASE("bibliographic coupling") {
    const std::vector<GlobalReferenceId> a = {1, 2, 3};
    const std::vector<GlobalReferenceId> b = {2, 3, 4};
    const MeasureScore s = bibliographic_coupling(a, b, 3);
    CHECK(*s.value == doctest::Approx(0.5).epsilon(1e-12));  // 2 shared / 4 union

    CHECK(*bibliographic_coupling(a, a, 3).value == doctest::Approx(1.0));
    const std::vector<GlobalReferenceId> c = {7, 8, 9};
    CHECK(*bibliographic_coupling(a, c, 3).value == doctest::Approx(0.0));

    const std::vector<GlobalReferenceId> two = {1, 2};
    CHECK_FALSE(bibliographic_coupling(a, two, 3).applicable());
    CHECK_FALSE(bibliographic_coupling(two, a, 3).applicable());
    CHECK(bibliographic_coupling(two, a, 2).applicable());
}

TEST_CASE("encoplot examples") {
    SUBCASE("identical 32-char texts score 1.0 over 17 grams") {
        const std::string text = "abcdefghijklmnopqrstuvwxyz789012";
        REQUIRE(text.size() == 32);
        const MeasureScore s = encoplot(text, text);
        CHECK(*s.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(build_gram_index(text).gram_count() == 17);
    }
    SUBCASE("disjoint alphabets score 0") {
        CHECK(*encoplot("aaaaaaaaaaaaaaaaaaaaaaaa", "bbbbbbbbbbbbbbbbbbbbbbbb").value ==
              doctest::Approx(0.0));
    }
    SUBCASE("single shared gram out of 17") {
        const std::string a = "abcdefghijklmnopqrstuvwxyz789012";
        const std::string b = "abcdefghijklmnopNONSENSEPADDING9";
        const MeasureScore s = encoplot(a, b);
        CHECK(*s.value == doctest::Approx(1.0 / 17.0).epsilon(1e-12));
    }
    SUBCASE("too-short text is not applicable") {
        CHECK_FALSE(encoplot("short", "also short").applicable());
        CHECK_FALSE(encoplot("long enough text for grams", "nope").applicable());
    }
    SUBCASE("normalization: case and whitespace runs collapse") {
        const MeasureScore s = encoplot("The  Quick   Brown Fox Ran", "the quick brown fox ran");
        CHECK(*s.value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("encoplot pairing equals the per-gram min-count oracle") {
    std::mt19937_64 rng(31);
    const char alphabet[] = "abcd ";
    for (int round = 0; round < 300; ++round) {
        std::string a;
        std::string b;
        const std::size_t la = 16 + bounded_draw(rng, 120);
        const std::size_t lb = 16 + bounded_draw(rng, 120);
        for (std::size_t i = 0; i < la; ++i) {
            a.push_back(alphabet[bounded_draw(rng, 5)]);
        }
        for (std::size_t i = 0; i < lb; ++i) {
            b.push_back(alphabet[bounded_draw(rng, 5)]);
        }
        const GramIndex ga = build_gram_index(a);
        const GramIndex gb = build_gram_index(b);
        if (ga.gram_count() == 0 || gb.gram_count() == 0) {
            continue;  // whitespace collapse may shorten below 16
        }
        CHECK(encoplot_paired_count(ga, gb) == oracle::encoplot_pair_count(a, b));
    }
}

TEST_CASE("self-similarity is 1.0 for applicable measures") {
    std::mt19937_64 rng(55);
    for (int round = 0; round < 50; ++round) {
        const std::vector<int> ids = random_sequence(rng, 30, 5);
        if (!ids.empty()) {
            CHECK(*subsequence_score(std::span<const int>(ids), std::span<const int>(ids)).value ==
                  doctest::Approx(1.0));
            CHECK(*tiling_score(std::span<const int>(ids), std::span<const int>(ids),
                                std::min<std::size_t>(ids.size(), 5))
                       .value == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("git <= lcis on random inputs (tiles of one block form a subsequence)") {
    std::mt19937_64 rng(66);
    for (int round = 0; round < 1000; ++round) {
        std::vector<int> q = random_sequence(rng, 25, 4);
        if (q.empty()) {
            continue;
        }
        const std::vector<int> c = random_sequence(rng, 25, 4);
        const MeasureScore git_like =
            tiling_score(std::span<const int>(q), std::span<const int>(c), 5);
        const MeasureScore lcis_like =
            subsequence_score(std::span<const int>(q), std::span<const int>(c));
        CHECK(*git_like.value <= *lcis_like.value + 1e-12);
    }
}

TEST_CASE("measure names round-trip") {
    for (Measure m : kAllMeasures) {
        CHECK(measure_from_name(measure_name(m)) == m);
    }
    CHECK_FALSE(measure_from_name("nope").has_value());
}
