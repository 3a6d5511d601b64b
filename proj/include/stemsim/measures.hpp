#pragma once

#include "stemsim/features.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stemsim {

enum class Measure : std::size_t {
    histo = 0,  // identifier frequency histogram similarity
    lcis,       // longest common identifier subsequence
    git,        // greedy identifier tiling, min tile 5
    bc,         // bibliographic coupling (reference-set Jaccard)
    lccs,       // longest common citation sequence
    gct,        // greedy citation tiling, min tile 2
    enco,       // character 16-gram pairing
};

inline constexpr std::size_t kMeasureCount = 7;
inline constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::histo, Measure::lcis, Measure::git, Measure::bc,
    Measure::lccs,  Measure::gct,  Measure::enco,
};

std::string_view measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view name);

/// Per-measure minimum score that counts as significant.
struct ThresholdConfig {
    std::array<double, kMeasureCount> min_score{};

    double get(Measure m) const { return min_score[static_cast<std::size_t>(m)]; }
    void set(Measure m, double v) { min_score[static_cast<std::size_t>(m)] = v; }
};

/// A score in [0,1], or the reason the measure's applicability gate failed.
/// "Not applicable" is distinct from 0.0 throughout.
struct MeasureScore {
    std::optional<double> value;
    std::string reason;

    bool applicable() const { return value.has_value(); }

    static MeasureScore of(double v) { return {v, {}}; }
    static MeasureScore not_applicable(std::string why) { return {std::nullopt, std::move(why)}; }
};

/// Maximal matching block between two token sequences. Tiles of one tiling
/// never overlap in either sequence.
struct Tile {
    std::size_t pos_a = 0;
    std::size_t pos_b = 0;
    std::size_t length = 0;

    bool operator==(const Tile&) const = default;
};

/// Classic longest-common-subsequence length, O(|a|*|b|) time, O(min) space.
template <typename T>
std::size_t lcs_length(std::span<const T> a, std::span<const T> b);

/// Greedy string tiling: repeatedly take the longest matching block of
/// unmarked tokens (ties: smallest pos_a, then pos_b), mark it, and record
/// it, until no block of at least min_length remains. Tiles are returned
/// sorted by pos_a.
template <typename T>
std::vector<Tile> greedy_tiles(std::span<const T> a, std::span<const T> b,
                               std::size_t min_length);

inline std::size_t tile_coverage(const std::vector<Tile>& tiles) {
    std::size_t total = 0;
    for (const Tile& t : tiles) {
        total += t.length;
    }
    return total;
}

// --- scalar measures -------------------------------------------------------

/// Identifier histogram similarity:
/// 1 - sum_i |f_i,a - f_i,b| / sum_i max(f_i,a, f_i,b) over the key union,
/// with f relative occurrence frequencies. Symmetric, in [0,1].
/// Not applicable when either histogram is empty.
MeasureScore histo(const IdentifierHistogram& a, const IdentifierHistogram& b);

/// LCS of the two sequences normalized by the query (first) sequence length.
/// Asymmetric. Not applicable when the query sequence is empty.
template <typename T>
MeasureScore subsequence_score(std::span<const T> query, std::span<const T> candidate);

/// Total coverage of greedy tiles of at least min_length, normalized by the
/// query sequence length. Asymmetric. Not applicable when the query sequence
/// is empty. Tiles are appended to *tiles_out when given.
template <typename T>
MeasureScore tiling_score(std::span<const T> query, std::span<const T> candidate,
                          std::size_t min_length, std::vector<Tile>* tiles_out = nullptr);

/// Jaccard index of the two reference-identity sets (sorted unique inputs).
/// Not applicable when either set is smaller than min_references.
MeasureScore bibliographic_coupling(std::span<const GlobalReferenceId> refs_a,
                                    std::span<const GlobalReferenceId> refs_b,
                                    std::size_t min_references);

// --- encoplot --------------------------------------------------------------

inline constexpr std::size_t kEncoplotGramSize = 16;

/// Normalized text (lowercase, whitespace collapsed) plus its character
/// 16-gram start offsets sorted by gram bytes. Built once per document and
/// reused across pairwise comparisons. Large texts additionally carry the
/// sorted gram bytes contiguously so pairwise merges stream sequentially.
struct GramIndex {
    std::string text;
    std::vector<std::uint32_t> sorted_offsets;
    std::vector<std::array<unsigned char, kEncoplotGramSize>> sorted_keys;  // large texts only

    std::size_t gram_count() const { return sorted_offsets.size(); }

    const unsigned char* key_at(std::size_t rank) const {
        if (!sorted_keys.empty()) {
            return sorted_keys[rank].data();
        }
        return reinterpret_cast<const unsigned char*>(text.data()) + sorted_offsets[rank];
    }
};

GramIndex build_gram_index(std::string_view raw_text);

/// Number of paired 16-grams: the i-th occurrence of a gram in A pairs with
/// the i-th occurrence in B, each occurrence used at most once.
std::size_t encoplot_paired_count(const GramIndex& a, const GramIndex& b);

/// Paired-gram count divided by the gram count of the shorter text.
/// Not applicable when either normalized text is shorter than 16 characters.
MeasureScore encoplot(std::string_view text_a, std::string_view text_b);
MeasureScore encoplot(const GramIndex& a, const GramIndex& b);

// --- template implementations ----------------------------------------------

/// Histogram-similarity kernel over two key-sorted (key, count) ranges:
/// 1 - sum|f_a - f_b| / sum max(f_a, f_b) with relative frequencies f.
/// Both totals must be positive.
template <typename IterA, typename IterB>
double histo_value(IterA a, IterA a_end, double total_a, IterB b, IterB b_end, double total_b) {
    double abs_diff_sum = 0.0;
    double max_sum = 0.0;
    while (a != a_end || b != b_end) {
        double fa = 0.0;
        double fb = 0.0;
        if (b == b_end || (a != a_end && a->first < b->first)) {
            fa = static_cast<double>(a->second) / total_a;
            ++a;
        } else if (a == a_end || b->first < a->first) {
            fb = static_cast<double>(b->second) / total_b;
            ++b;
        } else {
            fa = static_cast<double>(a->second) / total_a;
            fb = static_cast<double>(b->second) / total_b;
            ++a;
            ++b;
        }
        abs_diff_sum += fa > fb ? fa - fb : fb - fa;
        max_sum += fa > fb ? fa : fb;
    }
    const double score = 1.0 - abs_diff_sum / max_sum;
    return score < 0.0 ? 0.0 : (score > 1.0 ? 1.0 : score);
}

template <typename T>
std::size_t lcs_length(std::span<const T> a, std::span<const T> b) {
    if (a.empty() || b.empty()) {
        return 0;
    }
    if (b.size() > a.size()) {
        std::swap(a, b);
    }
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a[i] == b[j]) {
                curr[j + 1] = prev[j] + 1;
            } else {
                curr[j + 1] = std::max(prev[j + 1], curr[j]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

template <typename T>
std::vector<Tile> greedy_tiles(std::span<const T> a, std::span<const T> b,
                               std::size_t min_length) {
    std::vector<Tile> tiles;
    if (min_length == 0) {
        min_length = 1;
    }
    if (a.empty() || b.empty()) {
        return tiles;
    }
    std::vector<char> marked_a(a.size(), 0);
    std::vector<char> marked_b(b.size(), 0);
    // run lengths of matching unmarked blocks starting at (i, j), one row at
    // a time: next_row[j] holds row i+1 while row i is computed.
    std::vector<std::size_t> next_row(b.size() + 1, 0);
    std::vector<std::size_t> curr_row(b.size() + 1, 0);

    while (true) {
        std::fill(next_row.begin(), next_row.end(), 0);
        std::size_t best_len = 0;
        std::size_t best_i = 0;
        std::size_t best_j = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            const bool a_free = !marked_a[i];
            for (std::size_t j = b.size(); j-- > 0;) {
                std::size_t run = 0;
                if (a_free && !marked_b[j] && a[i] == b[j]) {
                    run = next_row[j + 1] + 1;
                }
                curr_row[j] = run;
                if (run > best_len ||
                    (run == best_len && run > 0 &&
                     (i < best_i || (i == best_i && j < best_j)))) {
                    best_len = run;
                    best_i = i;
                    best_j = j;
                }
            }
            std::swap(next_row, curr_row);
        }
        if (best_len < min_length) {
            break;
        }
        for (std::size_t k = 0; k < best_len; ++k) {
            marked_a[best_i + k] = 1;
            marked_b[best_j + k] = 1;
        }
        tiles.push_back({best_i, best_j, best_len});
    }
    std::sort(tiles.begin(), tiles.end(), [](const Tile& x, const Tile& y) {
        return x.pos_a < y.pos_a;
    });
    return tiles;
}

template <typename T>
MeasureScore subsequence_score(std::span<const T> query, std::span<const T> candidate) {
    if (query.empty()) {
        return MeasureScore::not_applicable("query sequence is empty");
    }
    const std::size_t common = lcs_length(query, candidate);
    return MeasureScore::of(static_cast<double>(common) / static_cast<double>(query.size()));
}

template <typename T>
MeasureScore tiling_score(std::span<const T> query, std::span<const T> candidate,
                          std::size_t min_length, std::vector<Tile>* tiles_out) {
    if (query.empty()) {
        return MeasureScore::not_applicable("query sequence is empty");
    }
    std::vector<Tile> tiles = greedy_tiles(query, candidate, min_length);
    const std::size_t covered = tile_coverage(tiles);
    if (tiles_out != nullptr) {
        *tiles_out = std::move(tiles);
    }
    return MeasureScore::of(static_cast<double>(covered) / static_cast<double>(query.size()));
}

} // namespace stemsim
