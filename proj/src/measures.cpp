#include "stemsim/measures.hpp"

#include "stemsim/text.hpp"

#include <algorithm>
#include <cstring>

namespace stemsim {

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::histo: return "Histo";
        case Measure::lcis: return "LCIS";
        case Measure::git: return "GIT";
        case Measure::bc: return "BC";
        case Measure::lccs: return "LCCS";
        case Measure::gct: return "GCT";
        case Measure::enco: return "Enco";
    }
    return "?";
}

std::optional<Measure> measure_from_name(std::string_view name) {
    for (Measure m : kAllMeasures) {
        if (measure_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

MeasureScore histo(const IdentifierHistogram& a, const IdentifierHistogram& b) {
    if (a.total == 0 || b.total == 0) {
        return MeasureScore::not_applicable("no identifiers");
    }
    return MeasureScore::of(histo_value(a.counts.begin(), a.counts.end(),
                                        static_cast<double>(a.total), b.counts.begin(),
                                        b.counts.end(), static_cast<double>(b.total)));
}

MeasureScore bibliographic_coupling(std::span<const GlobalReferenceId> refs_a,
                                    std::span<const GlobalReferenceId> refs_b,
                                    std::size_t min_references) {
    if (refs_a.size() < min_references || refs_b.size() < min_references) {
        return MeasureScore::not_applicable("fewer than " + std::to_string(min_references) +
                                            " references");
    }
    std::size_t shared = 0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < refs_a.size() && ib < refs_b.size()) {
        if (refs_a[ia] == refs_b[ib]) {
            ++shared;
            ++ia;
            ++ib;
        } else if (refs_a[ia] < refs_b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
    }
    const std::size_t united = refs_a.size() + refs_b.size() - shared;
    return MeasureScore::of(static_cast<double>(shared) / static_cast<double>(united));
}

namespace {

struct PrefixRecord {
    std::uint64_t prefix;  // first 8 gram bytes, big-endian
    std::uint32_t offset;
};

// Stable LSD radix sort on the 8-byte gram prefix. Records carry the
// prefix, so every pass streams sequentially and the 256 scatter regions
// stay cache-resident; equal-prefix runs (rare) are finished off with a
// comparison sort over the full gram.
void radix_sort_by_prefix(std::vector<PrefixRecord>& records) {
    std::vector<PrefixRecord> buffer(records.size());
    std::array<std::uint32_t, 257> bucket{};
    for (int shift = 0; shift < 64; shift += 8) {
        bucket.fill(0);
        for (const PrefixRecord& r : records) {
            ++bucket[((r.prefix >> shift) & 0xFF) + 1];
        }
        for (std::size_t i = 1; i < bucket.size(); ++i) {
            bucket[i] += bucket[i - 1];
        }
        for (const PrefixRecord& r : records) {
            buffer[bucket[(r.prefix >> shift) & 0xFF]++] = r;
        }
        records.swap(buffer);
    }
}

// Small documents stay compact (offsets into the text, comparison sort);
// large inputs materialize contiguous keys and radix-sort them so both the
// sort and later merges stream linearly.
constexpr std::size_t kLargeGramThreshold = 16384;

// lowercase + whitespace-run collapse in one pass
std::string normalize_for_grams(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

} // namespace

GramIndex build_gram_index(std::string_view raw_text) {
    GramIndex index;
    index.text = normalize_for_grams(raw_text);
    if (index.text.size() < kEncoplotGramSize) {
        return index;
    }
    const std::size_t count = index.text.size() - kEncoplotGramSize + 1;
    const std::string& text = index.text;
    index.sorted_offsets.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        index.sorted_offsets[i] = static_cast<std::uint32_t>(i);
    }
    if (count < kLargeGramThreshold) {
        std::sort(index.sorted_offsets.begin(), index.sorted_offsets.end(),
                  [&text](std::uint32_t a, std::uint32_t b) {
                      return std::memcmp(text.data() + a, text.data() + b,
                                         kEncoplotGramSize) < 0;
                  });
        return index;
    }

    std::vector<PrefixRecord> records(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t prefix = 0;
        for (std::size_t b = 0; b < 8; ++b) {
            prefix = (prefix << 8) | static_cast<unsigned char>(text[i + b]);
        }
        records[i] = {prefix, static_cast<std::uint32_t>(i)};
    }
    radix_sort_by_prefix(records);
    for (std::size_t run = 0; run < count;) {
        std::size_t end = run + 1;
        while (end < count && records[end].prefix == records[run].prefix) {
            ++end;
        }
        if (end - run > 1) {
            std::sort(records.begin() + static_cast<std::ptrdiff_t>(run),
                      records.begin() + static_cast<std::ptrdiff_t>(end),
                      [&text](const PrefixRecord& a, const PrefixRecord& b) {
                          return std::memcmp(text.data() + a.offset, text.data() + b.offset,
                                             kEncoplotGramSize) < 0;
                      });
        }
        run = end;
    }
    index.sorted_keys.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        index.sorted_offsets[i] = records[i].offset;
        std::memcpy(index.sorted_keys[i].data(), text.data() + records[i].offset,
                    kEncoplotGramSize);
    }
    return index;
}

std::size_t encoplot_paired_count(const GramIndex& a, const GramIndex& b) {
    std::size_t paired = 0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    const std::size_t na = a.gram_count();
    const std::size_t nb = b.gram_count();
    while (ia < na && ib < nb) {
        const int cmp = std::memcmp(a.key_at(ia), b.key_at(ib), kEncoplotGramSize);
        if (cmp == 0) {
            ++paired;
            ++ia;
            ++ib;
        } else if (cmp < 0) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return paired;
}

MeasureScore encoplot(const GramIndex& a, const GramIndex& b) {
    if (a.gram_count() == 0 || b.gram_count() == 0) {
        return MeasureScore::not_applicable("text shorter than " +
                                            std::to_string(kEncoplotGramSize) + " characters");
    }
    const std::size_t paired = encoplot_paired_count(a, b);
    const std::size_t shorter = std::min(a.gram_count(), b.gram_count());
    return MeasureScore::of(static_cast<double>(paired) / static_cast<double>(shorter));
}

MeasureScore encoplot(std::string_view text_a, std::string_view text_b) {
    return encoplot(build_gram_index(text_a), build_gram_index(text_b));
}

} // namespace stemsim
