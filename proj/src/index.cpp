#include "stemsim/index.hpp"

#include "stemsim/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace stemsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kFieldMagic[4] = {'S', 'S', 'I', 'F'};
constexpr std::uint32_t kIndexFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char bytes[4];
    for (int i = 0; i < 4; ++i) {
        bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    }
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    }
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

void write_string(std::ostream& out, std::string_view s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class BinaryReader {
public:
    BinaryReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    std::uint32_t read_u32() {
        unsigned char bytes[4];
        read_bytes(bytes, 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) {
            v = (v << 8) | bytes[i];
        }
        return v;
    }

    std::uint64_t read_u64() {
        unsigned char bytes[8];
        read_bytes(bytes, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) {
            v = (v << 8) | bytes[i];
        }
        return v;
    }

    std::string read_string(std::uint32_t max_len = 1u << 20) {
        const std::uint32_t len = read_u32();
        if (len > max_len) {
            corrupt("string length out of range");
        }
        std::string s(len, '\0');
        read_bytes(s.data(), len);
        return s;
    }

    [[noreturn]] void corrupt(const std::string& what) {
        throw ParseError("corrupt index file " + name_ + ": " + what);
    }

private:
    void read_bytes(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            corrupt("truncated");
        }
    }

    std::istream& in_;
    std::string name_;
};

double idf(std::size_t doc_count, std::size_t doc_freq) {
    return 1.0 + std::log(static_cast<double>(doc_count) / (static_cast<double>(doc_freq) + 1.0));
}

} // namespace

std::string_view index_field_name(IndexField field) {
    switch (field) {
        case IndexField::identifier: return "identifier";
        case IndexField::citation: return "citation";
        case IndexField::fingerprint: return "fingerprint";
    }
    return "?";
}

std::string SearchIndex::citation_term(GlobalReferenceId id) {
    return std::to_string(id);
}

std::string SearchIndex::fingerprint_term(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf, 16);
}

void SearchIndex::add_terms(Field& field, std::uint32_t doc,
                            const std::vector<std::pair<std::string, std::uint32_t>>& term_counts) {
    std::uint64_t length = 0;
    for (const auto& [term, count] : term_counts) {
        field.postings[term].push_back({doc, count});
        length += count;
    }
    field.doc_lengths[doc] = length;
    field.total_tokens += length;
}

void SearchIndex::add_document(const std::string& doc_id,
                               const std::vector<std::string>& identifier_sequence,
                               const std::vector<GlobalReferenceId>& citation_sequence,
                               const FingerprintSet& fingerprints) {
    if (doc_ordinals_.contains(doc_id)) {
        throw Error("document '" + doc_id + "' is already indexed");
    }
    const auto doc = static_cast<std::uint32_t>(doc_ids_.size());
    doc_ids_.push_back(doc_id);
    doc_ordinals_.emplace(doc_id, doc);
    for (Field& f : fields_) {
        f.doc_lengths.push_back(0);
    }

    std::map<std::string, std::uint32_t> counts;
    for (const std::string& symbol : identifier_sequence) {
        ++counts[symbol];
    }
    add_terms(fields_[static_cast<std::size_t>(IndexField::identifier)], doc,
              {counts.begin(), counts.end()});

    counts.clear();
    for (const GlobalReferenceId id : citation_sequence) {
        ++counts[citation_term(id)];
    }
    add_terms(fields_[static_cast<std::size_t>(IndexField::citation)], doc,
              {counts.begin(), counts.end()});

    std::vector<std::uint64_t> hashes = fingerprints.hashes;
    std::sort(hashes.begin(), hashes.end());
    hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
    std::vector<std::pair<std::string, std::uint32_t>> fingerprint_terms;
    fingerprint_terms.reserve(hashes.size());
    for (const std::uint64_t hash : hashes) {
        fingerprint_terms.emplace_back(fingerprint_term(hash), 1);
    }
    add_terms(fields_[static_cast<std::size_t>(IndexField::fingerprint)], doc, fingerprint_terms);
}

double SearchIndex::score(std::span<const QueryTerm> query, IndexField field_id,
                          std::string_view doc_id) const {
    const auto doc_it = doc_ordinals_.find(doc_id);
    if (doc_it == doc_ordinals_.end() || query.empty()) {
        return 0.0;
    }
    const Field& f = field(field_id);
    const std::uint32_t doc = doc_it->second;

    // arithmetic kept identical to query_top_k so both paths produce
    // bitwise-equal scores
    double query_norm_sum = 0.0;
    double matched_sum = 0.0;
    std::size_t matched = 0;
    for (const QueryTerm& qt : query) {
        const auto posting_it = f.postings.find(qt.term);
        const std::size_t doc_freq = posting_it == f.postings.end() ? 0 : posting_it->second.size();
        const double term_idf = idf(doc_count(), doc_freq);
        query_norm_sum += term_idf * qt.boost * term_idf * qt.boost;
        if (posting_it == f.postings.end()) {
            continue;
        }
        const std::vector<Posting>& entries = posting_it->second;
        const auto entry = std::lower_bound(
            entries.begin(), entries.end(), doc,
            [](const Posting& p, std::uint32_t d) { return p.doc < d; });
        if (entry == entries.end() || entry->doc != doc) {
            continue;
        }
        ++matched;
        const double weight = term_idf * term_idf * qt.boost;
        matched_sum += std::sqrt(static_cast<double>(entry->term_frequency)) * weight;
    }
    if (matched == 0 || query_norm_sum <= 0.0) {
        return 0.0;
    }
    const double coord = static_cast<double>(matched) / static_cast<double>(query.size());
    const double query_norm = 1.0 / std::sqrt(query_norm_sum);
    const double norm = 1.0 / std::sqrt(static_cast<double>(f.doc_lengths[doc]));
    return coord * query_norm * norm * matched_sum;
}

std::vector<ScoredDoc> SearchIndex::query_top_k(std::span<const QueryTerm> query,
                                                IndexField field_id, std::size_t k) const {
    std::vector<ScoredDoc> results;
    if (k == 0 || query.empty() || doc_count() == 0) {
        return results;
    }
    const Field& f = field(field_id);

    double query_norm_sum = 0.0;
    std::vector<double> accumulator(doc_count(), 0.0);
    std::vector<std::uint32_t> matched_terms(doc_count(), 0);
    for (const QueryTerm& qt : query) {
        const auto posting_it = f.postings.find(qt.term);
        const std::size_t doc_freq = posting_it == f.postings.end() ? 0 : posting_it->second.size();
        const double term_idf = idf(doc_count(), doc_freq);
        query_norm_sum += term_idf * qt.boost * term_idf * qt.boost;
        if (posting_it == f.postings.end()) {
            continue;
        }
        const double weight = term_idf * term_idf * qt.boost;
        for (const Posting& p : posting_it->second) {
            accumulator[p.doc] += std::sqrt(static_cast<double>(p.term_frequency)) * weight;
            ++matched_terms[p.doc];
        }
    }
    if (query_norm_sum <= 0.0) {
        return results;
    }
    const double query_norm = 1.0 / std::sqrt(query_norm_sum);

    results.reserve(64);
    for (std::uint32_t doc = 0; doc < doc_count(); ++doc) {
        if (matched_terms[doc] == 0) {
            continue;
        }
        const double coord =
            static_cast<double>(matched_terms[doc]) / static_cast<double>(query.size());
        const double norm = 1.0 / std::sqrt(static_cast<double>(f.doc_lengths[doc]));
        results.push_back({doc_ids_[doc], coord * query_norm * norm * accumulator[doc]});
    }
    std::sort(results.begin(), results.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc_id < b.doc_id;
    });
    if (results.size() > k) {
        results.resize(k);
    }
    return results;
}

std::vector<PostingEntry> SearchIndex::posting_list(IndexField field_id,
                                                    std::string_view term) const {
    std::vector<PostingEntry> out;
    const Field& f = field(field_id);
    const auto it = f.postings.find(term);
    if (it == f.postings.end()) {
        return out;
    }
    out.reserve(it->second.size());
    for (const Posting& p : it->second) {
        out.push_back({doc_ids_[p.doc], p.term_frequency});
    }
    std::sort(out.begin(), out.end(),
              [](const PostingEntry& a, const PostingEntry& b) { return a.doc_id < b.doc_id; });
    return out;
}

std::uint64_t SearchIndex::field_token_count(IndexField field_id, std::string_view doc_id) const {
    const auto it = doc_ordinals_.find(doc_id);
    if (it == doc_ordinals_.end()) {
        return 0;
    }
    return field(field_id).doc_lengths[it->second];
}

void SearchIndex::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);

    ordered_json manifest;
    manifest["format"] = "stemsim-index";
    manifest["version"] = kIndexFormatVersion;
    manifest["doc_count"] = doc_count();
    manifest["docs"] = doc_ids_;
    ordered_json field_stats;
    for (std::size_t i = 0; i < kIndexFieldCount; ++i) {
        const Field& f = fields_[i];
        field_stats[std::string(index_field_name(static_cast<IndexField>(i)))] = {
            {"terms", f.postings.size()},
            {"total_tokens", f.total_tokens},
        };
    }
    manifest["fields"] = std::move(field_stats);
    {
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        if (!out) {
            throw IoError("cannot write " + (dir / "manifest.json").string());
        }
        out << manifest.dump(2) << '\n';
    }

    for (std::size_t i = 0; i < kIndexFieldCount; ++i) {
        const Field& f = fields_[i];
        const std::string name = std::string(index_field_name(static_cast<IndexField>(i)));
        std::ofstream out(dir / (name + ".idx"), std::ios::binary);
        if (!out) {
            throw IoError("cannot write " + (dir / (name + ".idx")).string());
        }
        out.write(kFieldMagic, 4);
        write_u32(out, kIndexFormatVersion);
        const std::string header =
            json{{"field", name}, {"doc_count", doc_count()}, {"terms", f.postings.size()}}
                .dump();
        write_string(out, header);
        for (const std::uint64_t length : f.doc_lengths) {
            write_u64(out, length);
        }
        write_u64(out, f.postings.size());
        for (const auto& [term, entries] : f.postings) {
            write_string(out, term);
            write_u64(out, entries.size());
            for (const Posting& p : entries) {
                write_u32(out, p.doc);
                write_u32(out, p.term_frequency);
            }
        }
        if (!out) {
            throw IoError("failed writing " + (dir / (name + ".idx")).string());
        }
    }
}

SearchIndex SearchIndex::load(const std::filesystem::path& dir) {
    std::ifstream manifest_in(dir / "manifest.json", std::ios::binary);
    if (!manifest_in) {
        throw IoError("cannot read " + (dir / "manifest.json").string());
    }
    const json manifest = json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded() || manifest.value("format", "") != "stemsim-index") {
        throw ParseError("not an index manifest: " + (dir / "manifest.json").string());
    }
    if (manifest.value("version", 0u) != kIndexFormatVersion) {
        throw ParseError("unsupported index version in " + (dir / "manifest.json").string());
    }

    SearchIndex index;
    for (const json& id : manifest.at("docs")) {
        index.doc_ids_.push_back(id.get<std::string>());
    }
    for (std::size_t i = 0; i < index.doc_ids_.size(); ++i) {
        const auto [it, inserted] =
            index.doc_ordinals_.emplace(index.doc_ids_[i], static_cast<std::uint32_t>(i));
        if (!inserted) {
            throw ParseError("duplicate doc id in index manifest: " + index.doc_ids_[i]);
        }
    }
    if (manifest.value("doc_count", std::size_t{0}) != index.doc_ids_.size()) {
        throw ParseError("index manifest doc_count does not match doc list");
    }

    for (std::size_t i = 0; i < kIndexFieldCount; ++i) {
        const std::string name = std::string(index_field_name(static_cast<IndexField>(i)));
        const std::filesystem::path path = dir / (name + ".idx");
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot read " + path.string());
        }
        BinaryReader reader(in, path.string());
        char magic[4];
        in.read(magic, 4);
        if (in.gcount() != 4 || std::memcmp(magic, kFieldMagic, 4) != 0) {
            reader.corrupt("bad magic");
        }
        if (reader.read_u32() != kIndexFormatVersion) {
            throw ParseError("unsupported index version in " + path.string());
        }
        const std::string header_text = reader.read_string();
        const json header = json::parse(header_text, nullptr, false);
        if (header.is_discarded() || header.value("field", "") != name) {
            reader.corrupt("bad field header");
        }
        if (header.value("doc_count", std::size_t{0}) != index.doc_ids_.size()) {
            reader.corrupt("doc_count mismatch with manifest");
        }

        Field& f = index.fields_[i];
        f.doc_lengths.resize(index.doc_ids_.size());
        for (std::uint64_t& length : f.doc_lengths) {
            length = reader.read_u64();
            f.total_tokens += length;
        }
        const std::uint64_t term_count = reader.read_u64();
        if (term_count != header.value("terms", std::uint64_t{0})) {
            reader.corrupt("term count mismatch with header");
        }
        for (std::uint64_t t = 0; t < term_count; ++t) {
            std::string term = reader.read_string();
            const std::uint64_t entry_count = reader.read_u64();
            if (entry_count > index.doc_ids_.size()) {
                reader.corrupt("posting list longer than corpus");
            }
            std::vector<Posting> entries;
            entries.reserve(entry_count);
            for (std::uint64_t e = 0; e < entry_count; ++e) {
                Posting p;
                p.doc = reader.read_u32();
                p.term_frequency = reader.read_u32();
                if (p.doc >= index.doc_ids_.size() || p.term_frequency == 0) {
                    reader.corrupt("posting entry out of range");
                }
                entries.push_back(p);
            }
            f.postings.emplace(std::move(term), std::move(entries));
        }
    }
    return index;
}

} // namespace stemsim
