#include "stemsim/synthetic.hpp"

#include "stemsim/errors.hpp"
#include "stemsim/util.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stemsim {

namespace {

const char* const kGreekNames[] = {
    "alpha", "beta",  "gamma", "delta", "epsilon", "zeta", "eta",   "theta",
    "iota",  "kappa", "lambda", "mu",   "nu",      "xi",   "pi",    "rho",
    "sigma", "tau",   "phi",    "chi",  "psi",     "omega"};

const char* const kSurnames[] = {
    "smith",   "chen",    "mueller", "garcia",  "ivanov",  "tanaka",  "kowalski",
    "nguyen",  "rossi",   "kim",     "petrov",  "suzuki",  "novak",   "silva",
    "haddad",  "larsen",  "fischer", "moreau",  "olsen",   "weber",   "sato",
    "lindqvist", "duran", "costa",   "berg",    "nagy",    "dubois",  "baker",
    "keller",  "fontana", "vargas",  "holm",    "ricci",   "sorensen", "peeters",
    "jansen",  "kumar",   "ali",     "zhang",   "okafor"};

const char* const kVenues[] = {
    "Journal of Modeling",     "Annals of Computation",  "Symposium on Systems",
    "Transactions on Methods", "Workshop on Analysis",   "Review of Dynamics",
    "Letters in Theory",       "Conference on Structures"};

class Generator {
public:
    explicit Generator(const GeneratorConfig& config) : config_(config), rng_(config.seed) {
        if (config_.n_docs < 2) {
            throw Error("synthetic corpus needs at least 2 documents");
        }
        for (const PlantSpec& plant : config_.plants) {
            check_fraction(plant.case_id, plant.identifier_fraction);
            check_fraction(plant.case_id, plant.citation_fraction);
            check_fraction(plant.case_id, plant.text_fraction);
        }
        for (const DecoySpec& decoy : config_.decoys) {
            check_fraction(decoy.case_id, decoy.identifier_fraction);
            check_fraction(decoy.case_id, decoy.citation_fraction);
            check_fraction(decoy.case_id, decoy.text_fraction);
        }
        build_pools();
    }

    SyntheticCorpus run() {
        SyntheticCorpus corpus;
        corpus.documents.reserve(config_.n_docs + config_.plants.size() +
                                 2 * config_.decoys.size());
        for (std::size_t i = 0; i < config_.n_docs; ++i) {
            corpus.documents.push_back(background_document(next_doc_id()));
        }

        // Each plant copies from a distinct background document.
        std::vector<std::size_t> source_order(config_.n_docs);
        for (std::size_t i = 0; i < config_.n_docs; ++i) {
            source_order[i] = i;
        }
        shuffle(source_order);
        if (config_.plants.size() > config_.n_docs) {
            throw Error("more plants than background documents");
        }
        for (std::size_t p = 0; p < config_.plants.size(); ++p) {
            const PlantSpec& spec = config_.plants[p];
            const Document& source = corpus.documents[source_order[p]];
            Document plant = derived_document(source, next_doc_id(), spec.identifier_fraction,
                                              spec.citation_fraction, spec.text_fraction,
                                              /*share_author=*/false);
            corpus.cases.push_back({spec.case_id, plant.doc_id, source.doc_id});
            corpus.documents.push_back(std::move(plant));
        }

        for (const DecoySpec& spec : config_.decoys) {
            Document source = background_document(next_doc_id());
            Document copy = derived_document(source, next_doc_id(), spec.identifier_fraction,
                                             spec.citation_fraction, spec.text_fraction,
                                             spec.kind == DecoySpec::Kind::shared_author);
            if (spec.kind == DecoySpec::Kind::older_cites_newer) {
                // The older source lists the newer copy in its bibliography.
                ReferenceEntry entry;
                entry.title = copy.title;
                entry.authors = copy.authors;
                entry.venue = std::string(kVenues[draw(std::size(kVenues))]);
                entry.raw = copy.authors.front() + ". " + copy.title + ". " + *entry.venue + ".";
                source.references.push_back(std::move(entry));
            }
            corpus.decoy_pairs.push_back({spec.case_id, copy.doc_id, source.doc_id});
            corpus.documents.push_back(std::move(source));
            corpus.documents.push_back(std::move(copy));
        }
        return corpus;
    }

private:
    struct Work {
        std::string title;
        std::vector<std::string> authors;
        std::string venue;
        int year;
    };

    static void check_fraction(const std::string& case_id, double fraction) {
        if (!(fraction >= 0.0 && fraction <= 1.0)) {
            throw Error("plant spec '" + case_id + "': fractions must be in [0,1]");
        }
    }

    std::uint64_t draw(std::uint64_t n) { return bounded_draw(rng_, n); }

    bool chance(double probability) {
        return static_cast<double>(draw(1000000)) < probability * 1000000.0;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[draw(i)]);
        }
    }

    std::string next_doc_id() {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "d%05zu", doc_counter_++);
        return buf;
    }

    std::string pseudo_word(std::size_t min_syllables, std::size_t max_syllables) {
        static const char consonants[] = "bcdfghklmnprstvz";
        static const char vowels[] = "aeiou";
        const std::size_t syllables = min_syllables + draw(max_syllables - min_syllables + 1);
        std::string word;
        for (std::size_t s = 0; s < syllables; ++s) {
            word.push_back(consonants[draw(sizeof(consonants) - 1)]);
            word.push_back(vowels[draw(sizeof(vowels) - 1)]);
        }
        return word;
    }

    void build_pools() {
        identifier_pool_.reserve(config_.identifier_universe);
        for (char c = 'a'; c <= 'z' && identifier_pool_.size() < config_.identifier_universe;
             ++c) {
            identifier_pool_.emplace_back(1, c);
        }
        for (const char* name : kGreekNames) {
            if (identifier_pool_.size() >= config_.identifier_universe) {
                break;
            }
            identifier_pool_.push_back(name);
        }
        for (std::size_t i = 0; identifier_pool_.size() < config_.identifier_universe; ++i) {
            identifier_pool_.push_back("v" + std::to_string(i));
        }

        const std::size_t author_count =
            config_.author_pool > 0 ? config_.author_pool
                                    : std::max<std::size_t>(40, config_.n_docs / 4);
        author_pool_.reserve(author_count);
        for (std::size_t i = 0; i < author_count; ++i) {
            std::string surname = i < std::size(kSurnames)
                                      ? kSurnames[i]
                                      : pseudo_word(2, 3) + std::to_string(i);
            const char initial = static_cast<char>('a' + draw(26));
            author_pool_.push_back(surname + ", " + initial);
        }

        vocabulary_.reserve(config_.vocabulary);
        while (vocabulary_.size() < config_.vocabulary) {
            vocabulary_.push_back(pseudo_word(2, 4));
        }

        const std::size_t work_count = config_.work_pool > 0
                                           ? config_.work_pool
                                           : std::max<std::size_t>(50, config_.n_docs * 2);
        work_pool_.reserve(work_count);
        for (std::size_t i = 0; i < work_count; ++i) {
            Work work;
            const std::size_t title_words = 4 + draw(5);
            for (std::size_t w = 0; w < title_words; ++w) {
                if (w > 0) {
                    work.title.push_back(' ');
                }
                work.title += vocabulary_[draw(vocabulary_.size())];
            }
            const std::size_t author_total = 1 + draw(3);
            for (std::size_t a = 0; a < author_total; ++a) {
                work.authors.push_back(author_pool_[draw(author_pool_.size())]);
            }
            work.venue = kVenues[draw(std::size(kVenues))];
            work.year = 1980 + static_cast<int>(draw(35));
            work_pool_.push_back(std::move(work));
        }
    }

    std::string random_date(int min_year, int max_year) {
        const int year = min_year + static_cast<int>(draw(
                             static_cast<std::uint64_t>(max_year - min_year + 1)));
        const int month = 1 + static_cast<int>(draw(12));
        const int day = 1 + static_cast<int>(draw(28));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        return buf;
    }

    ReferenceEntry reference_for(const Work& work) {
        ReferenceEntry entry;
        entry.title = work.title;
        entry.authors = work.authors;
        entry.venue = work.venue;
        std::string raw;
        for (std::size_t a = 0; a < work.authors.size(); ++a) {
            if (a > 0) {
                raw += "; ";
            }
            raw += work.authors[a];
        }
        raw += ". " + work.title + ". " + work.venue + ", " + std::to_string(work.year) + ".";
        entry.raw = std::move(raw);
        return entry;
    }

    std::vector<std::string> random_authors() {
        const std::size_t count = 1 + draw(3);
        std::vector<std::string> authors;
        for (std::size_t i = 0; i < count; ++i) {
            const std::string& author = author_pool_[draw(author_pool_.size())];
            if (std::find(authors.begin(), authors.end(), author) == authors.end()) {
                authors.push_back(author);
            }
        }
        return authors;
    }

    // Symbols keep a corpus-wide popularity (x, y, ... are frequent in every
    // document), so identifier histograms of unrelated documents correlate
    // the way they do in real collections. The curve is kept shallow enough
    // that a document realizes most of its working set.
    std::uint64_t symbol_weight(std::size_t symbol) const {
        return 1000 / (symbol + 4) + 20;
    }

    std::vector<std::string> random_identifier_sequence(std::size_t length,
                                                        std::size_t distinct) {
        distinct = std::max<std::size_t>(1, std::min(distinct, identifier_pool_.size()));
        // working set: sample without replacement
        std::vector<std::size_t> universe(identifier_pool_.size());
        for (std::size_t i = 0; i < universe.size(); ++i) {
            universe[i] = i;
        }
        for (std::size_t i = 0; i < distinct; ++i) {
            std::swap(universe[i], universe[i + draw(universe.size() - i)]);
        }
        std::vector<std::size_t> working(universe.begin(),
                                         universe.begin() + static_cast<std::ptrdiff_t>(distinct));
        std::sort(working.begin(), working.end());
        std::vector<std::uint64_t> cumulative(distinct);
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < distinct; ++i) {
            total += symbol_weight(working[i]);
            cumulative[i] = total;
        }
        std::vector<std::string> sequence;
        sequence.reserve(length);
        for (std::size_t i = 0; i < length; ++i) {
            const std::uint64_t x = draw(total);
            const std::size_t pick =
                std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin();
            sequence.push_back(identifier_pool_[working[pick]]);
        }
        return sequence;
    }

    std::string random_text(std::size_t words) {
        std::string text;
        text.reserve(words * 8);
        std::size_t sentence_left = 0;
        for (std::size_t i = 0; i < words; ++i) {
            std::string word = vocabulary_[draw(vocabulary_.size())];
            if (sentence_left == 0) {
                sentence_left = 8 + draw(8);
                word[0] = static_cast<char>(word[0] - 'a' + 'A');
                if (!text.empty()) {
                    text += ". ";
                }
            } else {
                text += ' ';
            }
            text += word;
            --sentence_left;
        }
        if (!text.empty()) {
            text += '.';
        }
        return text;
    }

    Document background_document(std::string doc_id) {
        Document doc;
        doc.doc_id = std::move(doc_id);
        const std::size_t title_words = 4 + draw(5);
        for (std::size_t w = 0; w < title_words; ++w) {
            if (w > 0) {
                doc.title.push_back(' ');
            }
            doc.title += vocabulary_[draw(vocabulary_.size())];
        }
        doc.authors = random_authors();
        doc.date = random_date(1995, 2014);
        doc.identifiers = random_identifier_sequence(config_.identifiers_per_doc,
                                                     config_.distinct_identifiers_per_doc);
        doc.text = random_text(config_.words_per_doc);

        std::vector<std::size_t> works(work_pool_.size());
        for (std::size_t i = 0; i < works.size(); ++i) {
            works[i] = i;
        }
        const std::size_t ref_count = std::min(config_.references_per_doc, work_pool_.size());
        for (std::size_t i = 0; i < ref_count; ++i) {
            std::swap(works[i], works[i + draw(works.size() - i)]);
        }
        for (std::size_t i = 0; i < ref_count; ++i) {
            doc.references.push_back(reference_for(work_pool_[works[i]]));
        }

        for (std::size_t i = 0; i < config_.citations_per_doc; ++i) {
            CitationInstance citation;
            citation.position = i;
            if (ref_count > 0 && !chance(config_.unresolved_citation_rate)) {
                citation.ref_index = draw(ref_count);
            }
            doc.citations.push_back(citation);
        }
        return doc;
    }

    // A document that copies contiguous slices of the source's identifier
    // sequence, citation sequence, and text into otherwise fresh content.
    Document derived_document(const Document& source, std::string doc_id,
                              double identifier_fraction, double citation_fraction,
                              double text_fraction, bool share_author) {
        Document doc = background_document(std::move(doc_id));

        if (share_author) {
            doc.authors[0] = source.authors.front();
        } else {
            for (int tries = 0; tries < 64 && shares_author(doc, source); ++tries) {
                doc.authors = random_authors();
            }
        }
        if (source.date) {
            const int year = std::stoi(source.date->substr(0, 4));
            doc.date = random_date(year + 1, year + 3);
        }

        // identifiers: splice a contiguous slice of the source sequence
        const std::size_t copy_len = static_cast<std::size_t>(
            std::llround(identifier_fraction * static_cast<double>(source.identifiers.size())));
        if (copy_len > 0) {
            const std::size_t start = draw(source.identifiers.size() - copy_len + 1);
            std::vector<std::string> own = std::move(doc.identifiers);
            if (own.size() > copy_len) {
                own.resize(own.size() - copy_len);
            } else {
                own.clear();
            }
            const std::size_t insert_at = own.empty() ? 0 : draw(own.size() + 1);
            doc.identifiers.assign(own.begin(), own.begin() + insert_at);
            doc.identifiers.insert(doc.identifiers.end(),
                                   source.identifiers.begin() + start,
                                   source.identifiers.begin() + start + copy_len);
            doc.identifiers.insert(doc.identifiers.end(), own.begin() + insert_at, own.end());
        }

        // citations: splice a contiguous run of the source's resolved
        // citations and import the referenced works
        std::vector<std::size_t> resolved;  // source ref indices in citation order
        for (const CitationInstance& c : source.citations) {
            if (c.ref_index) {
                resolved.push_back(*c.ref_index);
            }
        }
        const std::size_t cite_len = static_cast<std::size_t>(
            std::llround(citation_fraction * static_cast<double>(resolved.size())));
        if (cite_len > 0) {
            const std::size_t start = draw(resolved.size() - cite_len + 1);
            std::vector<std::optional<std::size_t>> own;
            for (const CitationInstance& c : doc.citations) {
                own.push_back(c.ref_index);
            }
            if (own.size() > cite_len) {
                own.resize(own.size() - cite_len);
            } else {
                own.clear();
            }
            // map imported source references into this document's list
            std::vector<std::optional<std::size_t>> imported;
            std::vector<std::optional<std::size_t>> source_ref_map(source.references.size());
            for (std::size_t i = 0; i < cite_len; ++i) {
                const std::size_t src_ref = resolved[start + i];
                if (!source_ref_map[src_ref]) {
                    source_ref_map[src_ref] = doc.references.size();
                    doc.references.push_back(source.references[src_ref]);
                }
                imported.push_back(source_ref_map[src_ref]);
            }
            const std::size_t insert_at = own.empty() ? 0 : draw(own.size() + 1);
            std::vector<std::optional<std::size_t>> merged(own.begin(), own.begin() + insert_at);
            merged.insert(merged.end(), imported.begin(), imported.end());
            merged.insert(merged.end(), own.begin() + insert_at, own.end());
            doc.citations.clear();
            for (std::size_t i = 0; i < merged.size(); ++i) {
                doc.citations.push_back({i, merged[i]});
            }
        }

        // text: splice a contiguous word-aligned chunk of the source text
        const std::size_t text_len = static_cast<std::size_t>(
            std::llround(text_fraction * static_cast<double>(source.text.size())));
        if (text_len > 0 && source.text.size() >= text_len) {
            std::size_t start = draw(source.text.size() - text_len + 1);
            while (start > 0 && source.text[start - 1] != ' ') {
                --start;
            }
            const std::string chunk = source.text.substr(start, text_len);
            std::string own = std::move(doc.text);
            if (own.size() > text_len) {
                own.resize(own.size() - text_len);
            } else {
                own.clear();
            }
            std::size_t insert_at = own.empty() ? 0 : draw(own.size());
            while (insert_at > 0 && insert_at < own.size() && own[insert_at] != ' ') {
                ++insert_at;
                if (insert_at == own.size()) {
                    break;
                }
            }
            doc.text = own.substr(0, insert_at) + ' ' + chunk + ' ' + own.substr(insert_at);
        }
        return doc;
    }

    static bool shares_author(const Document& a, const Document& b) {
        for (const std::string& author : a.authors) {
            if (std::find(b.authors.begin(), b.authors.end(), author) != b.authors.end()) {
                return true;
            }
        }
        return false;
    }

    const GeneratorConfig& config_;
    std::mt19937_64 rng_;
    std::size_t doc_counter_ = 0;
    std::vector<std::string> identifier_pool_;
    std::vector<std::string> author_pool_;
    std::vector<std::string> vocabulary_;
    std::vector<Work> work_pool_;
};

} // namespace

SyntheticCorpus generate_synthetic(const GeneratorConfig& config) {
    return Generator(config).run();
}

} // namespace stemsim
