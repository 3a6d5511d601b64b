#include "stemsim/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace stemsim {

namespace {

bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Two-byte UTF-8 sequences for Latin-1 supplement and Latin extended-A,
// mapped to base ASCII. Ligatures expand to two letters.
const char* fold_codepoint(uint32_t cp) {
    switch (cp) {
        case 0x00C0: case 0x00C1: case 0x00C2: case 0x00C3: case 0x00C4: case 0x00C5:
        case 0x00E0: case 0x00E1: case 0x00E2: case 0x00E3: case 0x00E4: case 0x00E5:
        case 0x0100: case 0x0101: case 0x0102: case 0x0103: case 0x0104: case 0x0105:
            return "a";
        case 0x00C7: case 0x00E7: case 0x0106: case 0x0107: case 0x010C: case 0x010D:
            return "c";
        case 0x010E: case 0x010F: case 0x0110: case 0x0111:
            return "d";
        case 0x00C8: case 0x00C9: case 0x00CA: case 0x00CB:
        case 0x00E8: case 0x00E9: case 0x00EA: case 0x00EB:
        case 0x0112: case 0x0113: case 0x0116: case 0x0117: case 0x0118: case 0x0119:
        case 0x011A: case 0x011B:
            return "e";
        case 0x011E: case 0x011F: case 0x0120: case 0x0121:
            return "g";
        case 0x00CC: case 0x00CD: case 0x00CE: case 0x00CF:
        case 0x00EC: case 0x00ED: case 0x00EE: case 0x00EF:
        case 0x012A: case 0x012B: case 0x0130: case 0x0131:
            return "i";
        case 0x0141: case 0x0142:
            return "l";
        case 0x00D1: case 0x00F1: case 0x0143: case 0x0144: case 0x0147: case 0x0148:
            return "n";
        case 0x00D2: case 0x00D3: case 0x00D4: case 0x00D5: case 0x00D6: case 0x00D8:
        case 0x00F2: case 0x00F3: case 0x00F4: case 0x00F5: case 0x00F6: case 0x00F8:
        case 0x014C: case 0x014D: case 0x0150: case 0x0151:
            return "o";
        case 0x0154: case 0x0155: case 0x0158: case 0x0159:
            return "r";
        case 0x015A: case 0x015B: case 0x015E: case 0x015F: case 0x0160: case 0x0161:
            return "s";
        case 0x0162: case 0x0163: case 0x0164: case 0x0165:
            return "t";
        case 0x00D9: case 0x00DA: case 0x00DB: case 0x00DC:
        case 0x00F9: case 0x00FA: case 0x00FB: case 0x00FC:
        case 0x016A: case 0x016B: case 0x016E: case 0x016F: case 0x0170: case 0x0171:
            return "u";
        case 0x00DD: case 0x00FD: case 0x00FF: case 0x0178:
            return "y";
        case 0x0179: case 0x017A: case 0x017B: case 0x017C: case 0x017D: case 0x017E:
            return "z";
        case 0x00C6: case 0x00E6:
            return "ae";
        case 0x0152: case 0x0153:
            return "oe";
        case 0x00DF:
            return "ss";
        case 0x00D0: case 0x00F0:
            return "d";
        case 0x00DE: case 0x00FE:
            return "th";
        default:
            return nullptr;
    }
}

} // namespace

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_space_byte(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && is_space_byte(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return std::string(s.substr(begin, end - begin));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = false;
    for (unsigned char c : s) {
        if (is_space_byte(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) {
            out.push_back(' ');
        }
        in_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::string fold_diacritics(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
            ++i;
            continue;
        }
        if ((c & 0xE0) == 0xC0 && i + 1 < s.size() &&
            (static_cast<unsigned char>(s[i + 1]) & 0xC0) == 0x80) {
            uint32_t cp = (static_cast<uint32_t>(c & 0x1F) << 6) |
                          (static_cast<unsigned char>(s[i + 1]) & 0x3F);
            if (const char* folded = fold_codepoint(cp)) {
                out.append(folded);
            } else {
                out.append(s.substr(i, 2));
            }
            i += 2;
            continue;
        }
        out.push_back(static_cast<char>(c));
        ++i;
    }
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

std::string normalize_author(std::string_view author) {
    const std::string folded = collapse_whitespace(fold_diacritics(author));
    if (folded.empty()) {
        return {};
    }
    std::string surname;
    std::string rest;
    const auto comma = folded.find(',');
    if (comma != std::string::npos) {
        surname = trim(std::string_view(folded).substr(0, comma));
        rest = trim(std::string_view(folded).substr(comma + 1));
    } else {
        // "forename surname": last token is the surname.
        const auto space = folded.rfind(' ');
        if (space == std::string::npos) {
            surname = folded;
        } else {
            surname = folded.substr(space + 1);
            rest = folded.substr(0, space);
        }
    }
    char initial = 0;
    for (unsigned char c : rest) {
        if (std::isalnum(c)) {
            initial = static_cast<char>(c);
            break;
        }
    }
    if (initial == 0) {
        return surname;
    }
    return surname + ", " + initial;
}

std::string first_author_surname(const std::vector<std::string>& authors) {
    if (authors.empty()) {
        return {};
    }
    const std::string key = normalize_author(authors.front());
    const auto comma = key.find(',');
    return comma == std::string::npos ? key : key.substr(0, comma);
}

std::string normalize_title(std::string_view title) {
    return collapse_whitespace(fold_diacritics(title));
}

std::size_t levenshtein_bounded(std::string_view a, std::string_view b, std::size_t limit) {
    if (a.size() > b.size()) {
        std::swap(a, b);
    }
    if (b.size() - a.size() > limit) {
        return limit + 1;
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t inf = limit + 1;
    std::vector<std::size_t> row(m + 1, inf);
    for (std::size_t j = 0; j <= std::min(m, limit); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        // Only cells with |i - j| <= limit can stay within the bound.
        const std::size_t lo = i > limit ? i - limit : 0;
        const std::size_t hi = std::min(m, i + limit);
        std::size_t diag = row[lo > 0 ? lo - 1 : 0];
        std::size_t prev = inf;
        if (lo == 0) {
            diag = row[0];
            prev = i <= limit ? i : inf;
            row[0] = prev;
        }
        std::size_t row_min = prev;
        for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
            const std::size_t up = row[j];
            const std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            std::size_t best = subst;
            if (up + 1 < best) {
                best = up + 1;
            }
            if (prev + 1 < best) {
                best = prev + 1;
            }
            if (best > inf) {
                best = inf;
            }
            row[j] = best;
            diag = up;
            prev = best;
            row_min = std::min(row_min, best);
        }
        if (hi < m) {
            row[hi + 1] = inf;
        }
        if (row_min > limit) {
            return inf;
        }
    }
    return std::min(row[m], inf);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
        return false;
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

} // namespace stemsim
