#include "aletheia/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

// Decodes one UTF-8 sequence starting at i; returns the codepoint and
// advances i. Malformed bytes decode as U+FFFD and advance by one.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

// Latin letters with diacritics fold to their ASCII base form; ligatures and
// a few Germanic letters expand. Everything else non-ASCII acts as a
// separator (non-Latin transliteration is out of scope).
const char* fold_latin(char32_t cp) {
    switch (cp) {
    case 0xC6: case 0xE6: return "ae";
    case 0xDF: return "ss";
    case 0xD0: case 0xF0: case 0x110: case 0x111: return "d";
    case 0xDE: case 0xFE: return "th";
    case 0x132: case 0x133: return "ij";
    case 0x152: case 0x153: return "oe";
    case 0x149: return "n";
    case 0x17F: return "s";
    default: break;
    }
    if (cp >= 0xC0 && cp <= 0xFF) {
        // Latin-1 Supplement letters (x D7 and xF7 are operators)
        if (cp == 0xD7 || cp == 0xF7) return nullptr;
        static const char* kBase = "aaaaaa?ceeeeiiii?nooooo?ouuuuy??aaaaaa?ceeeeiiii?nooooo?ouuuuy?y";
        const char c = kBase[cp - 0xC0];
        if (c == '?') return nullptr;
        switch (c) {
        case 'a': return "a";
        case 'c': return "c";
        case 'e': return "e";
        case 'i': return "i";
        case 'n': return "n";
        case 'o': return "o";
        case 'u': return "u";
        case 'y': return "y";
        default: return nullptr;
        }
    }
    if (cp >= 0x100 && cp <= 0x17E) {
        // Latin Extended-A comes in base-letter runs.
        struct Run { char32_t lo, hi; const char* base; };
        static constexpr Run kRuns[] = {
            {0x100, 0x105, "a"}, {0x106, 0x10D, "c"}, {0x10E, 0x10F, "d"},
            {0x112, 0x11B, "e"}, {0x11C, 0x123, "g"}, {0x124, 0x127, "h"},
            {0x128, 0x131, "i"}, {0x134, 0x135, "j"}, {0x136, 0x138, "k"},
            {0x139, 0x142, "l"}, {0x143, 0x14B, "n"}, {0x14C, 0x151, "o"},
            {0x154, 0x159, "r"}, {0x15A, 0x161, "s"}, {0x162, 0x167, "t"},
            {0x168, 0x173, "u"}, {0x174, 0x175, "w"}, {0x176, 0x178, "y"},
            {0x179, 0x17E, "z"},
        };
        for (const auto& run : kRuns)
            if (cp >= run.lo && cp <= run.hi) return run.base;
    }
    return nullptr;
}

bool is_stopword(std::string_view token) {
    return token == "of" || token == "the" || token == "and" || token == "for";
}

} // namespace

NormalizedName normalize_name(std::string_view raw) {
    std::string canonical;
    canonical.reserve(raw.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < raw.size()) {
        const char32_t cp = decode_utf8(raw, i);
        const char* folded = nullptr;
        char ascii = 0;
        if (cp < 0x80) {
            const auto c = static_cast<unsigned char>(cp);
            if (std::isalnum(c))
                ascii = static_cast<char>(std::tolower(c));
        } else {
            folded = fold_latin(cp);
        }
        if (ascii == 0 && folded == nullptr) {
            // punctuation, whitespace, or unfoldable codepoint: separator
            pending_space = !canonical.empty();
            continue;
        }
        if (pending_space) {
            canonical.push_back(' ');
            pending_space = false;
        }
        if (ascii != 0)
            canonical.push_back(ascii);
        else
            canonical.append(folded);
    }
    if (canonical.empty()) throw EmptyInputError();

    NormalizedName name;
    name.raw.assign(raw);
    name.canonical = std::move(canonical);
    std::istringstream split(name.canonical);
    for (std::string tok; split >> tok;) name.tokens.push_back(std::move(tok));
    return name;
}

std::vector<NormalizedName> expand_candidates(const NormalizedName& name,
                                              const AbbreviationTable& table,
                                              std::size_t cap) {
    if (name.tokens.empty()) return {name};

    // option lists per token; index 0 is always the original token
    std::vector<std::vector<std::string>> options;
    options.reserve(name.tokens.size());
    std::size_t combinations = 1;
    for (const auto& token : name.tokens) {
        std::vector<std::string> opts{token};
        if (const auto* exps = table.find(token)) {
            for (const auto& e : *exps)
                if (std::find(opts.begin(), opts.end(), e) == opts.end()) opts.push_back(e);
        }
        if (combinations > cap / opts.size()) return {name}; // product would exceed cap
        combinations *= opts.size();
        options.push_back(std::move(opts));
    }

    std::vector<NormalizedName> out;
    out.reserve(combinations);
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
        std::string joined;
        for (std::size_t t = 0; t < options.size(); ++t) {
            if (t) joined.push_back(' ');
            joined += options[t][pick[t]];
        }
        NormalizedName candidate = normalize_name(joined);
        if (std::none_of(out.begin(), out.end(),
                         [&](const NormalizedName& n) { return n == candidate; }))
            out.push_back(std::move(candidate));
        // odometer increment; the first emitted combination is the unexpanded input
        std::size_t t = options.size();
        bool wrapped = true;
        while (t > 0) {
            --t;
            if (++pick[t] < options[t].size()) {
                wrapped = false;
                break;
            }
            pick[t] = 0;
        }
        if (wrapped) return out;
    }
}

Issn Issn::parse(std::string_view raw) {
    std::string code;
    code.reserve(8);
    for (const char c : raw) {
        if (c == '-' || c == ' ' || c == '\t') continue;
        code.push_back(c);
    }
    if (code.size() != 8)
        throw MalformedIssnError(std::string(raw),
                                 "expected 8 code characters, got " + std::to_string(code.size()));
    for (std::size_t i = 0; i < 7; ++i)
        if (!std::isdigit(static_cast<unsigned char>(code[i])))
            throw MalformedIssnError(std::string(raw), "positions 1-7 must be digits");
    char& check = code[7];
    if (check == 'x') check = 'X';
    if (!std::isdigit(static_cast<unsigned char>(check)) && check != 'X')
        throw MalformedIssnError(std::string(raw), "check character must be 0-9 or X");
    Issn issn;
    issn.digits_ = std::move(code);
    return issn;
}

std::optional<Issn> Issn::try_parse(std::string_view raw) {
    try {
        return parse(raw);
    } catch (const MalformedIssnError&) {
        return std::nullopt;
    }
}

Issn normalize_issn(std::string_view raw) {
    return Issn::parse(raw);
}

bool validate_issn_checksum(const Issn& issn) {
    const std::string& d = issn.digits();
    int sum = 0;
    for (int i = 0; i < 7; ++i) sum += (d[i] - '0') * (8 - i);
    const int r = sum % 11;
    const int expected = r == 0 ? 0 : 11 - r;
    const char expected_char = expected == 10 ? 'X' : static_cast<char>('0' + expected);
    return d[7] == expected_char;
}

std::size_t levenshtein(std::string_view a, std::string_view b, std::size_t max_dist) {
    if (a.size() > b.size()) std::swap(a, b);
    const std::size_t n = a.size(), m = b.size();
    if (m - n > max_dist) return max_dist + 1;
    std::vector<std::size_t> row(n + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t j = 1; j <= m; ++j) {
        std::size_t prev = row[0];
        row[0] = j;
        std::size_t best = row[0];
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t cur = std::min({row[i] + 1, row[i - 1] + 1,
                                              prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
            prev = row[i];
            row[i] = cur;
            best = std::min(best, cur);
        }
        if (best > max_dist) return max_dist + 1;
    }
    return row[n];
}

std::string strip_stopwords(const NormalizedName& name) {
    std::string out;
    for (const auto& tok : name.tokens) {
        if (is_stopword(tok)) continue;
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    // all-stopword names fall back to the full canonical form
    return out.empty() ? name.canonical : out;
}

double similarity(const NormalizedName& a, const NormalizedName& b) {
    if (a.canonical == b.canonical) return 1.0;
    const std::string sa = strip_stopwords(a);
    const std::string sb = strip_stopwords(b);
    if (sa == sb) return 1.0;
    const std::size_t maxlen = std::max(sa.size(), sb.size());
    if (maxlen == 0) return 1.0;
    const std::size_t dist = levenshtein(sa, sb);
    return 1.0 - static_cast<double>(dist) / static_cast<double>(maxlen);
}

AbbreviationTable AbbreviationTable::parse(std::string_view content) {
    AbbreviationTable table;
    std::istringstream in{std::string(content)};
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue; // tolerate stray lines
        const std::string key = trim(std::string_view(line).substr(0, tab));
        std::string_view rest = std::string_view(line).substr(tab + 1);
        std::vector<std::string> expansions;
        std::size_t start = 0;
        while (start <= rest.size()) {
            const std::size_t bar = std::min(rest.find('|', start), rest.size());
            const std::string exp = trim(rest.substr(start, bar - start));
            if (!exp.empty()) expansions.push_back(exp);
            if (bar == rest.size()) break;
            start = bar + 1;
        }
        if (!key.empty() && !expansions.empty()) table.add(key, std::move(expansions));
    }
    return table;
}

AbbreviationTable AbbreviationTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void AbbreviationTable::add(std::string_view abbrev, std::vector<std::string> expansions) {
    std::string key = to_lower_ascii(trim(abbrev));
    if (!key.empty() && key.back() == '.') key.pop_back();
    if (key.empty()) return;
    // expansions are stored in canonical token form
    std::vector<std::string> canon;
    canon.reserve(expansions.size());
    for (auto& e : expansions) {
        try {
            canon.push_back(normalize_name(e).canonical);
        } catch (const EmptyInputError&) {
        }
    }
    if (canon.empty()) return;
    auto& slot = entries_[key];
    for (auto& e : canon)
        if (std::find(slot.begin(), slot.end(), e) == slot.end()) slot.push_back(std::move(e));
}

const std::vector<std::string>* AbbreviationTable::find(std::string_view token) const {
    std::string key = to_lower_ascii(trim(token));
    if (!key.empty() && key.back() == '.') key.pop_back();
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

namespace detail {
// defined in abbreviation_data.cpp (generated from core/data/abbreviations.tsv)
extern const char* const kBuiltinAbbreviations;
} // namespace detail

const AbbreviationTable& AbbreviationTable::builtin() {
    static const AbbreviationTable table = parse(detail::kBuiltinAbbreviations);
    return table;
}

} // namespace aletheia
