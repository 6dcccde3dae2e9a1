#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aletheia {

// Canonical form of a journal name: lowercased, diacritics folded to ASCII,
// punctuation stripped, whitespace collapsed. tokens joined by single spaces
// equal canonical.
struct NormalizedName {
    std::string raw;
    std::string canonical;
    std::vector<std::string> tokens;

    bool operator==(const NormalizedName& other) const { return canonical == other.canonical; }
};

// 8-character serial identifier; digits() holds 7 digits plus the check
// character (0-9 or X), display() is the hyphenated NNNN-NNNC form.
class Issn {
public:
    static Issn parse(std::string_view raw); // throws MalformedIssnError
    static std::optional<Issn> try_parse(std::string_view raw);

    const std::string& digits() const { return digits_; }
    std::string display() const { return digits_.substr(0, 4) + "-" + digits_.substr(4); }

    bool operator==(const Issn&) const = default;
    auto operator<=>(const Issn&) const = default;

private:
    std::string digits_;
};

// Journal-title abbreviation expansions, e.g. "j" -> {"journal"}.
// Keys are stored lowercase without a trailing period; lookup tolerates both.
class AbbreviationTable {
public:
    // File format: one record per line, `abbrev<TAB>expansion1|expansion2`.
    // Blank lines and lines starting with '#' are skipped.
    static AbbreviationTable load(const std::filesystem::path& path);
    static AbbreviationTable parse(std::string_view content);
    static const AbbreviationTable& builtin(); // table shipped with the library

    void add(std::string_view abbrev, std::vector<std::string> expansions);
    const std::vector<std::string>* find(std::string_view token) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::vector<std::string>> entries_;
};

// Trim, casefold, fold diacritics to base letters, strip punctuation,
// collapse whitespace. Idempotent on its own canonical output.
// Throws EmptyInputError when raw is blank.
NormalizedName normalize_name(std::string_view raw);

// All expansion combinations of abbreviated tokens (cartesian product), the
// unexpanded input always first. If the product would exceed `cap` candidate
// forms, only the unexpanded input is returned.
std::vector<NormalizedName> expand_candidates(const NormalizedName& name,
                                              const AbbreviationTable& table,
                                              std::size_t cap = 64);

// Formatting-only normalization; does not require a valid checksum.
Issn normalize_issn(std::string_view raw);

// ISSN mod-11 rule: weights 8..2 over the first 7 digits; remainder 0 ->
// check 0, otherwise 11 - r with 10 rendered as X.
bool validate_issn_checksum(const Issn& issn);

// 1 - Levenshtein/maxlen over stopword-free canonical strings.
// Symmetric; equal canonical forms score 1.0.
double similarity(const NormalizedName& a, const NormalizedName& b);

// Auto-match and weak-match thresholds for fuzzy name matching.
inline constexpr double kAutoMatchThreshold = 0.90;
inline constexpr double kWeakMatchThreshold = 0.80;

// Levenshtein distance; if max_dist is set and the true distance exceeds it,
// any value > max_dist may be returned.
std::size_t levenshtein(std::string_view a, std::string_view b,
                        std::size_t max_dist = static_cast<std::size_t>(-1));

// Canonical string with the matching stopwords {of, the, and, for} removed.
std::string strip_stopwords(const NormalizedName& name);

} // namespace aletheia
