#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aletheia/evidence.hpp"
#include "aletheia/normalize.hpp"
#include "aletheia/query.hpp"

namespace aletheia {

enum class Classification { Legitimate, Predatory, Hijacked };

std::string_view classification_name(Classification c);
Classification classification_from_name(std::string_view name);

// One canonical curated-list entry. At least one of {name, issns} is present.
struct ListRecord {
    NormalizedName name; // canonical may be empty for ISSN-only records
    std::vector<Issn> issns;
    std::optional<std::string> publisher;
    Classification classification = Classification::Legitimate;
    std::string source_id;
    std::string retrieved_at; // ISO-8601 UTC
};

// Immutable snapshot of one curated source, indexed for lookup.
struct ListSnapshot {
    std::string source_id;
    double default_confidence = 0.85;
    std::vector<ListRecord> records;

    std::unordered_map<std::string, std::size_t> by_issn; // display form -> record
    std::unordered_map<std::string, std::size_t> by_name; // canonical -> record

    void rebuild_index();
};

// Per-source default confidences. Ministry lists and hijacked-journal lists
// score like the other curated predatory archives; custom lists sit lower.
double default_confidence_for(std::string_view source_id);

// Canonical snapshot format: UTF-8 JSON lines, one record per line with
// fields {source_id, name, issns, publisher, classification, retrieved_at}.
ListSnapshot load_snapshot(const std::filesystem::path& path);
ListSnapshot parse_snapshot(std::string_view content);
void save_snapshot(const ListSnapshot& snapshot, const std::filesystem::path& path);

struct CustomListSpec {
    std::filesystem::path path;
    enum class Format { Auto, Csv, Json } format = Format::Auto;
    std::string name_field = "name";
    std::string issn_field = "issn";
    std::string classification_field = "classification";
    std::string publisher_field = "publisher";
};

struct ImportStats {
    std::size_t rows = 0;
    std::size_t kept = 0;
    std::size_t issn_warnings = 0; // rows kept name-only after ISSN failures
    std::vector<std::string> warnings;
};

// Imports a user-supplied CSV or JSON list as a canonical snapshot with
// source_id "custom:<filename>". Rows with malformed ISSNs are kept
// name-only and counted in stats.
ListSnapshot import_custom_list(const CustomListSpec& spec, ImportStats* stats = nullptr);

// Same importer with an explicit source id (used by source syncing).
ListSnapshot import_list_as(const CustomListSpec& spec, std::string_view source_id,
                            ImportStats* stats = nullptr);

// Match priority: exact ISSN > exact canonical name > fuzzy name at
// similarity >= 0.90 over abbreviation-expanded candidates. Fuzzy confidence
// scales with similarity. A near miss in [0.80, 0.90) reports an UNKNOWN
// result with a weak-match note; absence returns nullopt.
std::optional<BackendResult> lookup(const JournalQuery& query, const ListSnapshot& snapshot,
                                    const AbbreviationTable& table = AbbreviationTable::builtin());

} // namespace aletheia
