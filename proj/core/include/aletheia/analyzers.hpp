#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "aletheia/evidence.hpp"
#include "aletheia/query.hpp"

namespace aletheia {

inline constexpr const char* kWorksAnalyzerId = "openalex_analyzer";
inline constexpr const char* kMetadataAnalyzerId = "crossref_analyzer";
inline constexpr const char* kRetractionAnalyzerId = "retraction_watch";

// Observable publication metrics for one journal (most recent full year).
struct WorksProfile {
    double papers_per_year = 0.0;
    double citations_per_paper = 0.0;
    double distinct_author_ratio = 0.0; // distinct authors / authorship slots
    double yoy_growth = 0.0;            // fractional year-over-year change

    bool valid() const;
};

// Majority-presence indicators over sampled works.
struct MetadataProfile {
    bool has_abstracts = false;
    bool has_references = false;
    bool has_orcids = false;
    bool has_funding = false;
    bool has_license = false;

    double completeness() const {
        return (has_abstracts + has_references + has_orcids + has_funding + has_license) / 5.0;
    }
};

struct RetractionStats {
    std::uint64_t retractions = 0;
    std::uint64_t publications = 0; // must be positive

    bool valid() const { return publications > 0 && retractions <= publications; }
};

// Heuristic cutoffs. The volume and citation values come straight from the
// published rule of thumb; the rest are tool defaults and stay configurable.
struct HeuristicThresholds {
    double papers_per_year_mill = 1000.0; // strictly above -> publication_mill
    double citations_low = 0.5;           // strictly below -> low_citation
    double author_diversity_low = 0.3;    // strictly below -> low_author_diversity
    double growth_anomalous = 2.0;        // strictly above -> anomalous_growth
    double metadata_complete = 0.8;       // >= -> legitimate
    double metadata_sparse = 0.2;         // <= -> predatory
    double retraction_rate_low = 0.1;     // percent; strictly below -> legitimate
    double retraction_rate_high = 0.5;    // percent; strictly above -> predatory
};

// Volume/citation/diversity/growth flags. Any flag votes predatory at
// 0.55 + 0.05 per extra flag (capped 0.70); a clean profile with healthy
// citations votes legitimate at 0.55 + 0.09 * min(1, citations/10).
BackendResult analyze_works(const WorksProfile& profile,
                            const HeuristicThresholds& thresholds = {});

BackendResult analyze_metadata(const MetadataProfile& profile,
                               const HeuristicThresholds& thresholds = {});

// 100 * retractions / publications as a percentage, rounded half-up to
// 3 decimals. Throws ZeroPublicationsError.
double retraction_rate(const RetractionStats& stats);

// "155 retraction(s): 0.035 for 446,231 publications"
std::string format_retraction_note(const RetractionStats& stats);

BackendResult analyze_retractions(const RetractionStats& stats,
                                  const HeuristicThresholds& thresholds = {});

// Boundary to the metadata providers; implementations must be substitutable
// by fixtures and tolerate concurrent calls.
class MetricsClient {
public:
    virtual ~MetricsClient() = default;
    virtual std::optional<WorksProfile> fetch_works_profile(const JournalQuery& query) = 0;
    virtual std::optional<MetadataProfile> fetch_metadata_profile(const JournalQuery& query) = 0;
    virtual std::optional<RetractionStats> fetch_retraction_stats(const JournalQuery& query) = 0;
};

// Fixture client reading one JSON document keyed by ISSN display form or
// canonical journal name:
//   { "0028-0836": { "works_profile": {...}, "metadata_profile": {...},
//                    "retraction_stats": {"retractions": 155, "publications": 446231} } }
// Profile field names match the struct members above.
class FileMetricsClient : public MetricsClient {
public:
    explicit FileMetricsClient(const std::filesystem::path& path);
    static FileMetricsClient from_string(std::string_view content);

    std::optional<WorksProfile> fetch_works_profile(const JournalQuery& query) override;
    std::optional<MetadataProfile> fetch_metadata_profile(const JournalQuery& query) override;
    std::optional<RetractionStats> fetch_retraction_stats(const JournalQuery& query) override;

private:
    FileMetricsClient() = default;
    const nlohmann::json* entry_for(const JournalQuery& query) const;
    nlohmann::json data_;
};

} // namespace aletheia
