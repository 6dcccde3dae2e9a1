#include "aletheia/analyzers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

using nlohmann::json;

BackendResult analyzer_result(const char* id, Verdict verdict, double confidence) {
    BackendResult r;
    r.backend_id = id;
    r.kind = BackendKind::Analyzer;
    r.verdict = verdict;
    r.confidence = verdict == Verdict::Unknown ? 0.0 : confidence;
    return r;
}

std::string metric_note(const WorksProfile& p) {
    return "metrics: papers/year=" + format_fixed(p.papers_per_year, 1) +
           ", citations/paper=" + format_fixed(p.citations_per_paper, 2) +
           ", author diversity=" + format_fixed(p.distinct_author_ratio, 2) +
           ", yoy growth=" + format_fixed(p.yoy_growth, 2);
}

} // namespace

bool WorksProfile::valid() const {
    const bool finite = std::isfinite(papers_per_year) && std::isfinite(citations_per_paper) &&
                        std::isfinite(distinct_author_ratio) && std::isfinite(yoy_growth);
    return finite && papers_per_year >= 0.0 && citations_per_paper >= 0.0 &&
           distinct_author_ratio >= 0.0 && distinct_author_ratio <= 1.0;
}

BackendResult analyze_works(const WorksProfile& profile, const HeuristicThresholds& t) {
    std::vector<std::string> flags;
    if (profile.papers_per_year > t.papers_per_year_mill) flags.emplace_back("publication_mill");
    if (profile.citations_per_paper < t.citations_low) flags.emplace_back("low_citation");
    if (profile.distinct_author_ratio < t.author_diversity_low)
        flags.emplace_back("low_author_diversity");
    if (profile.yoy_growth > t.growth_anomalous) flags.emplace_back("anomalous_growth");

    BackendResult r;
    if (!flags.empty()) {
        const double confidence =
            std::min(0.70, 0.55 + 0.05 * static_cast<double>(flags.size() - 1));
        r = analyzer_result(kWorksAnalyzerId, Verdict::Predatory, confidence);
        for (const auto& f : flags) r.notes.push_back("flag: " + f);
    } else if (profile.citations_per_paper >= 1.0) {
        const double confidence = 0.55 + 0.09 * std::min(1.0, profile.citations_per_paper / 10.0);
        r = analyzer_result(kWorksAnalyzerId, Verdict::Legitimate, confidence);
    } else {
        r = analyzer_result(kWorksAnalyzerId, Verdict::Unknown, 0.0);
        r.notes.emplace_back("no warning flags, but citation rate below 1.0 is inconclusive");
    }
    r.notes.push_back(metric_note(profile));
    return r;
}

BackendResult analyze_metadata(const MetadataProfile& profile, const HeuristicThresholds& t) {
    const double completeness = profile.completeness();
    BackendResult r;
    if (completeness >= t.metadata_complete) {
        r = analyzer_result(kMetadataAnalyzerId, Verdict::Legitimate, 0.60);
    } else if (completeness <= t.metadata_sparse) {
        r = analyzer_result(kMetadataAnalyzerId, Verdict::Predatory, 0.55);
    } else {
        r = analyzer_result(kMetadataAnalyzerId, Verdict::Unknown, 0.0);
    }
    r.notes.push_back("metadata completeness: " + format_fixed(completeness, 2));
    const std::pair<bool, const char*> fields[] = {
        {profile.has_abstracts, "abstracts"},   {profile.has_references, "references"},
        {profile.has_orcids, "orcids"},         {profile.has_funding, "funding"},
        {profile.has_license, "license"},
    };
    std::string missing;
    for (const auto& [present, label] : fields) {
        if (present) continue;
        if (!missing.empty()) missing += ", ";
        missing += label;
    }
    if (!missing.empty()) r.notes.push_back("missing: " + missing);
    return r;
}

double retraction_rate(const RetractionStats& stats) {
    if (stats.publications == 0) throw ZeroPublicationsError();
    // thousandths of a percent, computed exactly and rounded half-up
    const std::uint64_t scaled = stats.retractions * 100000ull;
    std::uint64_t q = scaled / stats.publications;
    const std::uint64_t rem = scaled % stats.publications;
    if (2 * rem >= stats.publications) ++q;
    return static_cast<double>(q) / 1000.0;
}

std::string format_retraction_note(const RetractionStats& stats) {
    return std::to_string(stats.retractions) + " retraction(s): " +
           format_fixed(retraction_rate(stats), 3) + " for " +
           with_thousands(stats.publications) + " publications";
}

BackendResult analyze_retractions(const RetractionStats& stats, const HeuristicThresholds& t) {
    const double rate = retraction_rate(stats);
    BackendResult r;
    if (rate < t.retraction_rate_low) {
        r = analyzer_result(kRetractionAnalyzerId, Verdict::Legitimate, 0.60);
    } else if (rate > t.retraction_rate_high) {
        r = analyzer_result(kRetractionAnalyzerId, Verdict::Predatory, 0.60);
    } else {
        r = analyzer_result(kRetractionAnalyzerId, Verdict::Unknown, 0.0);
    }
    const std::string note = format_retraction_note(stats);
    r.notes.push_back(note);
    r.display_line = note;
    return r;
}

FileMetricsClient::FileMetricsClient(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        data_ = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error("metrics fixture " + path.string() + ": " + e.what());
    }
    if (!data_.is_object()) throw Error("metrics fixture must be a JSON object");
}

FileMetricsClient FileMetricsClient::from_string(std::string_view content) {
    FileMetricsClient client;
    client.data_ = json::parse(content);
    if (!client.data_.is_object()) throw Error("metrics fixture must be a JSON object");
    return client;
}

const json* FileMetricsClient::entry_for(const JournalQuery& query) const {
    for (const auto& issn : query.issns) {
        const auto it = data_.find(issn.display());
        if (it != data_.end()) return &*it;
    }
    const auto it = data_.find(query.name.canonical);
    if (it != data_.end()) return &*it;
    return nullptr;
}

std::optional<WorksProfile> FileMetricsClient::fetch_works_profile(const JournalQuery& query) {
    const json* entry = entry_for(query);
    if (entry == nullptr || !entry->contains("works_profile")) return std::nullopt;
    const json& p = (*entry)["works_profile"];
    WorksProfile profile;
    profile.papers_per_year = p.value("papers_per_year", 0.0);
    profile.citations_per_paper = p.value("citations_per_paper", 0.0);
    profile.distinct_author_ratio = p.value("distinct_author_ratio", 0.0);
    profile.yoy_growth = p.value("yoy_growth", 0.0);
    if (!profile.valid()) return std::nullopt;
    return profile;
}

std::optional<MetadataProfile>
FileMetricsClient::fetch_metadata_profile(const JournalQuery& query) {
    const json* entry = entry_for(query);
    if (entry == nullptr || !entry->contains("metadata_profile")) return std::nullopt;
    const json& p = (*entry)["metadata_profile"];
    MetadataProfile profile;
    profile.has_abstracts = p.value("has_abstracts", false);
    profile.has_references = p.value("has_references", false);
    profile.has_orcids = p.value("has_orcids", false);
    profile.has_funding = p.value("has_funding", false);
    profile.has_license = p.value("has_license", false);
    return profile;
}

std::optional<RetractionStats>
FileMetricsClient::fetch_retraction_stats(const JournalQuery& query) {
    const json* entry = entry_for(query);
    if (entry == nullptr || !entry->contains("retraction_stats")) return std::nullopt;
    const json& p = (*entry)["retraction_stats"];
    RetractionStats stats;
    stats.retractions = p.value("retractions", 0ull);
    stats.publications = p.value("publications", 0ull);
    if (!stats.valid()) return std::nullopt;
    return stats;
}

} // namespace aletheia
