#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aletheia/crossval.hpp"
#include "aletheia/evidence.hpp"

namespace aletheia {

// Evidence-mass weights and confidence adjustments. Curated determinations
// outweigh heuristic analyzers 2:1.
struct AggregationWeights {
    double curated_weight = 1.0;
    double analyzer_weight = 0.5;
    double agreement_bonus = 0.05;          // per extra agreeing backend
    double conflict_penalty = 0.10;
    double crossval_conflict_penalty = 0.05; // per conflict finding
};

// JSON file with any subset of the five fields; missing fields keep defaults.
AggregationWeights load_weights(const std::filesystem::path& path);

enum class SourceStatus { Ok, NoData, Unavailable };

std::string_view source_status_name(SourceStatus s);
SourceStatus source_status_from_name(std::string_view name);

struct ConsultedSource {
    std::string backend_id;
    SourceStatus status = SourceStatus::Ok;

    bool operator==(const ConsultedSource&) const = default;
};

// The final transparent verdict for one journal.
struct Assessment {
    Verdict verdict = Verdict::InsufficientData;
    double overall_score = 0.0; // winning-side mass fraction, max(P,L)/(P+L)
    double confidence = 0.0;
    std::vector<std::string> reasoning;
    bool conflict = false; // both predatory and legitimate masses positive
    std::string recommendation;
    std::string assessed_at; // ISO-8601 UTC
    std::vector<ConsultedSource> sources_consulted;

    std::string subject; // display name of the assessed journal
    double processing_time_ms = 0.0;
    bool from_cache = false;
    std::vector<BackendResult> evidence; // responding backends, sorted by id
};

void to_json(nlohmann::json& j, const Assessment& a);
void from_json(const nlohmann::json& j, Assessment& a);

// Combines backend results and cross-validation findings into one
// assessment. Results may arrive in any order; the output is
// order-independent. sources_consulted is filled with the responding
// backends; the orchestrator appends backends that returned nothing.
Assessment aggregate(std::vector<BackendResult> results,
                     const std::vector<CrossCheckFinding>& findings = {},
                     const AggregationWeights& weights = {});

std::string recommendation_text(Verdict verdict, double confidence);

} // namespace aletheia
