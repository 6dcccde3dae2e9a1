#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace aletheia {

enum class Verdict { Legitimate, Predatory, Unknown, InsufficientData };

// "LEGITIMATE", "PREDATORY", "UNKNOWN", "INSUFFICIENT_DATA"
std::string_view verdict_name(Verdict v);
// "legitimate", "predatory", "unknown", "insufficient_data"
std::string_view verdict_lower(Verdict v);
Verdict verdict_from_name(std::string_view name);

enum class BackendKind { Curated, Analyzer };

std::string_view backend_kind_name(BackendKind k);
BackendKind backend_kind_from_name(std::string_view name);

// One source's finding for one journal. An UNKNOWN verdict contributes zero
// mass to aggregation regardless of the stored confidence.
struct BackendResult {
    std::string backend_id;
    Verdict verdict = Verdict::Unknown;
    double confidence = 0.0;
    BackendKind kind = BackendKind::Curated;
    std::vector<std::string> notes;

    // metadata for cross-validation
    std::optional<std::string> matched_name;
    std::optional<std::string> publisher;

    // when set, replaces the standard "<id>: <verdict> (confidence: C)"
    // reasoning line (used by the retraction backend's stats line)
    std::optional<std::string> display_line;

    bool operator==(const BackendResult&) const = default;
};

void to_json(nlohmann::json& j, const BackendResult& r);
void from_json(const nlohmann::json& j, BackendResult& r);

} // namespace aletheia
