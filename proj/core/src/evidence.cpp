#include "aletheia/evidence.hpp"

#include "aletheia/errors.hpp"

namespace aletheia {

std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Legitimate: return "LEGITIMATE";
    case Verdict::Predatory: return "PREDATORY";
    case Verdict::Unknown: return "UNKNOWN";
    case Verdict::InsufficientData: return "INSUFFICIENT_DATA";
    }
    return "UNKNOWN";
}

std::string_view verdict_lower(Verdict v) {
    switch (v) {
    case Verdict::Legitimate: return "legitimate";
    case Verdict::Predatory: return "predatory";
    case Verdict::Unknown: return "unknown";
    case Verdict::InsufficientData: return "insufficient_data";
    }
    return "unknown";
}

Verdict verdict_from_name(std::string_view name) {
    if (name == "LEGITIMATE" || name == "legitimate") return Verdict::Legitimate;
    if (name == "PREDATORY" || name == "predatory") return Verdict::Predatory;
    if (name == "UNKNOWN" || name == "unknown") return Verdict::Unknown;
    if (name == "INSUFFICIENT_DATA" || name == "insufficient_data")
        return Verdict::InsufficientData;
    throw Error("unknown verdict name: " + std::string(name));
}

std::string_view backend_kind_name(BackendKind k) {
    return k == BackendKind::Curated ? "curated" : "analyzer";
}

BackendKind backend_kind_from_name(std::string_view name) {
    if (name == "curated") return BackendKind::Curated;
    if (name == "analyzer") return BackendKind::Analyzer;
    throw Error("unknown backend kind: " + std::string(name));
}

void to_json(nlohmann::json& j, const BackendResult& r) {
    j = nlohmann::json{
        {"backend_id", r.backend_id},
        {"verdict", verdict_name(r.verdict)},
        {"confidence", r.confidence},
        {"kind", backend_kind_name(r.kind)},
        {"notes", r.notes},
    };
    if (r.matched_name) j["matched_name"] = *r.matched_name;
    if (r.publisher) j["publisher"] = *r.publisher;
    if (r.display_line) j["display_line"] = *r.display_line;
}

void from_json(const nlohmann::json& j, BackendResult& r) {
    r.backend_id = j.at("backend_id").get<std::string>();
    r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    r.confidence = j.at("confidence").get<double>();
    r.kind = backend_kind_from_name(j.at("kind").get<std::string>());
    r.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("matched_name")) r.matched_name = j["matched_name"].get<std::string>();
    if (j.contains("publisher")) r.publisher = j["publisher"].get<std::string>();
    if (j.contains("display_line")) r.display_line = j["display_line"].get<std::string>();
}

} // namespace aletheia
