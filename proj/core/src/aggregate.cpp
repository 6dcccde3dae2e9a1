#include "aletheia/aggregate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

using nlohmann::json;

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

std::string backend_line(const BackendResult& r) {
    std::string line = r.backend_id + ": " + std::string(verdict_lower(r.verdict)) +
                       " (confidence: " + format_fixed(r.confidence, 2) + ")";
    // surface warning detail for analyzer flags and hijacked-list hits
    std::vector<std::string> detail;
    for (const auto& note : r.notes) {
        if (note.rfind("flag: ", 0) == 0) detail.push_back(note.substr(6));
        if (note == "hijacked") detail.emplace_back("hijacked");
        if (note.rfind("weak name match", 0) == 0) detail.push_back(note);
    }
    if (!detail.empty()) {
        line += " - ";
        for (std::size_t i = 0; i < detail.size(); ++i) {
            if (i) line += ", ";
            line += detail[i];
        }
    }
    return line;
}

std::string conflict_note_line(const CrossCheckFinding& f) {
    std::string line = "NOTE: " + std::string(cross_field_name(f.field)) +
                       " metadata disagrees across sources: ";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (i) line += ", ";
        line += f.values[i].first + "='" + f.values[i].second + "'";
    }
    return line;
}

} // namespace

AggregationWeights load_weights(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("weights file " + path.string() + ": " + e.what());
    }
    AggregationWeights w;
    w.curated_weight = doc.value("curated_weight", w.curated_weight);
    w.analyzer_weight = doc.value("analyzer_weight", w.analyzer_weight);
    w.agreement_bonus = doc.value("agreement_bonus", w.agreement_bonus);
    w.conflict_penalty = doc.value("conflict_penalty", w.conflict_penalty);
    w.crossval_conflict_penalty =
        doc.value("crossval_conflict_penalty", w.crossval_conflict_penalty);
    if (w.curated_weight < 0 || w.analyzer_weight < 0 || w.agreement_bonus < 0 ||
        w.conflict_penalty < 0 || w.crossval_conflict_penalty < 0)
        throw ConfigError("aggregation weights must be non-negative");
    return w;
}

std::string_view source_status_name(SourceStatus s) {
    switch (s) {
    case SourceStatus::Ok: return "ok";
    case SourceStatus::NoData: return "no_data";
    case SourceStatus::Unavailable: return "unavailable";
    }
    return "ok";
}

SourceStatus source_status_from_name(std::string_view name) {
    if (name == "ok") return SourceStatus::Ok;
    if (name == "no_data") return SourceStatus::NoData;
    if (name == "unavailable") return SourceStatus::Unavailable;
    throw Error("unknown source status: " + std::string(name));
}

std::string recommendation_text(Verdict verdict, double confidence) {
    switch (verdict) {
    case Verdict::Predatory:
        return confidence >= 0.8
                   ? "AVOID - Strong evidence of predatory characteristics detected"
                   : "USE CAUTION - Some predatory indicators detected, investigate further";
    case Verdict::Legitimate:
        return confidence >= 0.8 ? "ACCEPTABLE - Strong evidence of legitimacy, appears trustworthy"
                                 : "LIKELY ACCEPTABLE - verify against institutional policy";
    case Verdict::Unknown:
    case Verdict::InsufficientData:
        return "MANUAL REVIEW - insufficient automated evidence";
    }
    return "MANUAL REVIEW - insufficient automated evidence";
}

Assessment aggregate(std::vector<BackendResult> results,
                     const std::vector<CrossCheckFinding>& findings,
                     const AggregationWeights& weights) {
    std::sort(results.begin(), results.end(), [](const BackendResult& a, const BackendResult& b) {
        if (a.backend_id != b.backend_id) return a.backend_id < b.backend_id;
        if (a.verdict != b.verdict) return a.verdict < b.verdict;
        return a.confidence < b.confidence;
    });

    Assessment a;
    a.assessed_at = now_iso8601();
    for (const auto& r : results) a.sources_consulted.push_back({r.backend_id, SourceStatus::Ok});

    std::size_t crossval_conflicts = 0;
    for (const auto& f : findings)
        if (f.severity == CrossSeverity::Conflict) ++crossval_conflicts;

    if (results.empty()) {
        a.verdict = Verdict::InsufficientData;
        a.reasoning.emplace_back("No source returned data");
        a.recommendation = recommendation_text(a.verdict, a.confidence);
        return a;
    }

    double predatory_mass = 0.0, legitimate_mass = 0.0;
    std::size_t predatory_votes = 0, legitimate_votes = 0;
    for (const auto& r : results) {
        const double w =
            r.kind == BackendKind::Curated ? weights.curated_weight : weights.analyzer_weight;
        // UNKNOWN responses are mass-neutral by contract
        if (r.verdict == Verdict::Predatory) {
            predatory_mass += w * r.confidence;
            ++predatory_votes;
        } else if (r.verdict == Verdict::Legitimate) {
            legitimate_mass += w * r.confidence;
            ++legitimate_votes;
        }
    }

    const double total = predatory_mass + legitimate_mass;
    a.conflict = predatory_mass > 0.0 && legitimate_mass > 0.0;

    std::size_t agreeing = 0;
    if (total == 0.0) {
        a.verdict = Verdict::Unknown;
    } else if (predatory_mass > legitimate_mass) {
        a.verdict = Verdict::Predatory;
        agreeing = predatory_votes;
    } else if (legitimate_mass > predatory_mass) {
        a.verdict = Verdict::Legitimate;
        agreeing = legitimate_votes;
    } else {
        a.verdict = Verdict::Unknown; // evenly split evidence stays unresolved
    }
    a.overall_score = total > 0.0 ? std::max(predatory_mass, legitimate_mass) / total : 0.0;

    if (a.verdict == Verdict::Predatory || a.verdict == Verdict::Legitimate) {
        a.confidence = clamp01(a.overall_score +
                               weights.agreement_bonus * static_cast<double>(agreeing - 1) -
                               (a.conflict ? weights.conflict_penalty : 0.0) -
                               weights.crossval_conflict_penalty *
                                   static_cast<double>(crossval_conflicts));
    } else if (a.conflict) {
        // tied masses: score is 0.5 by construction, penalties still apply
        a.confidence = clamp01(a.overall_score - weights.conflict_penalty -
                               weights.crossval_conflict_penalty *
                                   static_cast<double>(crossval_conflicts));
    }

    // reasoning: summary, note-style lines, per-backend lines, cross-validation
    // conflicts, then agreement/disagreement notes
    if (a.verdict == Verdict::Predatory || a.verdict == Verdict::Legitimate) {
        a.reasoning.push_back("Classified as " + std::string(verdict_lower(a.verdict)) +
                              " based on " + std::to_string(agreeing) + " source(s)");
    } else if (a.conflict) {
        a.reasoning.emplace_back("Unable to classify: evidence is evenly split");
    } else {
        a.reasoning.emplace_back("Sources responded but none provided a classification");
    }
    for (const auto& r : results)
        if (r.display_line) a.reasoning.push_back(*r.display_line);
    for (const auto& r : results)
        if (!r.display_line) a.reasoning.push_back(backend_line(r));
    for (const auto& f : findings)
        if (f.severity == CrossSeverity::Conflict) a.reasoning.push_back(conflict_note_line(f));
    if (agreeing >= 2 && !a.conflict)
        a.reasoning.emplace_back("Confidence boosted by agreement across multiple backends");
    if (a.conflict)
        a.reasoning.push_back("NOTE: Sources disagree (" + std::to_string(predatory_votes) +
                              " predatory, " + std::to_string(legitimate_votes) +
                              " legitimate) - review carefully");

    a.recommendation = recommendation_text(a.verdict, a.confidence);
    a.evidence = std::move(results);
    return a;
}

void to_json(json& j, const Assessment& a) {
    json consulted = json::array();
    for (const auto& s : a.sources_consulted)
        consulted.push_back({{"id", s.backend_id}, {"status", source_status_name(s.status)}});
    j = json{
        {"journal", a.subject},
        {"verdict", verdict_name(a.verdict)},
        {"overall_score", a.overall_score},
        {"confidence", a.confidence},
        {"conflict", a.conflict},
        {"reasoning", a.reasoning},
        {"recommendation", a.recommendation},
        {"assessed_at", a.assessed_at},
        {"sources_consulted", consulted},
        {"processing_time_ms", a.processing_time_ms},
        {"evidence", a.evidence},
    };
}

void from_json(const json& j, Assessment& a) {
    a.subject = j.value("journal", "");
    a.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    a.overall_score = j.at("overall_score").get<double>();
    a.confidence = j.at("confidence").get<double>();
    a.conflict = j.at("conflict").get<bool>();
    a.reasoning = j.at("reasoning").get<std::vector<std::string>>();
    a.recommendation = j.at("recommendation").get<std::string>();
    a.assessed_at = j.at("assessed_at").get<std::string>();
    a.sources_consulted.clear();
    for (const auto& s : j.at("sources_consulted")) {
        a.sources_consulted.push_back(
            {s.at("id").get<std::string>(),
             source_status_from_name(s.at("status").get<std::string>())});
    }
    a.processing_time_ms = j.value("processing_time_ms", 0.0);
    a.evidence = j.value("evidence", std::vector<BackendResult>{});
    a.from_cache = false;
}

} // namespace aletheia
