#include "aletheia/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aletheia/errors.hpp"

namespace aletheia {

namespace {

using nlohmann::json;

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

CustomListSpec::Format list_format_from_name(const std::string& name) {
    if (name == "csv") return CustomListSpec::Format::Csv;
    if (name == "json" || name == "jsonl") return CustomListSpec::Format::Json;
    if (name.empty() || name == "auto") return CustomListSpec::Format::Auto;
    throw ConfigError("unknown custom list format: " + name);
}

void parse_columns(const json& obj, CustomListSpec& spec) {
    spec.name_field = obj.value("name_field", spec.name_field);
    spec.issn_field = obj.value("issn_field", spec.issn_field);
    spec.classification_field = obj.value("classification_field", spec.classification_field);
    spec.publisher_field = obj.value("publisher_field", spec.publisher_field);
}

void parse_thresholds(const json& obj, HeuristicThresholds& t) {
    t.papers_per_year_mill = obj.value("papers_per_year_mill", t.papers_per_year_mill);
    t.citations_low = obj.value("citations_low", t.citations_low);
    t.author_diversity_low = obj.value("author_diversity_low", t.author_diversity_low);
    t.growth_anomalous = obj.value("growth_anomalous", t.growth_anomalous);
    t.metadata_complete = obj.value("metadata_complete", t.metadata_complete);
    t.metadata_sparse = obj.value("metadata_sparse", t.metadata_sparse);
    t.retraction_rate_low = obj.value("retraction_rate_low", t.retraction_rate_low);
    t.retraction_rate_high = obj.value("retraction_rate_high", t.retraction_rate_high);
}

void parse_weights(const json& obj, AggregationWeights& w) {
    w.curated_weight = obj.value("curated_weight", w.curated_weight);
    w.analyzer_weight = obj.value("analyzer_weight", w.analyzer_weight);
    w.agreement_bonus = obj.value("agreement_bonus", w.agreement_bonus);
    w.conflict_penalty = obj.value("conflict_penalty", w.conflict_penalty);
    w.crossval_conflict_penalty =
        obj.value("crossval_conflict_penalty", w.crossval_conflict_penalty);
}

} // namespace

std::filesystem::path Config::resolve(const std::filesystem::path& p) const {
    if (p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

std::filesystem::path Config::effective_snapshots_dir() const {
    if (snapshots_dir) return resolve(*snapshots_dir);
    return data_dir() / "snapshots";
}

std::filesystem::path data_dir() {
    if (auto dir = env("ALETHEIA_DATA_DIR")) return *dir;
    if (auto xdg = env("XDG_DATA_HOME")) return std::filesystem::path(*xdg) / "aletheia-probe";
    if (auto home = env("HOME"))
        return std::filesystem::path(*home) / ".local" / "share" / "aletheia-probe";
    return std::filesystem::temp_directory_path() / "aletheia-probe";
}

std::filesystem::path default_config_path() {
    if (auto cfg = env("ALETHEIA_CONFIG")) return *cfg;
    if (auto xdg = env("XDG_CONFIG_HOME"))
        return std::filesystem::path(*xdg) / "aletheia-probe" / "config.json";
    if (auto home = env("HOME"))
        return std::filesystem::path(*home) / ".config" / "aletheia-probe" / "config.json";
    return data_dir() / "config.json";
}

std::filesystem::path default_cache_path() {
    return data_dir() / "cache.sqlite3";
}

Config parse_config(std::string_view content, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    Config cfg;
    cfg.base_dir = base_dir;

    if (doc.contains("backends")) {
        const json& backends = doc["backends"];
        if (!backends.is_object()) throw ConfigError("config: backends must be an object");
        for (const auto& [source_id, value] : backends.items()) {
            BackendConfig bc;
            if (value.is_string()) {
                bc.snapshot = value.get<std::string>();
            } else if (value.is_object()) {
                bc.snapshot = value.value("snapshot", "");
                bc.enabled = value.value("enabled", true);
            } else {
                throw ConfigError("config: backend entry '" + source_id + "' malformed");
            }
            if (bc.snapshot.empty())
                throw ConfigError("config: backend '" + source_id + "' missing snapshot path");
            cfg.backends.emplace(source_id, std::move(bc));
        }
    }

    if (doc.contains("custom_lists")) {
        for (const auto& item : doc["custom_lists"]) {
            CustomListConfig clc;
            if (item.is_string()) {
                clc.spec.path = item.get<std::string>();
            } else if (item.is_object()) {
                clc.spec.path = item.value("path", "");
                clc.spec.format = list_format_from_name(item.value("format", "auto"));
                parse_columns(item, clc.spec);
                clc.enabled = item.value("enabled", true);
            } else {
                throw ConfigError("config: custom_lists entries must be paths or objects");
            }
            if (clc.spec.path.empty())
                throw ConfigError("config: custom list entry missing path");
            cfg.custom_lists.push_back(std::move(clc));
        }
    }

    if (doc.contains("analyzers")) {
        const json& an = doc["analyzers"];
        cfg.analyzers.works = an.value("works", true);
        cfg.analyzers.metadata = an.value("metadata", true);
        cfg.analyzers.retractions = an.value("retractions", true);
        if (an.contains("metrics_fixture"))
            cfg.analyzers.metrics_fixture = an["metrics_fixture"].get<std::string>();
        if (an.contains("thresholds")) parse_thresholds(an["thresholds"], cfg.analyzers.thresholds);
    }

    if (doc.contains("abbreviations"))
        cfg.abbreviations = doc["abbreviations"].get<std::string>();
    if (doc.contains("weights_path"))
        cfg.weights_path = doc["weights_path"].get<std::string>();
    if (doc.contains("weights")) parse_weights(doc["weights"], cfg.weights);

    cfg.timeout_seconds = doc.value("timeout_seconds", cfg.timeout_seconds);
    if (cfg.timeout_seconds <= 0) throw ConfigError("config: timeout_seconds must be positive");

    if (doc.contains("cache")) {
        const json& c = doc["cache"];
        cfg.cache.enabled = c.value("enabled", true);
        cfg.cache.ttl_days = c.value("ttl_days", cfg.cache.ttl_days);
        if (c.contains("path")) cfg.cache.path = c["path"].get<std::string>();
        if (cfg.cache.ttl_days < 0) throw ConfigError("config: cache.ttl_days must be >= 0");
    }

    cfg.batch_concurrency = doc.value("batch_concurrency", cfg.batch_concurrency);
    if (cfg.batch_concurrency < 1)
        throw ConfigError("config: batch_concurrency must be >= 1");

    if (doc.contains("sources")) {
        for (const auto& item : doc["sources"]) {
            if (!item.is_object()) throw ConfigError("config: sources entries must be objects");
            SourceDescriptor sd;
            sd.source_id = item.value("source_id", "");
            sd.location = item.value("location", "");
            sd.format = item.value("format", "jsonl");
            parse_columns(item, sd.columns);
            if (sd.source_id.empty() || sd.location.empty())
                throw ConfigError("config: source entries need source_id and location");
            if (sd.format != "jsonl" && sd.format != "csv" && sd.format != "json")
                throw ConfigError("config: source format must be jsonl, csv, or json");
            cfg.sources.push_back(std::move(sd));
        }
    }

    if (doc.contains("snapshots_dir"))
        cfg.snapshots_dir = doc["snapshots_dir"].get<std::string>();

    // a weights file overrides inline values where present
    if (cfg.weights_path) cfg.weights = load_weights(cfg.resolve(*cfg.weights_path));
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.has_parent_path() ? path.parent_path()
                                                          : std::filesystem::path("."));
}

} // namespace aletheia
