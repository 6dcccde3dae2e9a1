#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aletheia/aggregate.hpp"
#include "aletheia/analyzers.hpp"
#include "aletheia/registry.hpp"

namespace aletheia {

// One curated-list backend: a loaded canonical snapshot.
struct BackendConfig {
    std::filesystem::path snapshot;
    bool enabled = true;
};

struct CustomListConfig {
    CustomListSpec spec;
    bool enabled = true;
};

struct AnalyzerConfig {
    bool works = true;
    bool metadata = true;
    bool retractions = true;
    std::optional<std::filesystem::path> metrics_fixture;
    HeuristicThresholds thresholds;
};

struct CacheConfig {
    bool enabled = true;
    double ttl_days = 7.0;
    std::optional<std::filesystem::path> path; // defaults to <data_dir>/cache.sqlite3
};

// Raw dump to fetch and canonicalize during `sync`.
struct SourceDescriptor {
    std::string source_id;
    std::string location; // local path, file:// URL, or http(s):// URL
    std::string format = "jsonl"; // jsonl | csv | json
    CustomListSpec columns; // column/field names for csv/json dumps
};

struct Config {
    std::map<std::string, BackendConfig> backends; // keyed by source_id
    std::vector<CustomListConfig> custom_lists;
    AnalyzerConfig analyzers;
    std::optional<std::filesystem::path> abbreviations; // default: built-in table
    AggregationWeights weights;
    std::optional<std::filesystem::path> weights_path;
    double timeout_seconds = 10.0;
    CacheConfig cache;
    int batch_concurrency = 8;
    std::vector<SourceDescriptor> sources;
    std::optional<std::filesystem::path> snapshots_dir; // default: <data_dir>/snapshots

    std::filesystem::path base_dir; // directory of the config file

    // resolves a possibly-relative path against base_dir
    std::filesystem::path resolve(const std::filesystem::path& p) const;
    std::filesystem::path effective_snapshots_dir() const;
};

// Environment overrides: ALETHEIA_DATA_DIR, ALETHEIA_CONFIG.
std::filesystem::path data_dir();
std::filesystem::path default_config_path();
std::filesystem::path default_cache_path();

// Throws ConfigError / FileNotFoundError.
Config load_config(const std::filesystem::path& path);
Config parse_config(std::string_view content, const std::filesystem::path& base_dir);

} // namespace aletheia
