#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aletheia/aggregate.hpp"
#include "aletheia/analyzers.hpp"
#include "aletheia/cache.hpp"
#include "aletheia/config.hpp"
#include "aletheia/query.hpp"
#include "aletheia/registry.hpp"

namespace aletheia {

// One queryable evidence source. Implementations must tolerate concurrent
// query() calls; nullopt means "no data for this journal".
class Backend {
public:
    virtual ~Backend() = default;
    virtual const std::string& id() const = 0;
    virtual BackendKind kind() const = 0;
    virtual std::optional<BackendResult> query(const JournalQuery& query) = 0;
};

class CuratedListBackend : public Backend {
public:
    // A null table means the built-in abbreviation table.
    explicit CuratedListBackend(ListSnapshot snapshot,
                                std::shared_ptr<const AbbreviationTable> table = nullptr);
    const std::string& id() const override { return snapshot_.source_id; }
    BackendKind kind() const override { return BackendKind::Curated; }
    std::optional<BackendResult> query(const JournalQuery& query) override;
    const ListSnapshot& snapshot() const { return snapshot_; }

private:
    ListSnapshot snapshot_;
    std::shared_ptr<const AbbreviationTable> table_;
};

class WorksAnalyzerBackend : public Backend {
public:
    WorksAnalyzerBackend(std::shared_ptr<MetricsClient> client, HeuristicThresholds thresholds);
    const std::string& id() const override { return id_; }
    BackendKind kind() const override { return BackendKind::Analyzer; }
    std::optional<BackendResult> query(const JournalQuery& query) override;

private:
    std::string id_ = kWorksAnalyzerId;
    std::shared_ptr<MetricsClient> client_;
    HeuristicThresholds thresholds_;
};

class MetadataAnalyzerBackend : public Backend {
public:
    MetadataAnalyzerBackend(std::shared_ptr<MetricsClient> client,
                            HeuristicThresholds thresholds);
    const std::string& id() const override { return id_; }
    BackendKind kind() const override { return BackendKind::Analyzer; }
    std::optional<BackendResult> query(const JournalQuery& query) override;

private:
    std::string id_ = kMetadataAnalyzerId;
    std::shared_ptr<MetricsClient> client_;
    HeuristicThresholds thresholds_;
};

class RetractionAnalyzerBackend : public Backend {
public:
    RetractionAnalyzerBackend(std::shared_ptr<MetricsClient> client,
                              HeuristicThresholds thresholds);
    const std::string& id() const override { return id_; }
    BackendKind kind() const override { return BackendKind::Analyzer; }
    std::optional<BackendResult> query(const JournalQuery& query) override;

private:
    std::string id_ = kRetractionAnalyzerId;
    std::shared_ptr<MetricsClient> client_;
    HeuristicThresholds thresholds_;
};

struct OrchestratorOptions {
    std::chrono::milliseconds backend_timeout{10'000};
    std::chrono::seconds cache_ttl{7 * 24 * 3600};
    bool use_cache = true;
    AggregationWeights weights;
};

// Drives one assessment end to end: cache check, concurrent backend fan-out
// with per-backend timeout, cross-validation, aggregation, cache write.
// Results are independent of backend completion order.
class Orchestrator {
public:
    Orchestrator(std::vector<std::shared_ptr<Backend>> backends,
                 std::shared_ptr<CacheStore> cache, OrchestratorOptions options = {});

    // Throws NoBackendsConfiguredError. Cache problems degrade to uncached
    // operation, reported through `warnings`.
    Assessment assess_journal(const JournalQuery& query,
                              std::vector<std::string>* warnings = nullptr);

    std::size_t backend_count() const { return backends_.size(); }
    const OrchestratorOptions& options() const { return options_; }

private:
    std::vector<std::shared_ptr<Backend>> backends_;
    std::shared_ptr<CacheStore> cache_;
    OrchestratorOptions options_;
};

struct SyncEntry {
    std::string source_id;
    bool ok = false;
    std::size_t records = 0;
    std::string error;
    std::filesystem::path output;
};

struct SyncReport {
    std::vector<SyncEntry> entries;
    std::vector<std::string> warnings;

    std::size_t synced() const;
    bool all_failed() const;
};

// Pluggable transport for raw source dumps. The default implementation
// serves local paths and file:// URLs; anything else fails with an
// explanatory error so network fetching stays an explicit opt-in.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual std::string fetch(const std::string& location) = 0; // throws Error
};

class LocalFetcher : public Fetcher {
public:
    std::string fetch(const std::string& location) override;
};

// Fetches every configured source dump, canonicalizes it through the
// registry importers, and atomically writes per-source snapshots under the
// snapshots directory. A failing source never aborts the others; its prior
// snapshot stays intact.
SyncReport sync_sources(const Config& config, Fetcher& fetcher);
SyncReport sync_sources(const Config& config);

// Builds the backend set, cache, and options from a config. Load problems
// with individual snapshots are reported as warnings, not failures.
std::shared_ptr<Orchestrator> make_orchestrator(const Config& config,
                                                std::vector<std::string>* warnings = nullptr);

} // namespace aletheia
