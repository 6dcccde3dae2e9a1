#include "aletheia/orchestrate.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

using nlohmann::json;

std::string assessment_cache_key(const JournalQuery& query) {
    return "assessment|" + query.cache_key();
}

std::string backend_cache_key(const JournalQuery& query, const std::string& backend_id) {
    return "backend|" + query.cache_key() + "|" + backend_id;
}

} // namespace

CuratedListBackend::CuratedListBackend(ListSnapshot snapshot,
                                       std::shared_ptr<const AbbreviationTable> table)
    : snapshot_(std::move(snapshot)), table_(std::move(table)) {
    snapshot_.rebuild_index();
}

std::optional<BackendResult> CuratedListBackend::query(const JournalQuery& query) {
    return lookup(query, snapshot_, table_ ? *table_ : AbbreviationTable::builtin());
}

WorksAnalyzerBackend::WorksAnalyzerBackend(std::shared_ptr<MetricsClient> client,
                                           HeuristicThresholds thresholds)
    : client_(std::move(client)), thresholds_(thresholds) {}

std::optional<BackendResult> WorksAnalyzerBackend::query(const JournalQuery& query) {
    const auto profile = client_->fetch_works_profile(query);
    if (!profile) return std::nullopt;
    return analyze_works(*profile, thresholds_);
}

MetadataAnalyzerBackend::MetadataAnalyzerBackend(std::shared_ptr<MetricsClient> client,
                                                 HeuristicThresholds thresholds)
    : client_(std::move(client)), thresholds_(thresholds) {}

std::optional<BackendResult> MetadataAnalyzerBackend::query(const JournalQuery& query) {
    const auto profile = client_->fetch_metadata_profile(query);
    if (!profile) return std::nullopt;
    return analyze_metadata(*profile, thresholds_);
}

RetractionAnalyzerBackend::RetractionAnalyzerBackend(std::shared_ptr<MetricsClient> client,
                                                     HeuristicThresholds thresholds)
    : client_(std::move(client)), thresholds_(thresholds) {}

std::optional<BackendResult> RetractionAnalyzerBackend::query(const JournalQuery& query) {
    const auto stats = client_->fetch_retraction_stats(query);
    if (!stats) return std::nullopt;
    return analyze_retractions(*stats, thresholds_);
}

Orchestrator::Orchestrator(std::vector<std::shared_ptr<Backend>> backends,
                           std::shared_ptr<CacheStore> cache, OrchestratorOptions options)
    : backends_(std::move(backends)), cache_(std::move(cache)), options_(options) {}

Assessment Orchestrator::assess_journal(const JournalQuery& query,
                                        std::vector<std::string>* warnings) {
    if (backends_.empty()) throw NoBackendsConfiguredError();
    const auto started = std::chrono::steady_clock::now();

    auto warn = [&](std::string message) {
        if (warnings != nullptr) warnings->push_back(std::move(message));
    };

    CacheStore* cache = options_.use_cache ? cache_.get() : nullptr;

    if (cache != nullptr) {
        try {
            if (const auto hit = cache->get(assessment_cache_key(query))) {
                Assessment cached = json::parse(*hit).get<Assessment>();
                cached.from_cache = true;
                cached.processing_time_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              started)
                        .count();
                return cached;
            }
        } catch (const std::exception& e) {
            warn(std::string("cache read failed, continuing uncached: ") + e.what());
            cache = nullptr;
        }
    }

    // fan out, one thread per backend; a promise per slot keeps abandoned
    // (timed out) workers harmless
    struct Launch {
        std::shared_ptr<Backend> backend;
        std::future<std::optional<BackendResult>> future;
        std::optional<BackendResult> cached;
        bool from_cache = false;
    };
    std::vector<Launch> launches;
    launches.reserve(backends_.size());
    for (const auto& backend : backends_) {
        Launch launch;
        launch.backend = backend;
        if (cache != nullptr) {
            try {
                if (const auto hit = cache->get(backend_cache_key(query, backend->id()))) {
                    const json doc = json::parse(*hit);
                    if (!doc.is_null()) launch.cached = doc.get<BackendResult>();
                    launch.from_cache = true;
                }
            } catch (const std::exception& e) {
                warn(std::string("cache read failed for backend ") + backend->id() + ": " +
                     e.what());
            }
        }
        if (!launch.from_cache) {
            auto promise = std::make_shared<std::promise<std::optional<BackendResult>>>();
            launch.future = promise->get_future();
            std::thread([backend, query, promise] {
                try {
                    promise->set_value(backend->query(query));
                } catch (...) {
                    try {
                        promise->set_exception(std::current_exception());
                    } catch (...) {
                    }
                }
            }).detach();
        }
        launches.push_back(std::move(launch));
    }

    const auto deadline = started + options_.backend_timeout;
    std::vector<BackendResult> results;
    std::vector<ConsultedSource> consulted;
    for (auto& launch : launches) {
        const std::string& id = launch.backend->id();
        std::optional<BackendResult> outcome;
        bool unavailable = false;
        if (launch.from_cache) {
            outcome = launch.cached;
        } else if (launch.future.wait_until(deadline) == std::future_status::ready) {
            try {
                outcome = launch.future.get();
            } catch (const std::exception& e) {
                unavailable = true;
                warn("backend " + id + " failed: " + e.what());
            }
        } else {
            unavailable = true;
            warn("backend " + id + " timed out");
        }

        if (unavailable) {
            consulted.push_back({id, SourceStatus::Unavailable});
            continue;
        }
        if (cache != nullptr && !launch.from_cache) {
            try {
                const json doc = outcome ? json(*outcome) : json(nullptr);
                cache->put(backend_cache_key(query, id), doc.dump(), options_.cache_ttl);
            } catch (const std::exception& e) {
                warn("cache write failed for backend " + id + ": " + e.what());
            }
        }
        if (outcome) {
            results.push_back(std::move(*outcome));
        } else {
            consulted.push_back({id, SourceStatus::NoData});
        }
    }

    const std::vector<CrossCheckFinding> findings = cross_validate(results);
    Assessment assessment = aggregate(std::move(results), findings, options_.weights);
    for (const auto& c : consulted) assessment.sources_consulted.push_back(c);
    std::sort(assessment.sources_consulted.begin(), assessment.sources_consulted.end(),
              [](const ConsultedSource& a, const ConsultedSource& b) {
                  return a.backend_id < b.backend_id;
              });
    assessment.subject = query.raw_input.empty() ? query.name.raw : query.raw_input;

    if (cache != nullptr) {
        try {
            cache->put(assessment_cache_key(query), json(assessment).dump(), options_.cache_ttl);
        } catch (const std::exception& e) {
            warn(std::string("cache write failed: ") + e.what());
        }
    }
    assessment.processing_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return assessment;
}

std::size_t SyncReport::synced() const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.ok) ++n;
    return n;
}

bool SyncReport::all_failed() const {
    if (entries.empty()) return false;
    return synced() == 0;
}

std::string LocalFetcher::fetch(const std::string& location) {
    std::string path = location;
    if (path.rfind("file://", 0) == 0) path = path.substr(7);
    if (path.rfind("http://", 0) == 0 || path.rfind("https://", 0) == 0)
        throw Error("network fetch is not configured for this build; "
                    "download the dump locally and point the source at the file");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SyncReport sync_sources(const Config& config, Fetcher& fetcher) {
    SyncReport report;
    if (config.sources.empty()) {
        report.warnings.emplace_back("no sources configured; nothing to sync");
        return report;
    }
    const std::filesystem::path out_dir = config.effective_snapshots_dir();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    for (const auto& descriptor : config.sources) {
        SyncEntry entry;
        entry.source_id = descriptor.source_id;
        entry.output = out_dir / (descriptor.source_id + ".jsonl");
        try {
            std::string location = descriptor.location;
            // resolve bare relative paths against the config directory
            if (location.find("://") == std::string::npos)
                location = config.resolve(location).string();
            const std::string content = fetcher.fetch(location);

            ListSnapshot snapshot;
            if (descriptor.format == "jsonl") {
                snapshot = parse_snapshot(content);
                if (snapshot.source_id != descriptor.source_id)
                    throw Error("dump carries source_id '" + snapshot.source_id +
                                "', expected '" + descriptor.source_id + "'");
            } else {
                // csv/json dumps go through the custom importer under the
                // configured source id; write the payload to a temp file
                const auto tmp = out_dir / (descriptor.source_id + ".dump.tmp");
                {
                    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                    out << content;
                }
                CustomListSpec spec = descriptor.columns;
                spec.path = tmp;
                spec.format = descriptor.format == "csv" ? CustomListSpec::Format::Csv
                                                         : CustomListSpec::Format::Json;
                snapshot = import_list_as(spec, descriptor.source_id);
                std::filesystem::remove(tmp, ec);
            }
            const std::string stamp = now_iso8601();
            for (auto& rec : snapshot.records) rec.retrieved_at = stamp;
            save_snapshot(snapshot, entry.output);
            entry.ok = true;
            entry.records = snapshot.records.size();
        } catch (const std::exception& e) {
            entry.ok = false;
            entry.error = e.what();
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

SyncReport sync_sources(const Config& config) {
    LocalFetcher fetcher;
    return sync_sources(config, fetcher);
}

std::shared_ptr<Orchestrator> make_orchestrator(const Config& config,
                                                std::vector<std::string>* warnings) {
    auto warn = [&](std::string message) {
        if (warnings != nullptr) warnings->push_back(std::move(message));
    };

    // abbreviation table: configured file or the built-in default
    const AbbreviationTable* table = &AbbreviationTable::builtin();
    static std::vector<std::unique_ptr<AbbreviationTable>> loaded_tables;
    if (config.abbreviations) {
        try {
            loaded_tables.push_back(std::make_unique<AbbreviationTable>(
                AbbreviationTable::load(config.resolve(*config.abbreviations))));
            table = loaded_tables.back().get();
        } catch (const std::exception& e) {
            warn(std::string("abbreviation table load failed, using built-in: ") + e.what());
        }
    }

    std::vector<std::shared_ptr<Backend>> backends;
    for (const auto& [source_id, bc] : config.backends) {
        if (!bc.enabled) continue;
        try {
            ListSnapshot snapshot = load_snapshot(config.resolve(bc.snapshot));
            if (snapshot.source_id != source_id)
                warn("backend '" + source_id + "': snapshot carries source_id '" +
                     snapshot.source_id + "'");
            backends.push_back(std::make_shared<CuratedListBackend>(std::move(snapshot), table));
        } catch (const std::exception& e) {
            warn("backend '" + source_id + "' skipped: " + e.what());
        }
    }
    for (const auto& clc : config.custom_lists) {
        if (!clc.enabled) continue;
        try {
            CustomListSpec spec = clc.spec;
            spec.path = config.resolve(spec.path);
            ImportStats stats;
            ListSnapshot snapshot = import_custom_list(spec, &stats);
            for (const auto& w : stats.warnings)
                warn("custom list " + spec.path.string() + ": " + w);
            backends.push_back(std::make_shared<CuratedListBackend>(std::move(snapshot), table));
        } catch (const std::exception& e) {
            warn("custom list '" + clc.spec.path.string() + "' skipped: " + e.what());
        }
    }

    if (config.analyzers.metrics_fixture) {
        try {
            auto client = std::make_shared<FileMetricsClient>(
                config.resolve(*config.analyzers.metrics_fixture));
            const auto& t = config.analyzers.thresholds;
            if (config.analyzers.works)
                backends.push_back(std::make_shared<WorksAnalyzerBackend>(client, t));
            if (config.analyzers.metadata)
                backends.push_back(std::make_shared<MetadataAnalyzerBackend>(client, t));
            if (config.analyzers.retractions)
                backends.push_back(std::make_shared<RetractionAnalyzerBackend>(client, t));
        } catch (const std::exception& e) {
            warn(std::string("analyzer backends skipped: ") + e.what());
        }
    }

    std::shared_ptr<CacheStore> cache;
    if (config.cache.enabled) {
        const auto path = config.cache.path ? config.resolve(*config.cache.path)
                                            : default_cache_path();
        try {
            cache = CacheStore::open(path);
        } catch (const StoreUnavailableError& e) {
            warn(std::string(e.what()) + "; proceeding without cache");
        }
    }

    OrchestratorOptions options;
    options.backend_timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(config.timeout_seconds * 1000.0));
    options.cache_ttl =
        std::chrono::seconds(static_cast<std::int64_t>(config.cache.ttl_days * 86400.0));
    options.use_cache = config.cache.enabled && cache != nullptr;
    options.weights = config.weights;
    return std::make_shared<Orchestrator>(std::move(backends), std::move(cache), options);
}

} // namespace aletheia
