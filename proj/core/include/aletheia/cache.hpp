#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

struct sqlite3;

namespace aletheia {

// Single-file embedded cache. Entries record their write time and TTL;
// expired entries are never served. Writes are atomic (last write wins);
// concurrent readers are safe.
class CacheStore {
public:
    // Throws StoreUnavailableError when the database cannot be opened.
    static std::shared_ptr<CacheStore> open(const std::filesystem::path& db_path);
    ~CacheStore();

    CacheStore(const CacheStore&) = delete;
    CacheStore& operator=(const CacheStore&) = delete;

    void put(const std::string& key, const std::string& payload, std::chrono::seconds ttl);
    std::optional<std::string> get(const std::string& key) const;

    // stored_at timestamp of the entry, if present and unexpired
    std::optional<std::string> stored_at(const std::string& key) const;

    void remove(const std::string& key);
    std::size_t purge_expired();
    std::size_t size() const;

    // test hook: evaluate expiry against an explicit epoch-seconds clock
    std::optional<std::string> get_at(const std::string& key, std::int64_t now_epoch) const;

private:
    explicit CacheStore(sqlite3* db);

    sqlite3* db_;
    mutable std::mutex mutex_;
};

} // namespace aletheia
