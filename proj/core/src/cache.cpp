#include "aletheia/cache.hpp"

#include <sqlite3.h>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

std::int64_t now_epoch() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

// RAII around sqlite3_stmt
class Statement {
public:
    Statement(sqlite3* db, const char* sql) {
        if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK)
            throw StoreUnavailableError(std::string("cache statement: ") + sqlite3_errmsg(db));
    }
    ~Statement() { sqlite3_finalize(stmt_); }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    void bind_text(int idx, const std::string& value) {
        sqlite3_bind_text(stmt_, idx, value.c_str(), static_cast<int>(value.size()),
                          SQLITE_TRANSIENT);
    }
    void bind_int64(int idx, std::int64_t value) { sqlite3_bind_int64(stmt_, idx, value); }
    int step() { return sqlite3_step(stmt_); }
    std::string column_text(int idx) const {
        const auto* p = sqlite3_column_text(stmt_, idx);
        return p == nullptr ? std::string{} : reinterpret_cast<const char*>(p);
    }
    std::int64_t column_int64(int idx) const { return sqlite3_column_int64(stmt_, idx); }

private:
    sqlite3_stmt* stmt_ = nullptr;
};

} // namespace

CacheStore::CacheStore(sqlite3* db) : db_(db) {}

CacheStore::~CacheStore() {
    sqlite3_close(db_);
}

std::shared_ptr<CacheStore> CacheStore::open(const std::filesystem::path& db_path) {
    std::error_code ec;
    if (db_path.has_parent_path())
        std::filesystem::create_directories(db_path.parent_path(), ec);

    sqlite3* db = nullptr;
    const int rc = sqlite3_open_v2(db_path.string().c_str(), &db,
                                   SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE |
                                       SQLITE_OPEN_FULLMUTEX,
                                   nullptr);
    if (rc != SQLITE_OK) {
        const std::string msg = db != nullptr ? sqlite3_errmsg(db) : "open failed";
        sqlite3_close(db);
        throw StoreUnavailableError("cannot open cache store " + db_path.string() + ": " + msg);
    }
    auto store = std::shared_ptr<CacheStore>(new CacheStore(db));
    const char* ddl =
        "CREATE TABLE IF NOT EXISTS cache ("
        "  key TEXT PRIMARY KEY,"
        "  payload TEXT NOT NULL,"
        "  stored_at INTEGER NOT NULL,"
        "  ttl_seconds INTEGER NOT NULL)";
    char* err = nullptr;
    if (sqlite3_exec(db, ddl, nullptr, nullptr, &err) != SQLITE_OK) {
        const std::string msg = err != nullptr ? err : "schema creation failed";
        sqlite3_free(err);
        throw StoreUnavailableError("cache schema: " + msg);
    }
    sqlite3_busy_timeout(db, 5000);
    return store;
}

void CacheStore::put(const std::string& key, const std::string& payload,
                     std::chrono::seconds ttl) {
    std::lock_guard lock(mutex_);
    Statement stmt(db_,
                   "INSERT OR REPLACE INTO cache (key, payload, stored_at, ttl_seconds) "
                   "VALUES (?1, ?2, ?3, ?4)");
    stmt.bind_text(1, key);
    stmt.bind_text(2, payload);
    stmt.bind_int64(3, now_epoch());
    stmt.bind_int64(4, static_cast<std::int64_t>(ttl.count()));
    if (stmt.step() != SQLITE_DONE)
        throw StoreUnavailableError(std::string("cache put: ") + sqlite3_errmsg(db_));
}

std::optional<std::string> CacheStore::get(const std::string& key) const {
    return get_at(key, now_epoch());
}

std::optional<std::string> CacheStore::get_at(const std::string& key,
                                              std::int64_t now) const {
    std::lock_guard lock(mutex_);
    Statement stmt(db_, "SELECT payload, stored_at, ttl_seconds FROM cache WHERE key = ?1");
    stmt.bind_text(1, key);
    if (stmt.step() != SQLITE_ROW) return std::nullopt;
    const std::int64_t stored = stmt.column_int64(1);
    const std::int64_t ttl = stmt.column_int64(2);
    if (now >= stored + ttl) return std::nullopt; // expired; ttl 0 never serves
    return stmt.column_text(0);
}

std::optional<std::string> CacheStore::stored_at(const std::string& key) const {
    std::lock_guard lock(mutex_);
    Statement stmt(db_, "SELECT stored_at, ttl_seconds FROM cache WHERE key = ?1");
    stmt.bind_text(1, key);
    if (stmt.step() != SQLITE_ROW) return std::nullopt;
    const std::int64_t stored = stmt.column_int64(0);
    const std::int64_t ttl = stmt.column_int64(1);
    if (now_epoch() >= stored + ttl) return std::nullopt;
    return to_iso8601(std::chrono::system_clock::from_time_t(static_cast<std::time_t>(stored)));
}

void CacheStore::remove(const std::string& key) {
    std::lock_guard lock(mutex_);
    Statement stmt(db_, "DELETE FROM cache WHERE key = ?1");
    stmt.bind_text(1, key);
    stmt.step();
}

std::size_t CacheStore::purge_expired() {
    std::lock_guard lock(mutex_);
    Statement stmt(db_, "DELETE FROM cache WHERE ?1 >= stored_at + ttl_seconds");
    stmt.bind_int64(1, now_epoch());
    stmt.step();
    return static_cast<std::size_t>(sqlite3_changes(db_));
}

std::size_t CacheStore::size() const {
    std::lock_guard lock(mutex_);
    Statement stmt(db_, "SELECT COUNT(*) FROM cache");
    if (stmt.step() != SQLITE_ROW) return 0;
    return static_cast<std::size_t>(stmt.column_int64(0));
}

} // namespace aletheia
