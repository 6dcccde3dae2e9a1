#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aletheia {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// normalize
class EmptyInputError : public Error {
public:
    EmptyInputError() : Error("input name is empty or blank") {}
};

class MalformedIssnError : public Error {
public:
    explicit MalformedIssnError(const std::string& raw, const std::string& reason)
        : Error("malformed ISSN '" + raw + "': " + reason) {}
};

// registry
class SnapshotParseError : public Error {
public:
    SnapshotParseError(std::size_t line, const std::string& reason)
        : Error("snapshot parse error at line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason) {}
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class DuplicateConflictError : public Error {
public:
    DuplicateConflictError(const std::string& issn, const std::string& source_id)
        : Error("ISSN " + issn + " appears with conflicting classifications in source '" +
                source_id + "'") {}
};

class UnsupportedFormatError : public Error {
public:
    using Error::Error;
};

class EmptyListError : public Error {
public:
    using Error::Error;
};

// analyzers
class ZeroPublicationsError : public Error {
public:
    ZeroPublicationsError() : Error("retraction rate undefined for zero publications") {}
};

// orchestrate
class NoBackendsConfiguredError : public Error {
public:
    NoBackendsConfiguredError() : Error("no backends configured") {}
};

class StoreUnavailableError : public Error {
public:
    using Error::Error;
};

// bibtex / cli
class FileNotFoundError : public Error {
public:
    explicit FileNotFoundError(const std::string& path) : Error("file not found: " + path) {}
};

class UnreadableInputError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace aletheia
