#pragma once

#include <stdexcept>
#include <string>

namespace progmom {

// Category-tagged errors so callers (and the CLI) can map failures to
// exit codes and field-level messages without string matching.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class EmptyRangeError : public Error {
public:
    explicit EmptyRangeError(const std::string& msg) : Error("empty_range", msg) {}
};

class InvalidProgressionError : public Error {
public:
    explicit InvalidProgressionError(const std::string& msg) : Error("invalid_progression", msg) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error("range", msg) {}
};

class LookupError : public Error {
public:
    explicit LookupError(const std::string& msg) : Error("lookup", msg) {}
};

class OrderLimitError : public Error {
public:
    explicit OrderLimitError(const std::string& msg) : Error("order_limit", msg) {}
};

class EmptyDomainError : public Error {
public:
    explicit EmptyDomainError(const std::string& msg) : Error("empty_domain", msg) {}
};

class DegenerateDistributionError : public Error {
public:
    explicit DegenerateDistributionError(const std::string& msg) : Error("degenerate_distribution", msg) {}
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error("parameter", msg) {}
};

class CacheError : public Error {
public:
    explicit CacheError(const std::string& msg) : Error("cache", msg) {}
};

}  // namespace progmom
