#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace levnet {

// Invalid input data or configuration. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that cannot produce a defined result. CLI exit code 4.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Liabilities >= assets: equity is not positive, leverage undefined.
class DegenerateEquityError : public ValidationError {
public:
    explicit DegenerateEquityError(const std::string& what, std::int64_t time_index = -1)
        : ValidationError(what), time_index_(time_index) {}

    // -1 when the failure was not tied to a series observation.
    std::int64_t time_index() const noexcept { return time_index_; }

private:
    std::int64_t time_index_;
};

}  // namespace levnet
