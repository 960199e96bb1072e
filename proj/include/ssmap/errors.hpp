#pragma once

#include <stdexcept>
#include <string>

namespace ssmap {

// Malformed input text (climate files, CSV, config). Carries a 1-based line
// number when one is known, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    long line() const { return line_; }

private:
    long line_ = 0;
};

// A domain invariant does not hold (out-of-range value, bad parameter set,
// dimension mismatch, unknown field name).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration (missing key, wrong type, unknown key).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem trouble: unreadable input, unwritable output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ssmap
