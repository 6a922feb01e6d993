#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hitlsim {

// Bad input data or configuration: rejected before any state changes.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file content. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : std::runtime_error(format(source, line, what)), source_(std::move(source)), line_(line) {}

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& what) {
        std::string msg = source.empty() ? "input" : source;
        msg += ": line " + std::to_string(line) + ": " + what;
        return msg;
    }

    std::string source_;
    std::size_t line_;
};

// Pipeline state machine misuse (unknown event, label for an event no queue holds).
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hitlsim
