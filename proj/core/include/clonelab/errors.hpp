#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clonelab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A requested computation would exceed a configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// A clone was asked for members at an arity whose saturation hit its
// budget before closing; the answer would be unreliable.
class IncompleteSaturation : public Error {
public:
    using Error::Error;
};

// An API precondition was violated by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

// A search procedure ran out of moves before reaching its goal.
class StrategyExhausted : public Error {
public:
    using Error::Error;
};

} // namespace clonelab
