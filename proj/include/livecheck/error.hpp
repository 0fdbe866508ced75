#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "livecheck/span.hpp"

namespace livecheck {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An error tied to a location in the source text.
class SourceError : public Error {
public:
    SourceError(const std::string& message, Span span) : Error(message), span_(std::move(span)) {}
    const Span& span() const { return span_; }

private:
    Span span_;
};

class LexError : public SourceError {
public:
    using SourceError::SourceError;
};

class ParseError : public SourceError {
public:
    ParseError(const std::string& message, Span span, std::vector<std::string> expected)
        : SourceError(message, std::move(span)), expected_(std::move(expected)) {}
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

class NameClash : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class MissingSource : public Error {
public:
    using Error::Error;
};

class StateSpaceOverflow : public Error {
public:
    enum class Reason { ConfigurationCap, TimeLimit };
    StateSpaceOverflow(const std::string& message, Reason reason, std::size_t explored)
        : Error(message), reason_(reason), explored_(explored) {}
    Reason reason() const { return reason_; }
    std::size_t explored() const { return explored_; }

private:
    Reason reason_;
    std::size_t explored_;
};

/// Thrown when a caller-supplied stop token is triggered mid-exploration.
class ExplorationCancelled : public Error {
public:
    ExplorationCancelled() : Error("exploration cancelled") {}
};

}  // namespace livecheck
