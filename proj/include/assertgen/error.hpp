#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assertgen {

enum class ErrorCode {
    UnterminatedLiteral,
    ParseFailure,
    SpanOutOfRange,
    MissingPlaceholder,
    UnknownAbstractToken,
    MalformedRecord,
    MissingFocal,
    DegenerateCorpus,
    BackendUnavailable,
    EmptyIndex,
    AdapterProtocolError,
    AdapterTimeout,
    MismatchedIds,
    EmptyCorpus,
    NoFocalFound,
    SiteNotInTest,
    HookTimeout,
    HookCrash,
    InvalidArgument,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Single exception type for the library. The code identifies the failure
/// class; the message carries the detail (file, line, sample id, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by deabstraction when a model emitted abstract tokens that have no
/// binding in the sample dictionary.
class UnknownAbstractTokenError : public Error {
public:
    explicit UnknownAbstractTokenError(std::vector<std::string> tokens);

    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

private:
    std::vector<std::string> tokens_;
};

}  // namespace assertgen
