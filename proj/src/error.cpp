#include "assertgen/error.hpp"

namespace assertgen {

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::UnterminatedLiteral: return "UnterminatedLiteral";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::MissingPlaceholder: return "MissingPlaceholder";
    case ErrorCode::UnknownAbstractToken: return "UnknownAbstractToken";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::MissingFocal: return "MissingFocal";
    case ErrorCode::DegenerateCorpus: return "DegenerateCorpus";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::AdapterProtocolError: return "AdapterProtocolError";
    case ErrorCode::AdapterTimeout: return "AdapterTimeout";
    case ErrorCode::MismatchedIds: return "MismatchedIds";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::NoFocalFound: return "NoFocalFound";
    case ErrorCode::SiteNotInTest: return "SiteNotInTest";
    case ErrorCode::HookTimeout: return "HookTimeout";
    case ErrorCode::HookCrash: return "HookCrash";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code)
{
}

namespace {

std::string join_tokens(const std::vector<std::string>& tokens)
{
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) {
            out += ", ";
        }
        out += t;
    }
    return out;
}

}  // namespace

UnknownAbstractTokenError::UnknownAbstractTokenError(std::vector<std::string> tokens)
    : Error(ErrorCode::UnknownAbstractToken, "[" + join_tokens(tokens) + "]"), tokens_(std::move(tokens))
{
}

}  // namespace assertgen
