#include "assertgen/predict/adapter.hpp"

#include "assertgen/error.hpp"
#include "assertgen/java/token.hpp"

namespace assertgen::predict {

io::Json adapter_request(const corpus::DatasetSample& sample, int k, bool with_truth_hint)
{
    io::Json j;
    j["id"] = sample.sample_id;
    j["masked_input"] = java::join(sample.masked_input);
    j["token_form"] = corpus::token_form_name(sample.token_form);
    j["k"] = k;
    if (with_truth_hint) {
        j["truth_hint"] = java::join(sample.truth_assertion);
    }
    return j;
}

ExternalAdapter::ExternalAdapter(AdapterOptions options) : options_(std::move(options))
{
    if (options_.command.empty()) {
        throw Error(ErrorCode::BackendUnavailable, "no adapter command configured");
    }
}

namespace {

[[noreturn]] void protocol_error(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::AdapterProtocolError, "adapter response line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<Candidate> ExternalAdapter::generate(const corpus::DatasetSample& sample, int k)
{
    if (!process_) {
        process_ = std::make_unique<util::LineProcess>(options_.command);
        responses_ = 0;
    }
    auto gone = [&](const std::string& what) -> Error {
        auto status = process_->exit_status();
        process_.reset();
        if (status && (*status == 126 || *status == 127)) {
            return Error(ErrorCode::BackendUnavailable,
                         "adapter command failed to start (exit " + std::to_string(*status) + "): " + options_.command);
        }
        return Error(ErrorCode::AdapterProtocolError, what);
    };

    if (!process_->write_line(adapter_request(sample, k, options_.send_truth_hint).dump())) {
        throw gone("adapter stopped reading requests");
    }
    std::string line;
    switch (process_->read_line(line, options_.timeout)) {
    case util::LineProcess::ReadStatus::Timeout:
        process_->kill();
        process_.reset();
        throw Error(ErrorCode::AdapterTimeout, "no adapter response for " + sample.sample_id + " within " +
                                                   std::to_string(options_.timeout.count()) + " ms");
    case util::LineProcess::ReadStatus::Eof:
        throw gone("adapter closed its output after " + std::to_string(responses_) + " responses");
    case util::LineProcess::ReadStatus::Line: break;
    }
    std::size_t lineno = ++responses_;

    io::Json resp;
    try {
        resp = io::Json::parse(line);
    } catch (const io::Json::parse_error&) {
        protocol_error(lineno, "not a JSON record: " + line.substr(0, 200));
    }
    if (!resp.is_object() || !resp.contains("id") || !resp["id"].is_string()) {
        protocol_error(lineno, "record without string `id`");
    }
    if (resp["id"].get<std::string>() != sample.sample_id) {
        protocol_error(lineno, "id `" + resp["id"].get<std::string>() + "` does not answer `" + sample.sample_id + "`");
    }
    if (resp.contains("error")) {
        protocol_error(lineno, "adapter reported an error: " + resp["error"].dump());
    }
    if (!resp.contains("candidates") || !resp["candidates"].is_array()) {
        protocol_error(lineno, "record without `candidates` list");
    }
    std::vector<Candidate> out;
    for (const auto& c : resp["candidates"]) {
        if (!c.is_object() || !c.contains("text") || !c["text"].is_string() || !c.contains("score") ||
            !c["score"].is_number()) {
            protocol_error(lineno, "candidate is not {text, score}: " + c.dump());
        }
        out.push_back({c["text"].get<std::string>(), c["score"].get<double>()});
    }
    return out;
}

}  // namespace assertgen::predict
