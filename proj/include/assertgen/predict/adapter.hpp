#pragma once

#include "assertgen/predict/predictor.hpp"
#include "assertgen/util/process.hpp"

#include <chrono>
#include <memory>
#include <string>

namespace assertgen::predict {

struct AdapterOptions {
    std::string command;  // shell words; run as `exec <command>`
    std::chrono::milliseconds timeout{60000};
    // adds the ground truth to each request; loopback testing only
    bool send_truth_hint = false;
};

/// Request line for one sample: `{id, masked_input, token_form, k}`.
io::Json adapter_request(const corpus::DatasetSample& sample, int k, bool with_truth_hint);

/// Predictor backed by an external process speaking the line protocol. The
/// process is started lazily and kept for the adapter's lifetime.
class ExternalAdapter : public Predictor {
public:
    explicit ExternalAdapter(AdapterOptions options);

    std::string name() const override { return "external"; }

    /// Throws Error(BackendUnavailable) if the process cannot start or exits
    /// with status 126/127, Error(AdapterTimeout) if no response arrives in
    /// time, Error(AdapterProtocolError) for unparseable or mismatched
    /// responses, naming the response line number.
    std::vector<Candidate> generate(const corpus::DatasetSample& sample, int k) override;

private:
    AdapterOptions options_;
    std::unique_ptr<util::LineProcess> process_;
    std::size_t responses_ = 0;
};

}  // namespace assertgen::predict
