#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mutmj/prompts.hpp"

namespace mutmj {

struct LlmRequest {
    PromptBundle prompt;
    double temperature = 0.0;  // deterministic by default
    long max_tokens = 4096;
    std::string model_name;
};

struct ParsedNewTest {
    std::string test_behavior;
    std::string test_name;
    std::string test_code;
    std::vector<std::string> new_imports;

    friend bool operator==(const ParsedNewTest& a, const ParsedNewTest& b) = default;
};

struct NewTestsParse {
    std::vector<ParsedNewTest> tests;
    std::vector<std::string> warnings;
};

// Lenient extraction of the `new_tests:` block: tolerates fenced code
// blocks, block scalars for test_code, and missing fields (dropped with a
// warning). Never throws.
NewTestsParse parse_new_tests(const std::string& raw_text);

// Canonical rendering of records in the same block format; parsing it back
// yields equal records.
std::string render_new_tests(const std::vector<ParsedNewTest>& tests);

struct LlmUsage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
};

struct LlmResponse {
    std::string raw_text;
    std::vector<ParsedNewTest> parsed_tests;
    std::vector<std::string> parse_warnings;
    LlmUsage usage;
};

struct TransportError {
    enum class Kind { Timeout, Connection, Protocol, RateLimit };
    Kind kind = Kind::Connection;
    std::string message;
};

using CompleteResult = std::variant<LlmResponse, TransportError>;

// Stable digest of the prompt text, recorded into transcripts.
std::string prompt_digest(const PromptBundle& prompt);

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual CompleteResult complete(const LlmRequest& request) = 0;
    virtual std::string name() const = 0;
};

// OpenAI-compatible chat completions over HTTP. One retry on timeout, none
// on protocol errors.
struct HttpBackendConfig {
    std::string endpoint;  // e.g. http://localhost:11434
    std::string api_key;   // optional bearer token
    std::string path = "/v1/chat/completions";
    int timeout_seconds = 120;
};
std::unique_ptr<LlmBackend> make_http_backend(HttpBackendConfig config);

// Deterministic stand-in: responses come from a transcript, consumed in
// request order. Strict mode also matches each entry's recorded digest.
struct TranscriptEntry {
    std::string request_digest;
    std::string response_text;
};
std::vector<TranscriptEntry> load_transcript(const std::string& json_text);
std::string transcript_to_json(const std::vector<TranscriptEntry>& entries);

class ReplayBackend : public LlmBackend {
public:
    explicit ReplayBackend(std::vector<TranscriptEntry> entries, bool strict = false);
    CompleteResult complete(const LlmRequest& request) override;
    std::string name() const override { return "replay"; }
    size_t consumed() const { return index_; }

private:
    std::vector<TranscriptEntry> entries_;
    bool strict_;
    size_t index_ = 0;
    std::mutex mutex_;
    bool busy_ = false;
};

// Wraps another backend and records every exchange.
class RecordingBackend : public LlmBackend {
public:
    explicit RecordingBackend(std::unique_ptr<LlmBackend> inner);
    CompleteResult complete(const LlmRequest& request) override;
    std::string name() const override { return "record(" + inner_->name() + ")"; }
    const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

private:
    std::unique_ptr<LlmBackend> inner_;
    std::vector<TranscriptEntry> transcript_;
    std::mutex mutex_;
};

}  // namespace mutmj
