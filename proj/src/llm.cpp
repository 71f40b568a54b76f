#include "mutmj/llm.hpp"

#include <algorithm>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace mutmj {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

size_t indent_of(const std::string& line) {
    size_t i = 0;
    while (i < line.size() && line[i] == ' ') i++;
    return i;
}

bool is_blank(const std::string& line) { return trim(line).empty(); }

std::string unquote(const std::string& s) {
    if (s.size() >= 2 &&
        ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        std::string inner = s.substr(1, s.size() - 2);
        if (s.front() == '"') {
            std::string out;
            for (size_t i = 0; i < inner.size(); i++) {
                if (inner[i] == '\\' && i + 1 < inner.size() &&
                    (inner[i + 1] == '"' || inner[i + 1] == '\\')) {
                    out += inner[++i];
                } else {
                    out += inner[i];
                }
            }
            return out;
        }
        return inner;
    }
    return s;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
            line.clear();
        } else {
            line += c;
        }
    }
    if (!line.empty()) lines.push_back(line);
    return lines;
}

// Extracts the interior of the first fenced code block containing
// "new_tests:", if any; otherwise returns the input unchanged.
std::string strip_fences(const std::string& text) {
    if (text.find("```") == std::string::npos) return text;
    std::vector<std::string> lines = split_lines(text);
    for (size_t i = 0; i < lines.size(); i++) {
        if (trim(lines[i]).rfind("```", 0) != 0) continue;
        std::string body;
        bool closed = false;
        size_t j = i + 1;
        for (; j < lines.size(); j++) {
            if (trim(lines[j]).rfind("```", 0) == 0) {
                closed = true;
                break;
            }
            body += lines[j];
            body += '\n';
        }
        if (closed && body.find("new_tests:") != std::string::npos) return body;
        i = j;
    }
    return text;
}

struct FieldValue {
    std::string value;
    bool present = false;
};

}  // namespace

NewTestsParse parse_new_tests(const std::string& raw_text) {
    NewTestsParse result;
    std::vector<std::string> lines = split_lines(strip_fences(raw_text));

    size_t start = lines.size();
    for (size_t i = 0; i < lines.size(); i++) {
        std::string t = trim(lines[i]);
        if (t.rfind("new_tests:", 0) == 0) {
            std::string rest = trim(t.substr(10));
            if (rest == "[]") return result;  // explicit empty list
            start = i + 1;
            break;
        }
    }
    if (start >= lines.size()) return result;  // no block at all

    struct RawEntry {
        FieldValue behavior, name, code;
        std::vector<std::string> imports;
        bool imports_present = false;
    };
    std::vector<RawEntry> entries;
    std::optional<size_t> dash_indent;

    size_t i = start;
    while (i < lines.size()) {
        const std::string& line = lines[i];
        if (is_blank(line)) {
            i++;
            continue;
        }
        size_t ind = indent_of(line);
        std::string t = trim(line);
        if (t[0] != '-') break;  // dedent or a different key: block over
        if (dash_indent && ind < *dash_indent) break;
        if (!dash_indent) dash_indent = ind;
        entries.emplace_back();
        RawEntry& entry = entries.back();

        // the dash line may carry the first field: "- test_behavior: ..."
        std::string first_field = trim(t.substr(1));
        size_t field_indent = ind + 2;
        bool consumed_first = false;

        auto handle_field = [&](const std::string& text, size_t key_line_index,
                                size_t key_indent) -> size_t {
            // returns the next line index to continue from
            size_t colon = text.find(':');
            if (colon == std::string::npos) return key_line_index + 1;
            std::string key = trim(text.substr(0, colon));
            std::string value = trim(text.substr(colon + 1));
            auto read_block = [&](size_t from) -> std::pair<std::string, size_t> {
                // collect lines more indented than the key, blanks allowed
                std::vector<std::string> block;
                size_t block_indent = std::string::npos;
                size_t j = from;
                for (; j < lines.size(); j++) {
                    if (is_blank(lines[j])) {
                        block.push_back("");
                        continue;
                    }
                    size_t li = indent_of(lines[j]);
                    if (li <= key_indent) break;
                    if (block_indent == std::string::npos) block_indent = li;
                    block.push_back(lines[j].size() >= block_indent
                                        ? lines[j].substr(std::min(block_indent, li))
                                        : trim(lines[j]));
                }
                while (!block.empty() && block.back().empty()) block.pop_back();
                std::string joined;
                for (size_t k = 0; k < block.size(); k++) {
                    if (k) joined += '\n';
                    joined += block[k];
                }
                return {joined, j};
            };

            size_t next = key_line_index + 1;
            std::string resolved;
            if (value == "|" || value == "|-" || value == "|+" || value == ">" || value == ">-") {
                auto [body, after] = read_block(next);
                resolved = body;
                if ((value == "|" || value == "|+" || value == ">") && !resolved.empty())
                    resolved += '\n';
                next = after;
            } else if (value.empty() && key == "test_code") {
                auto [body, after] = read_block(next);
                resolved = body;
                next = after;
            } else {
                resolved = unquote(value);
            }

            if (key == "test_behavior") {
                entry.behavior = {resolved, true};
            } else if (key == "test_name") {
                entry.name = {resolved, true};
            } else if (key == "test_code") {
                entry.code = {resolved, true};
            } else if (key == "new_imports") {
                entry.imports_present = true;
                std::string v = trim(resolved);
                if (!v.empty() && v.front() == '[' && v.back() == ']') {
                    std::string inner = v.substr(1, v.size() - 2);
                    std::istringstream ss(inner);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        std::string imp = unquote(trim(item));
                        if (!imp.empty()) entry.imports.push_back(imp);
                    }
                } else if (v.empty()) {
                    // possible block list of "- item" lines
                    size_t j = next;
                    for (; j < lines.size(); j++) {
                        if (is_blank(lines[j])) continue;
                        size_t li = indent_of(lines[j]);
                        std::string lt = trim(lines[j]);
                        if (li <= key_indent || lt[0] != '-') break;
                        entry.imports.push_back(unquote(trim(lt.substr(1))));
                    }
                    next = j;
                } else {
                    entry.imports.push_back(unquote(v));
                }
            }
            return next;
        };

        if (!first_field.empty()) {
            i = handle_field(first_field, i, ind + 1);
            consumed_first = true;
        }
        if (!consumed_first) i++;

        while (i < lines.size()) {
            if (is_blank(lines[i])) {
                i++;
                continue;
            }
            size_t li = indent_of(lines[i]);
            std::string lt = trim(lines[i]);
            if (li <= *dash_indent || lt[0] == '-') break;  // next entry or dedent
            if (li < field_indent) break;
            i = handle_field(lt, i, li);
        }
    }

    for (size_t k = 0; k < entries.size(); k++) {
        RawEntry& e = entries[k];
        if (!e.name.present || trim(e.name.value).empty()) {
            result.warnings.push_back("entry " + std::to_string(k + 1) +
                                      " dropped: missing test_name");
            continue;
        }
        if (!e.code.present || trim(e.code.value).empty()) {
            result.warnings.push_back("entry " + std::to_string(k + 1) +
                                      " dropped: missing test_code");
            continue;
        }
        ParsedNewTest t;
        t.test_behavior = e.behavior.value;
        t.test_name = trim(e.name.value);
        t.test_code = e.code.value;
        t.new_imports = e.imports;
        result.tests.push_back(std::move(t));
    }
    return result;
}

std::string render_new_tests(const std::vector<ParsedNewTest>& tests) {
    std::string out = "new_tests:";
    if (tests.empty()) return out + " []\n";
    out += '\n';
    for (const auto& t : tests) {
        std::string behavior = t.test_behavior;
        std::replace(behavior.begin(), behavior.end(), '\n', ' ');
        out += "  - test_behavior: " + behavior + "\n";
        out += "    test_name: " + t.test_name + "\n";
        bool trailing_newline = !t.test_code.empty() && t.test_code.back() == '\n';
        out += std::string("    test_code: ") + (trailing_newline ? "|" : "|-") + "\n";
        std::string code = t.test_code;
        if (trailing_newline) code.pop_back();
        for (const std::string& line : split_lines(code + "\n")) {
            if (line.empty())
                out += "\n";
            else
                out += "      " + line + "\n";
        }
        out += "    new_imports: [";
        for (size_t i = 0; i < t.new_imports.size(); i++) {
            if (i) out += ", ";
            out += t.new_imports[i];
        }
        out += "]\n";
    }
    return out;
}

std::string prompt_digest(const PromptBundle& prompt) {
    // FNV-1a 64-bit over the user text; stable across platforms.
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : prompt.user_text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

class HttpBackend : public LlmBackend {
public:
    explicit HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {}

    CompleteResult complete(const LlmRequest& request) override {
        CompleteResult first = attempt(request);
        if (auto* err = std::get_if<TransportError>(&first);
            err && err->kind == TransportError::Kind::Timeout) {
            return attempt(request);  // one retry on timeout only
        }
        return first;
    }

    std::string name() const override { return "http"; }

private:
    CompleteResult attempt(const LlmRequest& request) {
        httplib::Client client(config_.endpoint);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config_.api_key);

        nlohmann::json body;
        body["model"] = request.model_name;
        body["messages"] = nlohmann::json::array();
        if (!request.prompt.system_text.empty())
            body["messages"].push_back(
                {{"role", "system"}, {"content", request.prompt.system_text}});
        body["messages"].push_back({{"role", "user"}, {"content", request.prompt.user_text}});
        body["temperature"] = request.temperature;
        body["max_tokens"] = request.max_tokens;

        httplib::Result res = client.Post(config_.path, headers, body.dump(), "application/json");
        if (!res) {
            TransportError err;
            switch (res.error()) {
                case httplib::Error::ConnectionTimeout:
                case httplib::Error::Read:
                case httplib::Error::Write:
                    err.kind = TransportError::Kind::Timeout;
                    break;
                default: err.kind = TransportError::Kind::Connection; break;
            }
            err.message = httplib::to_string(res.error());
            return err;
        }
        if (res->status == 429)
            return TransportError{TransportError::Kind::RateLimit, "rate limited (429)"};
        if (res->status < 200 || res->status >= 300)
            return TransportError{TransportError::Kind::Protocol,
                                  "http status " + std::to_string(res->status)};
        nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
            return TransportError{TransportError::Kind::Protocol,
                                  "malformed chat completion response"};
        LlmResponse response;
        response.raw_text =
            parsed["choices"][0].value("message", nlohmann::json::object()).value("content", "");
        if (parsed.contains("usage")) {
            response.usage.prompt_tokens = parsed["usage"].value("prompt_tokens", 0L);
            response.usage.completion_tokens = parsed["usage"].value("completion_tokens", 0L);
        } else {
            response.usage.prompt_tokens = request.prompt.token_estimate;
            response.usage.completion_tokens =
                static_cast<long>(response.raw_text.size() / 4);
        }
        NewTestsParse tests = parse_new_tests(response.raw_text);
        response.parsed_tests = std::move(tests.tests);
        response.parse_warnings = std::move(tests.warnings);
        return response;
    }

    HttpBackendConfig config_;
};

}  // namespace

std::unique_ptr<LlmBackend> make_http_backend(HttpBackendConfig config) {
    return std::make_unique<HttpBackend>(std::move(config));
}

std::vector<TranscriptEntry> load_transcript(const std::string& json_text) {
    nlohmann::json parsed = nlohmann::json::parse(json_text);
    std::vector<TranscriptEntry> entries;
    for (const auto& item : parsed) {
        entries.push_back(TranscriptEntry{item.value("request_digest", ""),
                                          item.value("response_text", "")});
    }
    return entries;
}

std::string transcript_to_json(const std::vector<TranscriptEntry>& entries) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : entries)
        j.push_back({{"request_digest", e.request_digest}, {"response_text", e.response_text}});
    return j.dump(2) + "\n";
}

ReplayBackend::ReplayBackend(std::vector<TranscriptEntry> entries, bool strict)
    : entries_(std::move(entries)), strict_(strict) {}

CompleteResult ReplayBackend::complete(const LlmRequest& request) {
    std::unique_lock<std::mutex> lock(mutex_, std::try_to_lock);
    if (!lock.owns_lock() || busy_)
        return TransportError{TransportError::Kind::Protocol,
                              "replay backend rejects concurrent use"};
    busy_ = true;
    struct Reset {
        bool& flag;
        ~Reset() { flag = false; }
    } reset{busy_};

    if (index_ >= entries_.size())
        return TransportError{TransportError::Kind::Protocol,
                              "transcript exhausted at request " + std::to_string(index_)};
    const TranscriptEntry& entry = entries_[index_++];
    if (strict_) {
        std::string digest = prompt_digest(request.prompt);
        if (!entry.request_digest.empty() && entry.request_digest != digest)
            return TransportError{TransportError::Kind::Protocol,
                                  "strict replay digest mismatch at request " +
                                      std::to_string(index_ - 1) + ": expected " +
                                      entry.request_digest + ", got " + digest};
    }
    LlmResponse response;
    response.raw_text = entry.response_text;
    response.usage.prompt_tokens = request.prompt.token_estimate;
    response.usage.completion_tokens = static_cast<long>(entry.response_text.size() / 4);
    NewTestsParse tests = parse_new_tests(response.raw_text);
    response.parsed_tests = std::move(tests.tests);
    response.parse_warnings = std::move(tests.warnings);
    return response;
}

RecordingBackend::RecordingBackend(std::unique_ptr<LlmBackend> inner) : inner_(std::move(inner)) {}

CompleteResult RecordingBackend::complete(const LlmRequest& request) {
    CompleteResult result = inner_->complete(request);
    if (const auto* response = std::get_if<LlmResponse>(&result)) {
        std::lock_guard<std::mutex> lock(mutex_);
        transcript_.push_back(TranscriptEntry{prompt_digest(request.prompt), response->raw_text});
    }
    return result;
}

}  // namespace mutmj
