#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mutmj/harness.hpp"
#include "mutmj/llm.hpp"

namespace mutmj {

enum class FailureCategory { AssertionFailure, CompileError };

struct FailureRecord {
    TestCase test;
    FailureCategory category = FailureCategory::AssertionFailure;
    std::string message;
    int matched_strategy = 0;  // 1..6, 0 = none
};

struct ExeFilterResult {
    std::vector<TestCase> passing;
    std::vector<FailureRecord> failures;
};

// First-match classification over the six fix strategies.
int match_strategy(FailureCategory category, const std::string& message,
                   const std::string& test_source);

// Partitions candidates into passing tests and failure records. Candidate
// names that collide with `taken_names` (or earlier candidates) become
// compile errors with a "method is already defined" message. Compile
// errors keep their CompileError category; runtime errors and timeouts are
// assertion-class failures routed to strategy 6.
ExeFilterResult exe_filter(const Program& program, const std::vector<TestCase>& candidates,
                           const std::set<std::string>& taken_names = {},
                           long long budget = kDefaultStepBudget);

// Deterministic rewrites for strategies 2, 3 and 5. Strategy 2 re-runs the
// failing test and substitutes the observed value for the stale expected
// literal; strategy 3 swaps assertTrue/assertFalse at the failing line;
// strategy 5 renames with the smallest free numeric suffix. Returns nothing
// when the rewrite site cannot be located.
std::optional<TestCase> mechanical_fix(const Program& program, const FailureRecord& record,
                                       const std::set<std::string>& suite_names,
                                       long long budget = kDefaultStepBudget);

// Prompt_fail route: builds the fixing prompt, calls the backend, returns
// the first parsed test. Transport errors surface to the caller.
struct LlmFixResult {
    std::optional<TestCase> fixed;
    std::optional<TransportError> transport_error;
    PromptBundle prompt;      // what was sent, for run artifacts
    std::string response_text;
    LlmUsage usage;
};
LlmFixResult llm_fix(const TemplateStore& templates, const FailureRecord& record,
                     LlmBackend& backend, const std::string& model_name);

enum class FixMode { MechanicalFirst, LlmOnly };

struct RepairStats {
    long attempted = 0;
    long fixed_mechanical = 0;
    long fixed_llm = 0;
    long unfixed = 0;
    double fix_rate = 0.0;  // fixed/attempted, 0 when nothing was attempted
};
nlohmann::json repair_stats_json(const RepairStats& stats);

struct RepairRoundResult {
    std::vector<TestCase> fixed_passing;
    RepairStats stats;
    std::vector<FailureRecord> unfixed;
    long tokens_used = 0;
    std::vector<std::pair<PromptBundle, std::string>> exchanges;  // fix prompts + responses
    std::optional<TransportError> transport_error;  // aborted the round when set
};

// One repair attempt per failure: mechanical first (when the mode allows),
// the LLM otherwise. Every candidate is re-validated through exe_filter;
// only passing rewrites are returned.
RepairRoundResult repair_round(const Program& program, const std::vector<FailureRecord>& failures,
                               LlmBackend* backend, const TemplateStore& templates, FixMode mode,
                               const std::set<std::string>& taken_names,
                               const std::string& model_name = "",
                               long long budget = kDefaultStepBudget);

}  // namespace mutmj
