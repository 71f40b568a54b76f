#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutmj/harness.hpp"
#include "mutmj/llm.hpp"
#include "mutmj/repair.hpp"

namespace mutmj {

enum class PipelineMode { MutGen, Vanilla, MutGenS, MutGenF, MutGenMF };

std::string mode_name(PipelineMode mode);
std::optional<PipelineMode> mode_from_name(const std::string& name);

enum class ConvergenceRule { NoNewKills, ScoreDeltaBelow };

struct PipelineConfig {
    int max_iterations = 4;
    ConvergenceRule convergence_rule = ConvergenceRule::NoNewKills;
    double epsilon = 0.0;  // percentage points, for ScoreDeltaBelow
    PipelineMode mode = PipelineMode::MutGen;
    FixMode fix_mode = FixMode::MechanicalFirst;
    long long step_budget = kDefaultStepBudget;
    bool include_killed_feedback = false;
    bool dedup_useless = false;
    int jobs = 1;
    std::string model_name;
    std::string target_function;  // empty: the unit's única function
};

struct IterationRecord {
    int index = 0;  // 1-based
    long suite_size_before = 0;
    long suite_size_after = 0;
    std::vector<int> newly_killed;  // mutant ids, ascending
    double mutation_score_before = 0.0;
    double mutation_score_after = 0.0;
    long tokens_used = 0;
    double wall_time_seconds = 0.0;
    RepairStats repair_stats;
};
nlohmann::json iteration_record_json(const IterationRecord& record);

struct UnfixedArchiveEntry {
    std::string test_name;
    std::string source_text;
    FailureCategory category;
    std::string message;
    int matched_strategy = 0;
};

struct IterationArtifacts {
    std::string prompt_text;
    std::string response_text;
    std::string suite_text;  // merged suite after the iteration
    nlohmann::json report_json;
    nlohmann::json stats_json;
    std::vector<std::pair<std::string, std::string>> fix_exchanges;  // prompt, response
    std::vector<UnfixedArchiveEntry> unfixed;
};

struct PipelineResult {
    bool ok = false;
    std::string error;  // human-readable when !ok
    std::string stop_reason;  // no-new-kills | score-delta | max-iterations | transport-error
    std::vector<TestCase> final_suite;
    MutationReport final_report;
    std::vector<IterationRecord> iterations;
    std::vector<IterationArtifacts> artifacts;  // parallel to iterations
    std::string summary_text;
    long summarize_tokens = 0;
    long total_tokens = 0;
    double total_wall_seconds = 0.0;
    std::vector<std::string> warnings;
};

// Preprocessing summary per mode: a backend summarization over the
// comment-stripped source, the raw comments for the no-summarization
// ablation, nothing for the vanilla baseline. Backend failures degrade to
// an empty summary.
struct SummarizeResult {
    std::string summary;
    long tokens = 0;
    std::optional<std::string> warning;
};
SummarizeResult summarize_subject(const std::string& source, PipelineMode mode,
                                  LlmBackend* backend, const TemplateStore& templates,
                                  const std::string& model_name);

// Stops on the newest record: no newly killed mutants (NoNewKills) or a
// score delta at or below epsilon (ScoreDeltaBelow).
bool check_convergence(const std::vector<IterationRecord>& history, ConvergenceRule rule,
                       double epsilon);

PipelineResult run_pipeline(const std::string& subject_source, const std::string& unit_name,
                            const std::vector<TestCase>& seed_suite, const PipelineConfig& config,
                            LlmBackend& backend, const TemplateStore& templates);

}  // namespace mutmj
