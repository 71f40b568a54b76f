#include "mutmj/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "mutmj/source_text.hpp"

namespace mutmj {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::set<std::string> suite_names(const std::vector<TestCase>& suite) {
    std::set<std::string> names;
    for (const auto& t : suite) names.insert(t.name);
    return names;
}

std::vector<int> killed_ids(const std::vector<Mutant>& mutants) {
    std::vector<int> ids;
    for (const auto& m : mutants)
        if (m.status == MutantStatus::Killed) ids.push_back(m.id);
    return ids;
}

// Candidates from one LLM reply; names come from the parsed code when it
// parses, the declared test_name otherwise (exe_filter reports the rest).
std::vector<TestCase> candidates_from_response(const LlmResponse& response) {
    std::vector<TestCase> candidates;
    for (size_t i = 0; i < response.parsed_tests.size(); i++) {
        const ParsedNewTest& t = response.parsed_tests[i];
        TestCase tc;
        TestParseResult parsed = parse_test(t.test_code);
        tc.name = parsed.ok() ? parsed.test->name
                              : (t.test_name.empty() ? "unnamed" + std::to_string(i + 1)
                                                     : t.test_name);
        tc.source_text = t.test_code;
        tc.origin = TestOrigin::Generated;
        candidates.push_back(std::move(tc));
    }
    return candidates;
}

}  // namespace

std::string mode_name(PipelineMode mode) {
    switch (mode) {
        case PipelineMode::MutGen: return "mutgen";
        case PipelineMode::Vanilla: return "vanilla";
        case PipelineMode::MutGenS: return "mutgen-s";
        case PipelineMode::MutGenF: return "mutgen-f";
        case PipelineMode::MutGenMF: return "mutgen-mf";
    }
    return "?";
}

std::optional<PipelineMode> mode_from_name(const std::string& name) {
    if (name == "mutgen") return PipelineMode::MutGen;
    if (name == "vanilla") return PipelineMode::Vanilla;
    if (name == "mutgen-s") return PipelineMode::MutGenS;
    if (name == "mutgen-f") return PipelineMode::MutGenF;
    if (name == "mutgen-mf") return PipelineMode::MutGenMF;
    return std::nullopt;
}

nlohmann::json iteration_record_json(const IterationRecord& record) {
    return {{"index", record.index},
            {"suite_size_before", record.suite_size_before},
            {"suite_size_after", record.suite_size_after},
            {"newly_killed", record.newly_killed},
            {"mutation_score_before", round1(record.mutation_score_before)},
            {"mutation_score_after", round1(record.mutation_score_after)},
            {"tokens_used", record.tokens_used},
            {"repair_stats", repair_stats_json(record.repair_stats)}};
}

SummarizeResult summarize_subject(const std::string& source, PipelineMode mode,
                                  LlmBackend* backend, const TemplateStore& templates,
                                  const std::string& model_name) {
    SummarizeResult result;
    switch (mode) {
        case PipelineMode::Vanilla:
            return result;  // the baseline keeps raw comments in its prompt
        case PipelineMode::MutGenS:
            result.summary = extract_comments(source);
            return result;
        default: break;
    }
    if (!backend) {
        result.warning = "no backend available for summarization; proceeding without a summary";
        return result;
    }
    LlmRequest request;
    request.prompt = build_summarize_prompt(templates, strip_comments(source));
    request.model_name = model_name;
    CompleteResult completed = backend->complete(request);
    if (auto* err = std::get_if<TransportError>(&completed)) {
        result.warning = "summarization failed (" + err->message + "); proceeding without a summary";
        return result;
    }
    LlmResponse& response = std::get<LlmResponse>(completed);
    result.summary = response.raw_text;
    result.tokens = response.usage.prompt_tokens + response.usage.completion_tokens;
    return result;
}

bool check_convergence(const std::vector<IterationRecord>& history, ConvergenceRule rule,
                       double epsilon) {
    if (history.empty()) return false;
    const IterationRecord& newest = history.back();
    if (rule == ConvergenceRule::NoNewKills) return newest.newly_killed.empty();
    return newest.mutation_score_after - newest.mutation_score_before <= epsilon;
}

PipelineResult run_pipeline(const std::string& subject_source, const std::string& unit_name,
                            const std::vector<TestCase>& seed_suite, const PipelineConfig& config,
                            LlmBackend& backend, const TemplateStore& templates) {
    PipelineResult result;
    Clock::time_point pipeline_start = Clock::now();

    ParseResult parsed = parse_program(subject_source, unit_name);
    if (!parsed.ok()) {
        result.error = "subject does not parse: " + parsed.error->message;
        return result;
    }
    Program program = std::move(*parsed.program);

    std::string target = config.target_function;
    if (target.empty()) {
        if (program.functions.size() != 1) {
            result.error = "subject must contain exactly one target function (use --target)";
            return result;
        }
        target = program.functions[0].name;
    } else if (!program.find_function(target)) {
        result.error = "target function '" + target + "' not found";
        return result;
    }

    std::vector<Mutant> mutants = generate_mutants(program, target);

    SummarizeResult summary = summarize_subject(subject_source, config.mode, &backend, templates,
                                                config.model_name);
    if (summary.warning) result.warnings.push_back(*summary.warning);
    result.summary_text = summary.summary;
    result.summarize_tokens = summary.tokens;

    std::string stripped_source = strip_comments(subject_source);

    // Seed tests must pass on the original program; failing seeds drop out.
    std::vector<TestCase> suite;
    {
        ExeFilterResult filtered = exe_filter(program, seed_suite, {}, config.step_budget);
        suite = std::move(filtered.passing);
        for (const auto& f : filtered.failures)
            result.warnings.push_back("seed test '" + f.test.name +
                                      "' fails on the original program and was dropped");
    }

    EvaluationResult eval =
        evaluate_mutants(program, mutants, suite, config.step_budget, config.jobs);

    for (int index = 1; index <= config.max_iterations; index++) {
        Clock::time_point iter_start = Clock::now();
        IterationRecord record;
        record.index = index;
        record.suite_size_before = static_cast<long>(suite.size());
        record.mutation_score_before = eval.report.mutation_score;
        std::vector<int> killed_before = killed_ids(mutants);

        PromptBundle prompt;
        switch (config.mode) {
            case PipelineMode::Vanilla:
                prompt = build_vanilla_prompt(templates, subject_source);
                break;
            case PipelineMode::MutGenMF:
                prompt = build_generation_prompt(templates, result.summary_text, stripped_source,
                                                 {}, /*include_feedback_section=*/false);
                break;
            default: {
                std::vector<FeedbackEntry> feedback =
                    feedback_from_mutants(mutants, config.include_killed_feedback);
                prompt = build_generation_prompt(templates, result.summary_text, stripped_source,
                                                 feedback);
                break;
            }
        }

        LlmRequest request;
        request.prompt = prompt;
        request.model_name = config.model_name;
        CompleteResult completed = backend.complete(request);
        if (auto* err = std::get_if<TransportError>(&completed)) {
            result.stop_reason = "transport-error";
            result.error = "generation request failed: " + err->message;
            break;  // preserve the best suite so far
        }
        LlmResponse& response = std::get<LlmResponse>(completed);
        record.tokens_used += response.usage.prompt_tokens + response.usage.completion_tokens;
        for (const auto& w : response.parse_warnings)
            result.warnings.push_back("iteration " + std::to_string(index) + ": " + w);

        std::vector<TestCase> candidates = candidates_from_response(response);
        std::set<std::string> taken = suite_names(suite);
        ExeFilterResult filtered = exe_filter(program, candidates, taken, config.step_budget);

        IterationArtifacts artifacts;
        artifacts.prompt_text = prompt.user_text;
        artifacts.response_text = response.raw_text;

        std::vector<TestCase> fresh = filtered.passing;
        if (config.mode == PipelineMode::MutGenF) {
            // ablation: failures are dropped, nothing is attempted
            for (const auto& f : filtered.failures)
                artifacts.unfixed.push_back(UnfixedArchiveEntry{f.test.name, f.test.source_text,
                                                                f.category, f.message,
                                                                f.matched_strategy});
        } else {
            std::set<std::string> taken_after = taken;
            for (const auto& t : fresh) taken_after.insert(t.name);
            RepairRoundResult repair =
                repair_round(program, filtered.failures, &backend, templates, config.fix_mode,
                             taken_after, config.model_name, config.step_budget);
            record.tokens_used += repair.tokens_used;
            record.repair_stats = repair.stats;
            for (auto& [fix_prompt, fix_response] : repair.exchanges)
                artifacts.fix_exchanges.emplace_back(fix_prompt.user_text, fix_response);
            for (const auto& f : repair.unfixed)
                artifacts.unfixed.push_back(UnfixedArchiveEntry{f.test.name, f.test.source_text,
                                                                f.category, f.message,
                                                                f.matched_strategy});
            for (auto& t : repair.fixed_passing) fresh.push_back(std::move(t));
            if (repair.transport_error) {
                result.stop_reason = "transport-error";
                result.error = "fix request failed: " + repair.transport_error->message;
                // fall through: keep what passed before the abort
            }
        }

        if (config.dedup_useless && !fresh.empty()) {
            // keep only tests that kill at least one currently-unkilled mutant
            std::vector<TestCase> kept;
            std::vector<TestCase> working = suite;
            std::vector<Mutant> scratch = mutants;
            std::set<int> killed(killed_before.begin(), killed_before.end());
            for (const auto& t : fresh) {
                working.push_back(t);
                EvaluationResult check =
                    evaluate_mutants(program, scratch, working, config.step_budget, config.jobs);
                std::vector<int> now = killed_ids(scratch);
                bool useful = false;
                for (int id : now)
                    if (!killed.count(id)) useful = true;
                if (useful) {
                    kept.push_back(t);
                    killed.insert(now.begin(), now.end());
                } else {
                    working.pop_back();
                }
                (void)check;
            }
            fresh = std::move(kept);
        }

        for (auto& t : fresh) suite.push_back(std::move(t));
        record.suite_size_after = static_cast<long>(suite.size());

        eval = evaluate_mutants(program, mutants, suite, config.step_budget, config.jobs);
        record.mutation_score_after = eval.report.mutation_score;
        std::set<int> before_set(killed_before.begin(), killed_before.end());
        for (int id : killed_ids(mutants))
            if (!before_set.count(id)) record.newly_killed.push_back(id);

        record.wall_time_seconds = seconds_since(iter_start);
        artifacts.suite_text = suite_to_text(suite);
        artifacts.report_json = report_to_json(eval.report);
        artifacts.stats_json = iteration_record_json(record);
        result.iterations.push_back(record);
        result.artifacts.push_back(std::move(artifacts));

        if (!result.stop_reason.empty()) break;  // transport abort mid-iteration
        if (check_convergence(result.iterations, config.convergence_rule, config.epsilon)) {
            result.stop_reason = config.convergence_rule == ConvergenceRule::NoNewKills
                                     ? "no-new-kills"
                                     : "score-delta";
            break;
        }
        if (index == config.max_iterations) result.stop_reason = "max-iterations";
    }

    result.final_suite = suite;
    result.final_report = eval.report;
    result.total_tokens = result.summarize_tokens;
    for (const auto& r : result.iterations) result.total_tokens += r.tokens_used;
    result.total_wall_seconds = seconds_since(pipeline_start);
    result.ok = result.stop_reason != "transport-error";
    if (result.stop_reason.empty()) result.stop_reason = "max-iterations";
    return result;
}

}  // namespace mutmj
