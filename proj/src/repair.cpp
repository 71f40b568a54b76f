#include "mutmj/repair.hpp"

#include <regex>

#include "mutmj/printer.hpp"

namespace mutmj {

namespace {

const std::regex kExpectedButWas("expected:<(.*)> but was:<(.*)>");
const std::regex kBoolNull("^[A-Za-z_][A-Za-z0-9_]*:[0-9]+:null$");

std::string unique_name(const std::string& base, const std::set<std::string>& taken) {
    for (int i = 1;; i++) {
        std::string candidate = base + std::to_string(i);
        if (!taken.count(candidate)) return candidate;
    }
}

// Rewrites the assert statement with the given id inside a parsed test and
// re-renders the source. Returns false when the statement is not found.
bool rewrite_assert(ParsedTest& test, int stmt_id, const std::function<void(AssertStmt&)>& fn) {
    bool found = false;
    walk_stmts(test.body, [&](Stmt& s) {
        if (s.id != stmt_id) return;
        if (auto* assert_stmt = std::get_if<AssertStmt>(&s.node)) {
            fn(*assert_stmt);
            found = true;
        }
    });
    return found;
}

TestCase rendered_test(const ParsedTest& parsed, const std::string& name, TestOrigin origin) {
    TestCase out;
    out.name = name;
    out.source_text = render_test(name, parsed.body);
    out.origin = origin;
    return out;
}

}  // namespace

int match_strategy(FailureCategory category, const std::string& message,
                   const std::string& test_source) {
    // 1: prefixed assertion calls (a compile error in MJ, recognized from
    //    the test source since the parser cannot name the qualified call)
    if (category == FailureCategory::CompileError &&
        test_source.find("Assert.assert") != std::string::npos)
        return 1;
    if (category == FailureCategory::AssertionFailure) {
        if (std::regex_search(message, kExpectedButWas)) return 2;
        if (std::regex_search(message, kBoolNull)) return 3;
    }
    if (category == FailureCategory::CompileError) {
        if (message.find("reference to assertEquals is ambiguous") != std::string::npos) return 4;
        if (message.find("method is already defined") != std::string::npos) return 5;
    }
    return 6;
}

ExeFilterResult exe_filter(const Program& program, const std::vector<TestCase>& candidates,
                           const std::set<std::string>& taken_names, long long budget) {
    ExeFilterResult result;
    std::set<std::string> seen = taken_names;
    for (const auto& candidate : candidates) {
        if (seen.count(candidate.name)) {
            FailureRecord record;
            record.test = candidate;
            record.category = FailureCategory::CompileError;
            record.message = "method is already defined: '" + candidate.name + "'";
            record.matched_strategy =
                match_strategy(record.category, record.message, candidate.source_text);
            result.failures.push_back(std::move(record));
            continue;
        }
        seen.insert(candidate.name);
        std::vector<TestOutcome> outcomes = run_suite(program, {candidate}, budget);
        const TestOutcome& outcome = outcomes[0];
        if (outcome.verdict == Verdict::Pass) {
            result.passing.push_back(candidate);
            continue;
        }
        FailureRecord record;
        record.test = candidate;
        record.category = outcome.verdict == Verdict::CompileError
                              ? FailureCategory::CompileError
                              : FailureCategory::AssertionFailure;
        record.message = outcome.message;
        record.matched_strategy =
            match_strategy(record.category, record.message, candidate.source_text);
        result.failures.push_back(std::move(record));
    }
    return result;
}

std::optional<TestCase> mechanical_fix(const Program& program, const FailureRecord& record,
                                       const std::set<std::string>& suite_names,
                                       long long budget) {
    switch (record.matched_strategy) {
        case 5: {
            TestParseResult parsed = parse_test(record.test.source_text);
            if (!parsed.ok()) return std::nullopt;
            std::string fresh = unique_name(record.test.name, suite_names);
            return rendered_test(*parsed.test, fresh, TestOrigin::Fixed);
        }
        case 2:
        case 3: {
            CompiledTest compiled = compile_test(program, record.test);
            if (!compiled.ok()) return std::nullopt;
            // Observed values come from a fresh instrumented run, not from
            // the recorded message.
            TestExecOutcome exec = execute_test(program, compiled.parsed->body, budget);
            if (exec.status != TestExecOutcome::Status::AssertionFailure) return std::nullopt;
            const AssertFailureInfo& info = *exec.assertion;
            if (record.matched_strategy == 2) {
                if (info.kind != AssertKind::Equals || !info.actual) return std::nullopt;
                Expr replacement = value_to_literal(*info.actual, info.line);
                bool ok = rewrite_assert(*compiled.parsed, info.stmt_id, [&](AssertStmt& node) {
                    node.args[0] = replacement;
                });
                if (!ok) return std::nullopt;
            } else {
                if (info.kind == AssertKind::Equals) return std::nullopt;
                bool ok = rewrite_assert(*compiled.parsed, info.stmt_id, [&](AssertStmt& node) {
                    node.kind = node.kind == AssertKind::True ? AssertKind::False
                                                              : AssertKind::True;
                });
                if (!ok) return std::nullopt;
            }
            return rendered_test(*compiled.parsed, record.test.name, TestOrigin::Fixed);
        }
        default: return std::nullopt;
    }
}

LlmFixResult llm_fix(const TemplateStore& templates, const FailureRecord& record,
                     LlmBackend& backend, const std::string& model_name) {
    LlmFixResult result;
    result.prompt = build_fix_prompt(templates, record.test.source_text, record.message);
    LlmRequest request;
    request.prompt = result.prompt;
    request.model_name = model_name;
    CompleteResult completed = backend.complete(request);
    if (auto* err = std::get_if<TransportError>(&completed)) {
        result.transport_error = *err;
        return result;
    }
    LlmResponse& response = std::get<LlmResponse>(completed);
    result.response_text = response.raw_text;
    result.usage = response.usage;
    if (response.parsed_tests.empty()) return result;  // unusable reply; warning-level
    const ParsedNewTest& first = response.parsed_tests[0];
    TestParseResult parsed = parse_test(first.test_code);
    if (!parsed.ok()) return result;
    TestCase fixed;
    fixed.name = parsed.test->name;
    fixed.source_text = first.test_code;
    fixed.origin = TestOrigin::Fixed;
    result.fixed = fixed;
    return result;
}

nlohmann::json repair_stats_json(const RepairStats& stats) {
    return {{"attempted", stats.attempted},
            {"fixed_mechanical", stats.fixed_mechanical},
            {"fixed_llm", stats.fixed_llm},
            {"unfixed", stats.unfixed},
            {"fix_rate", stats.fix_rate}};
}

RepairRoundResult repair_round(const Program& program, const std::vector<FailureRecord>& failures,
                               LlmBackend* backend, const TemplateStore& templates, FixMode mode,
                               const std::set<std::string>& taken_names,
                               const std::string& model_name, long long budget) {
    RepairRoundResult result;
    result.stats.attempted = static_cast<long>(failures.size());

    std::set<std::string> names = taken_names;
    for (const auto& record : failures) {
        bool mechanical_applies = mode == FixMode::MechanicalFirst &&
                                  (record.matched_strategy == 2 || record.matched_strategy == 3 ||
                                   record.matched_strategy == 5);
        std::optional<TestCase> candidate;
        bool via_llm = false;
        if (mechanical_applies) candidate = mechanical_fix(program, record, names, budget);
        if (!candidate && backend) {
            LlmFixResult llm = llm_fix(templates, record, *backend, model_name);
            result.tokens_used += llm.usage.prompt_tokens + llm.usage.completion_tokens;
            result.exchanges.emplace_back(llm.prompt, llm.response_text);
            if (llm.transport_error) {
                result.transport_error = llm.transport_error;
                result.unfixed.push_back(record);
                break;  // abort the round, keep what we have
            }
            candidate = llm.fixed;
            via_llm = true;
        }
        if (!candidate) {
            result.unfixed.push_back(record);
            continue;
        }
        // one attempt per failure per round: the rewrite must pass as-is
        ExeFilterResult check = exe_filter(program, {*candidate}, names, budget);
        if (check.passing.size() == 1) {
            names.insert(check.passing[0].name);
            result.fixed_passing.push_back(check.passing[0]);
            if (via_llm)
                result.stats.fixed_llm++;
            else
                result.stats.fixed_mechanical++;
        } else {
            result.unfixed.push_back(record);
        }
    }
    result.stats.unfixed = static_cast<long>(result.unfixed.size());
    long fixed = result.stats.fixed_mechanical + result.stats.fixed_llm;
    result.stats.fix_rate = result.stats.attempted == 0
                                ? 0.0
                                : static_cast<double>(fixed) /
                                      static_cast<double>(result.stats.attempted);
    return result;
}

}  // namespace mutmj
