#include "mutmj/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <map>
#include <thread>

namespace mutmj {

namespace {

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; i++) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<size_t> next{0};
    int count = std::min<int>(jobs, static_cast<int>(n));
    for (int w = 0; w < count; w++) {
        workers.emplace_back([&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : workers) t.join();
}

TestOutcome outcome_from_exec(const std::string& name, const TestExecOutcome& exec) {
    TestOutcome out;
    out.test = name;
    out.covered_lines = exec.covered_lines;
    out.covered_branches = exec.covered_branches;
    switch (exec.status) {
        case TestExecOutcome::Status::Pass:
            out.verdict = Verdict::Pass;
            break;
        case TestExecOutcome::Status::AssertionFailure: {
            out.verdict = Verdict::AssertionFailure;
            out.assertion = exec.assertion;
            out.line = exec.assertion->line;
            if (exec.assertion->kind == AssertKind::Equals) {
                out.message = assert_equals_message(name, out.line,
                                                    render_value(*exec.assertion->expected),
                                                    render_value(*exec.assertion->actual));
            } else {
                out.message = assert_bool_message(name, out.line);
            }
            break;
        }
        case TestExecOutcome::Status::RuntimeError:
            out.verdict = Verdict::RuntimeError;
            out.line = exec.error->line;
            out.message = exec.error->message + " (line " + std::to_string(out.line) + ")";
            break;
        case TestExecOutcome::Status::Timeout:
            out.verdict = Verdict::Timeout;
            out.message = "timeout: step budget exceeded";
            break;
    }
    return out;
}

}  // namespace

const char* origin_name(TestOrigin origin) {
    switch (origin) {
        case TestOrigin::Generated: return "generated";
        case TestOrigin::Fixed: return "fixed";
        case TestOrigin::Seed: return "seed";
    }
    return "?";
}

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass: return "pass";
        case Verdict::AssertionFailure: return "assertion-failure";
        case Verdict::CompileError: return "compile-error";
        case Verdict::RuntimeError: return "runtime-error";
        case Verdict::Timeout: return "timeout";
    }
    return "?";
}

std::string assert_equals_message(const std::string& test, int line, const std::string& expected,
                                  const std::string& actual) {
    return test + ":" + std::to_string(line) + ": expected:<" + expected + "> but was:<" + actual +
           ">";
}

std::string assert_bool_message(const std::string& test, int line) {
    return test + ":" + std::to_string(line) + ":null";
}

CompiledTest compile_test(const Program& program, const TestCase& test) {
    CompiledTest out;
    TestParseResult parsed = parse_test(test.source_text);
    if (!parsed.ok()) {
        out.error = parsed.error;
        return out;
    }
    if (auto err = typecheck_test(program, *parsed.test)) {
        out.error = err;
        return out;
    }
    out.parsed = std::move(parsed.test);
    return out;
}

std::vector<TestOutcome> run_suite(const Program& program, const std::vector<TestCase>& suite,
                                   long long budget) {
    std::vector<TestOutcome> outcomes;
    outcomes.reserve(suite.size());
    for (const auto& test : suite) {
        CompiledTest compiled = compile_test(program, test);
        if (!compiled.ok()) {
            TestOutcome out;
            out.test = test.name;
            out.verdict = Verdict::CompileError;
            out.message = compiled.error->message;
            out.line = compiled.error->line;
            outcomes.push_back(std::move(out));
            continue;
        }
        TestExecOutcome exec = execute_test(program, compiled.parsed->body, budget);
        outcomes.push_back(outcome_from_exec(test.name, exec));
    }
    return outcomes;
}

double mutation_score_percent(long killed, long total) {
    if (total == 0) return 100.0;
    return 100.0 * static_cast<double>(killed) / static_cast<double>(total);
}

double round1(double x) { return std::round(x * 10.0) / 10.0; }

EvaluationResult evaluate_mutants(const Program& program, std::vector<Mutant>& mutants,
                                  const std::vector<TestCase>& suite, long long budget,
                                  int jobs) {
    EvaluationResult result;

    // Compile + run every test once on the original; tests that do not pass
    // are excluded from evaluation (the ExeFilter precondition).
    struct ActiveTest {
        const TestCase* test;
        Block body;
        std::set<int> covered_lines;
    };
    std::vector<ActiveTest> active;
    std::set<int> covered_union;
    BranchSet branch_union;
    for (const auto& test : suite) {
        CompiledTest compiled = compile_test(program, test);
        if (!compiled.ok()) continue;
        TestExecOutcome exec = execute_test(program, compiled.parsed->body, budget);
        if (exec.status != TestExecOutcome::Status::Pass) continue;
        covered_union.insert(exec.covered_lines.begin(), exec.covered_lines.end());
        branch_union.insert(exec.covered_branches.begin(), exec.covered_branches.end());
        active.push_back(ActiveTest{&test, std::move(compiled.parsed->body),
                                    std::move(exec.covered_lines)});
    }

    result.matrix.mutant_ids.reserve(mutants.size());
    for (const auto& m : mutants) result.matrix.mutant_ids.push_back(m.id);
    for (const auto& t : active) result.matrix.test_names.push_back(t.test->name);
    result.matrix.cells.assign(mutants.size(),
                               std::vector<KillCell>(active.size(), KillCell::NotCovering));

    parallel_for(mutants.size(), jobs, [&](size_t mi) {
        Mutant& m = mutants[mi];
        bool any_covering = false;
        bool killed = false;
        for (size_t ti = 0; ti < active.size(); ti++) {
            const ActiveTest& t = active[ti];
            if (!t.covered_lines.count(m.line)) {
                result.matrix.cells[mi][ti] = KillCell::NotCovering;
                continue;
            }
            any_covering = true;
            TestExecOutcome exec = execute_test(m.program, t.body, budget);
            bool kills = exec.status != TestExecOutcome::Status::Pass;
            result.matrix.cells[mi][ti] = kills ? KillCell::Kills : KillCell::NoKill;
            if (kills) killed = true;
        }
        if (killed)
            m.status = MutantStatus::Killed;
        else if (!any_covering)
            m.status = MutantStatus::NoCoverage;
        else
            m.status = MutantStatus::Survived;
    });

    MutationReport& report = result.report;
    report.subject = program.unit_name;
    report.total = static_cast<long>(mutants.size());
    std::map<MutationOperator, OperatorRow> rows;
    for (const auto& m : mutants) {
        OperatorRow& row = rows[m.op];
        row.op = m.op;
        row.total++;
        switch (m.status) {
            case MutantStatus::Killed:
                report.killed++;
                row.killed++;
                break;
            case MutantStatus::Survived:
                report.survived++;
                row.live++;
                break;
            case MutantStatus::NoCoverage:
                report.no_coverage++;
                row.no_coverage++;
                break;
            case MutantStatus::Pending: assert(false && "status must be set");
        }
        ReportMutant rm;
        rm.id = m.id;
        rm.line = m.line;
        rm.op = m.op;
        rm.description = operator_description(m.op);
        if (operator_mentions_target(m.op))
            rm.description += " for " + program.unit_name + "::" + m.target_function;
        rm.status = m.status;
        report.mutants.push_back(std::move(rm));
    }
    report.zero_mutants = mutants.empty();
    report.mutation_score = mutation_score_percent(report.killed, report.total);

    std::set<int> universe = executable_lines(program);
    BranchSet branches = branch_universe(program);
    long covered_count = 0;
    for (int line : covered_union)
        if (universe.count(line)) covered_count++;
    report.line_coverage = universe.empty()
                               ? 100.0
                               : 100.0 * static_cast<double>(covered_count) /
                                     static_cast<double>(universe.size());
    long branch_count = 0;
    for (const auto& b : branch_union)
        if (branches.count(b)) branch_count++;
    report.branch_coverage = branches.empty()
                                 ? 100.0
                                 : 100.0 * static_cast<double>(branch_count) /
                                       static_cast<double>(branches.size());

    for (auto& [op, row] : rows) {
        row.killing_ratio = mutation_score_percent(row.killed, row.total);
        report.per_operator.push_back(row);
    }
    std::sort(report.per_operator.begin(), report.per_operator.end(),
              [](const OperatorRow& a, const OperatorRow& b) {
                  if (a.total != b.total) return a.total > b.total;
                  return static_cast<int>(a.op) < static_cast<int>(b.op);
              });
    return result;
}

std::string render_report(const MutationReport& report) {
    std::string out = "Mutations\n";
    std::map<int, std::vector<const ReportMutant*>> by_line;
    for (const auto& m : report.mutants) by_line[m.line].push_back(&m);
    for (auto& [line, group] : by_line) {
        std::sort(group.begin(), group.end(),
                  [](const ReportMutant* a, const ReportMutant* b) { return a->id < b->id; });
        out += "\n" + std::to_string(line) + "\n";
        int n = 1;
        for (const ReportMutant* m : group) {
            out += std::to_string(n++) + ". " + m->description + " -> " +
                   status_word(m->status) + "\n";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", round1(report.mutation_score));
    out += "\nMutation score: " + std::string(buf) + "% (" + std::to_string(report.killed) + "/" +
           std::to_string(report.total) + ")";
    if (report.zero_mutants) out += " [no mutants generated]";
    out += "\n";
    std::snprintf(buf, sizeof(buf), "%.1f", round1(report.line_coverage));
    out += "Line coverage: " + std::string(buf) + "%\n";
    std::snprintf(buf, sizeof(buf), "%.1f", round1(report.branch_coverage));
    out += "Branch coverage: " + std::string(buf) + "%\n";
    return out;
}

nlohmann::json report_to_json(const MutationReport& report) {
    nlohmann::json j;
    j["subject"] = report.subject;
    j["mutation_score"] = round1(report.mutation_score);
    j["line_coverage"] = round1(report.line_coverage);
    j["branch_coverage"] = round1(report.branch_coverage);
    j["zero_mutants"] = report.zero_mutants;
    j["mutants"] = nlohmann::json::array();
    for (const auto& m : report.mutants) {
        j["mutants"].push_back({{"id", m.id},
                                {"line", m.line},
                                {"operator", operator_id(m.op)},
                                {"description", m.description},
                                {"status", status_word(m.status)}});
    }
    j["per_operator"] = nlohmann::json::array();
    for (const auto& row : report.per_operator) {
        j["per_operator"].push_back({{"operator", operator_id(row.op)},
                                     {"killed", row.killed},
                                     {"live", row.live},
                                     {"no_coverage", row.no_coverage},
                                     {"total", row.total},
                                     {"killing_ratio", round1(row.killing_ratio)}});
    }
    return j;
}

MutationReport report_from_json(const nlohmann::json& j) {
    MutationReport report;
    report.subject = j.value("subject", "");
    report.mutation_score = j.value("mutation_score", 0.0);
    report.line_coverage = j.value("line_coverage", 0.0);
    report.branch_coverage = j.value("branch_coverage", 0.0);
    report.zero_mutants = j.value("zero_mutants", false);
    if (j.contains("mutants")) {
        for (const auto& m : j["mutants"]) {
            ReportMutant rm;
            rm.id = m.value("id", 0);
            rm.line = m.value("line", 0);
            rm.op = operator_from_id(m.value("operator", "")).value_or(
                MutationOperator::ConditionalsBoundary);
            rm.description = m.value("description", "");
            std::string status = m.value("status", "");
            rm.status = status == "KILLED"
                            ? MutantStatus::Killed
                            : (status == "SURVIVED" ? MutantStatus::Survived
                                                    : MutantStatus::NoCoverage);
            report.mutants.push_back(std::move(rm));
        }
    }
    if (j.contains("per_operator")) {
        for (const auto& r : j["per_operator"]) {
            OperatorRow row;
            auto op = operator_from_id(r.value("operator", ""));
            if (!op) continue;
            row.op = *op;
            row.killed = r.value("killed", 0L);
            row.live = r.value("live", 0L);
            row.no_coverage = r.value("no_coverage", 0L);
            row.total = r.value("total", 0L);
            row.killing_ratio = r.value("killing_ratio", 0.0);
            report.per_operator.push_back(row);
            report.killed += row.killed;
            report.survived += row.live;
            report.no_coverage += row.no_coverage;
            report.total += row.total;
        }
    }
    return report;
}

SuiteLoadResult load_suite(const std::string& text, TestOrigin origin) {
    SuiteLoadResult result;
    SuiteParseResult parsed = parse_suite(text);
    if (!parsed.ok()) {
        result.error = parsed.error;
        return result;
    }
    for (auto& t : parsed.tests) {
        TestCase tc;
        tc.name = t.name;
        tc.source_text = t.source;
        tc.origin = origin;
        result.tests.push_back(std::move(tc));
    }
    return result;
}

std::string suite_to_text(const std::vector<TestCase>& suite) {
    std::string out;
    for (size_t i = 0; i < suite.size(); i++) {
        if (i) out += "\n";
        out += suite[i].source_text;
        if (out.empty() || out.back() != '\n') out += '\n';
    }
    return out;
}

}  // namespace mutmj
