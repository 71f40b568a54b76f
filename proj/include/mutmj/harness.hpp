#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mutmj/ast.hpp"
#include "mutmj/interp.hpp"
#include "mutmj/mutation.hpp"
#include "mutmj/parser.hpp"

namespace mutmj {

enum class TestOrigin { Generated, Fixed, Seed };

const char* origin_name(TestOrigin origin);

struct TestCase {
    std::string name;
    std::string source_text;  // `test <name> { ... }`, lines local to the test
    TestOrigin origin = TestOrigin::Seed;
};

enum class Verdict { Pass, AssertionFailure, CompileError, RuntimeError, Timeout };

const char* verdict_name(Verdict verdict);

struct TestOutcome {
    std::string test;
    Verdict verdict = Verdict::Pass;
    std::string message;  // empty for Pass; bit-exact formats for assertions
    int line = 0;
    std::set<int> covered_lines;
    BranchSet covered_branches;
    std::optional<AssertFailureInfo> assertion;  // present on AssertionFailure
};

// Assertion message contracts consumed by the repair module:
//   assertEquals   -> "<test>:<line>: expected:<E> but was:<A>"
//   assertTrue/..  -> "<test>:<line>:null"
std::string assert_equals_message(const std::string& test, int line, const std::string& expected,
                                  const std::string& actual);
std::string assert_bool_message(const std::string& test, int line);

// Compiles one test against the program (parse + type check).
struct CompiledTest {
    std::optional<ParsedTest> parsed;
    std::optional<ParseError> error;
    bool ok() const { return parsed.has_value(); }
};
CompiledTest compile_test(const Program& program, const TestCase& test);

// Runs every test against the program; all failures come back as data.
std::vector<TestOutcome> run_suite(const Program& program, const std::vector<TestCase>& suite,
                                   long long budget = kDefaultStepBudget);

enum class KillCell { Kills, NoKill, NotCovering };

struct KillMatrix {
    std::vector<int> mutant_ids;
    std::vector<std::string> test_names;
    std::vector<std::vector<KillCell>> cells;  // [mutant index][test index]
};

struct OperatorRow {
    MutationOperator op;
    long killed = 0;
    long live = 0;
    long no_coverage = 0;
    long total = 0;
    double killing_ratio = 0.0;  // percent, full precision
};

struct ReportMutant {
    int id = 0;
    int line = 0;
    MutationOperator op;
    std::string description;  // rendered, target suffix included when applicable
    MutantStatus status = MutantStatus::Pending;
};

struct MutationReport {
    std::string subject;
    long killed = 0;
    long survived = 0;
    long no_coverage = 0;
    long total = 0;
    double mutation_score = 0.0;  // percent, full precision
    double line_coverage = 0.0;
    double branch_coverage = 0.0;
    bool zero_mutants = false;  // subjects with no mutants score 100% but are flagged
    std::vector<ReportMutant> mutants;
    std::vector<OperatorRow> per_operator;  // sorted by total desc, then operator order
};

struct EvaluationResult {
    KillMatrix matrix;
    MutationReport report;
};

// killed/total x 100; a zero-mutant subject is defined as 100%.
double mutation_score_percent(long killed, long total);
double round1(double x);

// Classifies every mutant against a suite that passes on the original
// program. Statuses are written back into `mutants`.
EvaluationResult evaluate_mutants(const Program& program, std::vector<Mutant>& mutants,
                                  const std::vector<TestCase>& suite,
                                  long long budget = kDefaultStepBudget, int jobs = 1);

// Human-readable report: mutants grouped by line, numbered within the group,
// "N. <description> -> <STATUS>".
std::string render_report(const MutationReport& report);
nlohmann::json report_to_json(const MutationReport& report);
MutationReport report_from_json(const nlohmann::json& j);

// Suite file helpers (.mjt: one or more `test` functions).
struct SuiteLoadResult {
    std::vector<TestCase> tests;
    std::optional<ParseError> error;
    bool ok() const { return !error.has_value(); }
};
SuiteLoadResult load_suite(const std::string& text, TestOrigin origin = TestOrigin::Seed);
std::string suite_to_text(const std::vector<TestCase>& suite);

}  // namespace mutmj
