#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mutmj/ast.hpp"

namespace mutmj {

inline constexpr long long kDefaultStepBudget = 1'000'000;
inline constexpr int kMaxCallDepth = 400;

struct NullV {
    friend bool operator==(NullV, NullV) { return true; }
};

struct Value {
    using IntArr = std::shared_ptr<std::vector<long long>>;
    using StrArr = std::shared_ptr<std::vector<std::string>>;
    std::variant<std::monostate, long long, bool, std::string, IntArr, StrArr, NullV> v;

    static Value unit() { return {}; }
    static Value of_int(long long x) { Value r; r.v = x; return r; }
    static Value of_bool(bool b) { Value r; r.v = b; return r; }
    static Value of_str(std::string s) { Value r; r.v = std::move(s); return r; }
    static Value null() { Value r; r.v = NullV{}; return r; }
    static Value of_int_array(std::vector<long long> xs) {
        Value r;
        r.v = std::make_shared<std::vector<long long>>(std::move(xs));
        return r;
    }
    static Value of_str_array(std::vector<std::string> xs) {
        Value r;
        r.v = std::make_shared<std::vector<std::string>>(std::move(xs));
        return r;
    }

    bool is_null() const { return std::holds_alternative<NullV>(v); }
    bool is_unit() const { return std::holds_alternative<std::monostate>(v); }
};

// Content equality; arrays compare element-wise, null only equals null.
bool value_equals(const Value& a, const Value& b);

// Human-readable rendering used in assertion messages: strings unquoted,
// arrays as [1, 2, 3].
std::string render_value(const Value& value);

// Rebuilds a literal expression producing the value (strings quoted).
Expr value_to_literal(const Value& value, int line);

struct RuntimeErr {
    std::string kind;  // division-by-zero | parse-int | index-out-of-bounds |
                       // null-dereference | stack-overflow | missing-return
    int line = 0;
    std::string message;
};

enum class ExecStatus { Normal, RuntimeError, StepBudgetExceeded };

using BranchSet = std::set<std::pair<int, int>>;  // (line, arm) with arm 0=false 1=true

struct ExecutionOutcome {
    ExecStatus status = ExecStatus::Normal;
    std::optional<RuntimeErr> error;
    std::optional<Value> return_value;
    std::set<int> covered_lines;
    BranchSet covered_branches;
    long long steps_used = 0;
    std::string printed;
};

// Runs `entry` with the given arguments. Coverage covers exactly the subject
// statements executed; runtime errors and budget exhaustion become data.
ExecutionOutcome execute(const Program& program, const std::string& entry,
                         const std::vector<Value>& args,
                         long long budget = kDefaultStepBudget);

struct AssertFailureInfo {
    AssertKind kind;
    int line = 0;
    int stmt_id = 0;
    std::optional<Value> expected;  // assertEquals only
    std::optional<Value> actual;
};

struct TestExecOutcome {
    enum class Status { Pass, AssertionFailure, RuntimeError, Timeout };
    Status status = Status::Pass;
    std::optional<AssertFailureInfo> assertion;
    std::optional<RuntimeErr> error;
    std::set<int> covered_lines;  // coverage of the *program*, not the test body
    BranchSet covered_branches;
    long long steps_used = 0;
    std::string printed;
};

// Executes a type-checked test body against the program. Assertions stop the
// test at the first failure; coverage is recorded only inside program code.
TestExecOutcome execute_test(const Program& program, const Block& test_body,
                             long long budget = kDefaultStepBudget);

// Static coverage universe: all statement lines / all (line, arm) pairs of
// if and while conditions.
std::set<int> executable_lines(const Program& program);
BranchSet branch_universe(const Program& program);

}  // namespace mutmj
