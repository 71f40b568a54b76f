#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutmj/ast.hpp"

namespace mutmj {

// The PITest DEFAULTS operator set, in canonical id order (this order is
// also the per-statement enumeration order).
enum class MutationOperator {
    ConditionalsBoundary,
    Increments,
    InvertNegatives,
    Math,
    NegateConditionals,
    VoidMethodCalls,
    EmptyReturns,
    FalseReturns,
    TrueReturns,
    NullReturns,
    PrimitiveReturns,
};

inline constexpr int kOperatorCount = 11;

const std::vector<MutationOperator>& all_operators();

// Stable identifier, e.g. "ConditionalsBoundary".
std::string operator_id(MutationOperator op);
std::optional<MutationOperator> operator_from_id(const std::string& id);

// Report wording, e.g. "changed conditional boundary" or
// "replaced Boolean return with True" (the latter gets a
// " for <unit>::<function>" suffix in rendered reports).
std::string operator_description(MutationOperator op);
bool operator_mentions_target(MutationOperator op);

// Feedback wording, e.g. "conditional boundary" for the prompt line
// "21. conditional boundary at line 24, uncovered:".
std::string operator_feedback_phrase(MutationOperator op);

enum class MutantStatus { Pending, Killed, Survived, NoCoverage };

const char* status_word(MutantStatus status);  // KILLED / SURVIVED / NO_COVERAGE

struct Mutant {
    int id = 0;  // dense from 1 in generation order
    MutationOperator op = MutationOperator::ConditionalsBoundary;
    int line = 0;                        // line of the mutated node
    std::string mutated_statement_text;  // compact rendering of the changed statement
    Program program;                     // the transformed unit
    MutantStatus status = MutantStatus::Pending;
    std::string target_function;
    int stmt_id = 0;  // statement that changed, for diff-based checks
};

// Enumerates every applicable single-point mutation of `target`:
// statement order, then operator-id order, then left-to-right within the
// statement. Identity transformations and duplicates are suppressed.
std::vector<Mutant> generate_mutants(const Program& program, const std::string& target);

// Per-site mapping table, exposed for direct checks. Returns nothing when
// the operator does not apply to the node or the result would be identical.
std::optional<Expr> apply_operator(const Expr& node, MutationOperator op);
// `return_type` drives the return-replacement operators; statements that the
// operator deletes come back as an empty block.
std::optional<Stmt> apply_operator(const Stmt& node, MutationOperator op, Type return_type);

}  // namespace mutmj
