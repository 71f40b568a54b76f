#include "mutmj/mutation.hpp"

#include <cassert>
#include <set>

#include "mutmj/printer.hpp"

namespace mutmj {

namespace {

struct OperatorInfo {
    MutationOperator op;
    const char* id;
    const char* description;
    const char* feedback;
    bool mentions_target;
};

const OperatorInfo kOperators[kOperatorCount] = {
    {MutationOperator::ConditionalsBoundary, "ConditionalsBoundary", "changed conditional boundary",
     "conditional boundary", false},
    {MutationOperator::Increments, "Increments", "changed increment", "changed increment", false},
    {MutationOperator::InvertNegatives, "InvertNegatives", "removed negation", "removed negation",
     false},
    {MutationOperator::Math, "Math", "replaced arithmetic operation",
     "replaced arithmetic operation", false},
    {MutationOperator::NegateConditionals, "NegateConditionals", "negated conditional",
     "negated conditional", false},
    {MutationOperator::VoidMethodCalls, "VoidMethodCalls", "removed call to void method",
     "removed call to void method", false},
    {MutationOperator::EmptyReturns, "EmptyReturns", "replaced return value with empty value",
     "replaced return value with empty value", true},
    {MutationOperator::FalseReturns, "FalseReturns", "replaced Boolean return with False",
     "replaced Boolean return with False", true},
    {MutationOperator::TrueReturns, "TrueReturns", "replaced Boolean return with True",
     "replaced Boolean return with True", true},
    {MutationOperator::NullReturns, "NullReturns", "replaced return value with null",
     "replaced return value with null", true},
    {MutationOperator::PrimitiveReturns, "PrimitiveReturns", "replaced int return with 0",
     "replaced int return with 0", true},
};

const OperatorInfo& info(MutationOperator op) { return kOperators[static_cast<int>(op)]; }

std::optional<BinOp> boundary_swap(BinOp op) {
    switch (op) {
        case BinOp::Lt: return BinOp::Le;
        case BinOp::Le: return BinOp::Lt;
        case BinOp::Gt: return BinOp::Ge;
        case BinOp::Ge: return BinOp::Gt;
        default: return std::nullopt;
    }
}

std::optional<BinOp> negate_swap(BinOp op) {
    switch (op) {
        case BinOp::Eq: return BinOp::Ne;
        case BinOp::Ne: return BinOp::Eq;
        case BinOp::Lt: return BinOp::Ge;
        case BinOp::Le: return BinOp::Gt;
        case BinOp::Gt: return BinOp::Le;
        case BinOp::Ge: return BinOp::Lt;
        default: return std::nullopt;
    }
}

std::optional<BinOp> math_swap(BinOp op) {
    switch (op) {
        case BinOp::Add: return BinOp::Sub;
        case BinOp::Sub: return BinOp::Add;
        case BinOp::Mul: return BinOp::Div;
        case BinOp::Div: return BinOp::Mul;
        case BinOp::Mod: return BinOp::Mul;
        default: return std::nullopt;
    }
}

Expr literal_expr(int line, Type type, auto node) {
    Expr e;
    e.line = line;
    e.type = type;
    e.node = std::move(node);
    return e;
}

// A replacement value for `return e` under the given operator, or nothing.
std::optional<Expr> return_replacement(const Expr& value, MutationOperator op, Type return_type) {
    switch (op) {
        case MutationOperator::EmptyReturns:
            if (return_type == Type::string_())
                return literal_expr(value.line, Type::string_(), StrLit{""});
            if (return_type.is_array()) {
                Expr e = literal_expr(value.line, return_type, ArrayLit{});
                return e;
            }
            return std::nullopt;
        case MutationOperator::FalseReturns:
            if (return_type == Type::bool_())
                return literal_expr(value.line, Type::bool_(), BoolLit{false});
            return std::nullopt;
        case MutationOperator::TrueReturns:
            if (return_type == Type::bool_())
                return literal_expr(value.line, Type::bool_(), BoolLit{true});
            return std::nullopt;
        case MutationOperator::NullReturns:
            if (return_type.is_nullable())
                return literal_expr(value.line, return_type, NullLit{});
            return std::nullopt;
        case MutationOperator::PrimitiveReturns:
            if (return_type == Type::int_())
                return literal_expr(value.line, Type::int_(), IntLit{0});
            return std::nullopt;
        default: return std::nullopt;
    }
}

// One applicable site inside a statement.
struct Site {
    MutationOperator op;
    int line = 0;      // line of the mutated node
    int expr_id = 0;   // >0 for expression rewrites
    bool stmt_level = false;
};

// Expression-level candidates within one statement, left to right.
void collect_expr_sites(const Stmt& stmt, MutationOperator op, std::vector<Site>& out) {
    walk_exprs(stmt, [&](const Expr& e) {
        if (const auto* bin = std::get_if<BinaryExpr>(&e.node)) {
            bool hit = false;
            switch (op) {
                case MutationOperator::ConditionalsBoundary:
                    hit = boundary_swap(bin->op).has_value();
                    break;
                case MutationOperator::NegateConditionals:
                    hit = negate_swap(bin->op).has_value();
                    break;
                case MutationOperator::Math:
                    // string concatenation is excluded
                    hit = math_swap(bin->op).has_value() && e.type == Type::int_();
                    break;
                default: break;
            }
            if (hit) out.push_back(Site{op, e.line, e.id, false});
            return;
        }
        if (op == MutationOperator::InvertNegatives) {
            if (const auto* un = std::get_if<UnaryExpr>(&e.node); un && un->op == UnOp::Neg)
                out.push_back(Site{op, e.line, e.id, false});
        }
    });
}

void collect_stmt_sites(const Stmt& stmt, MutationOperator op, Type return_type,
                        std::vector<Site>& out) {
    switch (op) {
        case MutationOperator::Increments: {
            if (std::holds_alternative<IncDecStmt>(stmt.node)) {
                out.push_back(Site{op, stmt.line, 0, true});
            } else if (const auto* ca = std::get_if<CompoundAssignStmt>(&stmt.node)) {
                if (ca->target.type == Type::int_()) out.push_back(Site{op, stmt.line, 0, true});
            }
            break;
        }
        case MutationOperator::VoidMethodCalls: {
            if (const auto* es = std::get_if<ExprStmt>(&stmt.node)) {
                if (es->expr.type == Type::void_()) out.push_back(Site{op, stmt.line, 0, true});
            }
            break;
        }
        case MutationOperator::EmptyReturns:
        case MutationOperator::FalseReturns:
        case MutationOperator::TrueReturns:
        case MutationOperator::NullReturns:
        case MutationOperator::PrimitiveReturns: {
            if (const auto* ret = std::get_if<ReturnStmt>(&stmt.node)) {
                if (ret->value && return_replacement(*ret->value, op, return_type))
                    out.push_back(Site{op, stmt.line, 0, true});
            }
            break;
        }
        default: break;
    }
}

void apply_expr_site(Expr& e, MutationOperator op) {
    if (auto* bin = std::get_if<BinaryExpr>(&e.node)) {
        std::optional<BinOp> swapped;
        switch (op) {
            case MutationOperator::ConditionalsBoundary: swapped = boundary_swap(bin->op); break;
            case MutationOperator::NegateConditionals: swapped = negate_swap(bin->op); break;
            case MutationOperator::Math: swapped = math_swap(bin->op); break;
            default: break;
        }
        assert(swapped);
        bin->op = *swapped;
        return;
    }
    assert(op == MutationOperator::InvertNegatives);
    auto un = std::get<UnaryExpr>(std::move(e.node));
    Expr operand = std::move(*un.operand);
    int line = e.line, id = e.id;
    e = std::move(operand);
    e.line = line;
    e.id = id;
}

// Applies a statement-level transform in place. Deletion (VoidMethodCalls)
// is handled by the caller, which owns the enclosing block.
void apply_stmt_site(Stmt& stmt, MutationOperator op, Type return_type) {
    if (op == MutationOperator::Increments) {
        if (auto* inc = std::get_if<IncDecStmt>(&stmt.node)) {
            inc->increment = !inc->increment;
            return;
        }
        auto& ca = std::get<CompoundAssignStmt>(stmt.node);
        ca.add = !ca.add;
        return;
    }
    auto& ret = std::get<ReturnStmt>(stmt.node);
    auto replacement = return_replacement(*ret.value, op, return_type);
    assert(replacement);
    ret.value = std::move(*replacement);
}

// Removes the statement with the given id; a statement that is the direct
// body of a branch is replaced with an empty block instead.
bool remove_stmt(Stmt& holder, int stmt_id);

bool remove_stmt_in_block(Block& block, int stmt_id) {
    for (size_t i = 0; i < block.stmts.size(); i++) {
        if (block.stmts[i].id == stmt_id) {
            block.stmts.erase(block.stmts.begin() + static_cast<long>(i));
            return true;
        }
        if (remove_stmt(block.stmts[i], stmt_id)) return true;
    }
    return false;
}

bool remove_stmt(Stmt& holder, int stmt_id) {
    return std::visit(
        [&](auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IfStmt>) {
                auto handle_branch = [&](Box<Stmt>& branch) {
                    if (branch->id == stmt_id) {
                        Stmt empty;
                        empty.line = branch->line;
                        empty.id = branch->id;
                        empty.node = BlockStmt{};
                        *branch = std::move(empty);
                        return true;
                    }
                    return remove_stmt(*branch, stmt_id);
                };
                if (handle_branch(node.then_branch)) return true;
                if (node.else_branch) return handle_branch(*node.else_branch);
                return false;
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                if (node.body->id == stmt_id) {
                    Stmt empty;
                    empty.line = node.body->line;
                    empty.id = node.body->id;
                    empty.node = BlockStmt{};
                    *node.body = std::move(empty);
                    return true;
                }
                return remove_stmt(*node.body, stmt_id);
            } else if constexpr (std::is_same_v<T, BlockStmt>) {
                return remove_stmt_in_block(node.block, stmt_id);
            } else {
                return false;
            }
        },
        holder.node);
}

const Stmt* find_stmt(const Block& block, int stmt_id) {
    const Stmt* found = nullptr;
    walk_stmts(block, [&](const Stmt& s) {
        if (s.id == stmt_id) found = &s;
    });
    return found;
}

}  // namespace

const std::vector<MutationOperator>& all_operators() {
    static const std::vector<MutationOperator> ops = [] {
        std::vector<MutationOperator> v;
        for (const auto& o : kOperators) v.push_back(o.op);
        return v;
    }();
    return ops;
}

std::string operator_id(MutationOperator op) { return info(op).id; }

std::optional<MutationOperator> operator_from_id(const std::string& id) {
    for (const auto& o : kOperators)
        if (id == o.id) return o.op;
    return std::nullopt;
}

std::string operator_description(MutationOperator op) { return info(op).description; }
bool operator_mentions_target(MutationOperator op) { return info(op).mentions_target; }
std::string operator_feedback_phrase(MutationOperator op) { return info(op).feedback; }

const char* status_word(MutantStatus status) {
    switch (status) {
        case MutantStatus::Pending: return "PENDING";
        case MutantStatus::Killed: return "KILLED";
        case MutantStatus::Survived: return "SURVIVED";
        case MutantStatus::NoCoverage: return "NO_COVERAGE";
    }
    return "?";
}

std::vector<Mutant> generate_mutants(const Program& program, const std::string& target) {
    std::vector<Mutant> mutants;
    const Function* fn = program.find_function(target);
    assert(fn && "target function must exist");

    // target function's position, so clones can be located quickly
    size_t fn_index = 0;
    for (size_t i = 0; i < program.functions.size(); i++)
        if (program.functions[i].name == target) fn_index = i;

    std::set<std::pair<int, std::string>> seen;  // (stmt id, mutated text)
    int next_id = 1;

    std::vector<const Stmt*> statements;
    walk_stmts(fn->body, [&](const Stmt& s) { statements.push_back(&s); });

    for (const Stmt* stmt : statements) {
        for (MutationOperator op : all_operators()) {
            std::vector<Site> sites;
            collect_expr_sites(*stmt, op, sites);
            collect_stmt_sites(*stmt, op, fn->return_type, sites);
            for (const Site& site : sites) {
                Program mutated = program;
                Function& mfn = mutated.functions[fn_index];
                const Stmt* changed = nullptr;
                if (site.stmt_level && op == MutationOperator::VoidMethodCalls) {
                    remove_stmt_in_block(mfn.body, stmt->id);
                } else if (site.stmt_level) {
                    walk_stmts(mfn.body, [&](Stmt& s) {
                        if (s.id == stmt->id) apply_stmt_site(s, op, fn->return_type);
                    });
                } else {
                    walk_stmts(mfn.body, [&](Stmt& s) {
                        if (s.id != stmt->id) return;
                        walk_exprs(s, [&](Expr& e) {
                            if (e.id == site.expr_id) apply_expr_site(e, op);
                        });
                    });
                }
                std::string original_text = render_stmt_compact(*stmt);
                std::string mutated_text;
                if (op == MutationOperator::VoidMethodCalls) {
                    mutated_text = original_text;  // the feedback shows what was removed
                } else {
                    changed = find_stmt(mfn.body, stmt->id);
                    assert(changed);
                    mutated_text = render_stmt_compact(*changed);
                    if (mutated_text == original_text) continue;  // identity suppression
                }
                auto key = std::make_pair(stmt->id, op == MutationOperator::VoidMethodCalls
                                                       ? "<removed> " + original_text
                                                       : mutated_text);
                if (!seen.insert(key).second) continue;  // duplicate suppression

                Mutant m;
                m.id = next_id++;
                m.op = op;
                m.line = site.line;
                m.mutated_statement_text = mutated_text;
                m.program = std::move(mutated);
                m.status = MutantStatus::Pending;
                m.target_function = target;
                m.stmt_id = stmt->id;
                mutants.push_back(std::move(m));
            }
        }
    }
    return mutants;
}

std::optional<Expr> apply_operator(const Expr& node, MutationOperator op) {
    bool applicable = false;
    if (const auto* bin = std::get_if<BinaryExpr>(&node.node)) {
        switch (op) {
            case MutationOperator::ConditionalsBoundary:
                applicable = boundary_swap(bin->op).has_value();
                break;
            case MutationOperator::NegateConditionals:
                applicable = negate_swap(bin->op).has_value();
                break;
            case MutationOperator::Math:
                applicable = math_swap(bin->op).has_value() && node.type != Type::string_();
                break;
            default: break;
        }
    } else if (op == MutationOperator::InvertNegatives) {
        const auto* un = std::get_if<UnaryExpr>(&node.node);
        applicable = un && un->op == UnOp::Neg;
    }
    if (!applicable) return std::nullopt;
    Expr out = node;
    apply_expr_site(out, op);
    if (render_expr(out) == render_expr(node)) return std::nullopt;
    return out;
}

std::optional<Stmt> apply_operator(const Stmt& node, MutationOperator op, Type return_type) {
    std::vector<Site> sites;
    collect_stmt_sites(node, op, return_type, sites);
    if (sites.empty()) return std::nullopt;
    if (op == MutationOperator::VoidMethodCalls) {
        Stmt empty;
        empty.line = node.line;
        empty.id = node.id;
        empty.node = BlockStmt{};
        return empty;
    }
    Stmt out = node;
    apply_stmt_site(out, op, return_type);
    if (render_stmt_compact(out) == render_stmt_compact(node)) return std::nullopt;
    return out;
}

}  // namespace mutmj
