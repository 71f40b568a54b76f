#include "mutmj/ast.hpp"

namespace mutmj {

std::string type_name(Type t) {
    switch (t.kind) {
        case TypeKind::Int: return "int";
        case TypeKind::Bool: return "bool";
        case TypeKind::String: return "string";
        case TypeKind::IntArray: return "int[]";
        case TypeKind::StrArray: return "string[]";
        case TypeKind::Void: return "void";
        case TypeKind::Null: return "null";
        case TypeKind::Unknown: return "?";
    }
    return "?";
}

bool is_comparison(BinOp op) {
    switch (op) {
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
        case BinOp::Eq:
        case BinOp::Ne: return true;
        default: return false;
    }
}

const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
    }
    return "?";
}

namespace {

template <typename StmtT, typename Fn>
void walk_stmt_impl(StmtT& stmt, const Fn& fn) {
    fn(stmt);
    std::visit(
        [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IfStmt>) {
                walk_stmt_impl(*node.then_branch, fn);
                if (node.else_branch) walk_stmt_impl(**node.else_branch, fn);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                walk_stmt_impl(*node.body, fn);
            } else if constexpr (std::is_same_v<T, BlockStmt>) {
                for (auto& s : node.block.stmts) walk_stmt_impl(s, fn);
            }
        },
        stmt.node);
}

template <typename ExprT, typename Fn>
void walk_expr_impl(ExprT& expr, const Fn& fn) {
    fn(expr);
    std::visit(
        [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ArrayLit>) {
                for (auto& e : node.elements) walk_expr_impl(e, fn);
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                walk_expr_impl(*node.array, fn);
                walk_expr_impl(*node.index, fn);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (auto& e : node.args) walk_expr_impl(e, fn);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                walk_expr_impl(*node.operand, fn);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                walk_expr_impl(*node.lhs, fn);
                walk_expr_impl(*node.rhs, fn);
            }
        },
        expr.node);
}

template <typename StmtT, typename Fn>
void walk_stmt_exprs_impl(StmtT& stmt, const Fn& fn) {
    std::visit(
        [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, VarDeclStmt>) {
                if (node.init) walk_expr_impl(*node.init, fn);
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                walk_expr_impl(node.target, fn);
                walk_expr_impl(node.value, fn);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                walk_expr_impl(node.cond, fn);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                walk_expr_impl(node.cond, fn);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (node.value) walk_expr_impl(*node.value, fn);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                walk_expr_impl(node.expr, fn);
            } else if constexpr (std::is_same_v<T, IncDecStmt>) {
                walk_expr_impl(node.target, fn);
            } else if constexpr (std::is_same_v<T, CompoundAssignStmt>) {
                walk_expr_impl(node.target, fn);
                walk_expr_impl(node.value, fn);
            } else if constexpr (std::is_same_v<T, AssertStmt>) {
                for (auto& e : node.args) walk_expr_impl(e, fn);
            }
        },
        stmt.node);
}

}  // namespace

void walk_stmts(const Block& block, const std::function<void(const Stmt&)>& fn) {
    for (const auto& s : block.stmts) walk_stmt_impl(s, fn);
}

void walk_stmts(Block& block, const std::function<void(Stmt&)>& fn) {
    for (auto& s : block.stmts) walk_stmt_impl(s, fn);
}

void walk_exprs(const Stmt& stmt, const std::function<void(const Expr&)>& fn) {
    walk_stmt_exprs_impl(stmt, fn);
}

void walk_exprs(Stmt& stmt, const std::function<void(Expr&)>& fn) {
    walk_stmt_exprs_impl(stmt, fn);
}

void walk_exprs(const Expr& expr, const std::function<void(const Expr&)>& fn) {
    walk_expr_impl(expr, fn);
}

void walk_exprs(Expr& expr, const std::function<void(Expr&)>& fn) {
    walk_expr_impl(expr, fn);
}

}  // namespace mutmj
