#include "mutmj/printer.hpp"

#include <sstream>

namespace mutmj {

namespace {

int precedence(BinOp op) {
    switch (op) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq:
        case BinOp::Ne: return 3;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 4;
        case BinOp::Add:
        case BinOp::Sub: return 5;
        default: return 6;
    }
}

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

// parent_prec: precedence of the enclosing operator, 0 at the top.
// `right_side` guards left-associativity and the `a-(-b)` token-merge case.
std::string render_expr_prec(const Expr& e, int parent_prec, bool right_side) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return std::to_string(node.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return node.value ? "true" : "false";
            } else if constexpr (std::is_same_v<T, StrLit>) {
                return escape_string(node.value);
            } else if constexpr (std::is_same_v<T, NullLit>) {
                return "null";
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                std::string out = "[";
                for (size_t i = 0; i < node.elements.size(); i++) {
                    if (i) out += ", ";
                    out += render_expr_prec(node.elements[i], 0, false);
                }
                return out + "]";
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return node.name;
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                return render_expr_prec(*node.array, 7, false) + "[" +
                       render_expr_prec(*node.index, 0, false) + "]";
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                std::string out = node.callee + "(";
                for (size_t i = 0; i < node.args.size(); i++) {
                    if (i) out += ", ";
                    out += render_expr_prec(node.args[i], 0, false);
                }
                return out + ")";
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                std::string inner = render_expr_prec(*node.operand, 7, false);
                std::string out = (node.op == UnOp::Neg ? "-" : "!") + inner;
                // a unary on the right of a binary operator keeps its parens
                // via the caller; standalone unaries never need them
                if (parent_prec >= 7) return "(" + out + ")";
                return out;
            } else {
                static_assert(std::is_same_v<T, BinaryExpr>);
                int prec = precedence(node.op);
                std::string lhs = render_expr_prec(*node.lhs, prec - 1, false);
                std::string rhs = render_expr_prec(*node.rhs, prec, true);
                // `a-(-b)` instead of `a--b`, which would re-lex as a decrement
                if (node.op == BinOp::Sub && !rhs.empty() && rhs[0] == '-')
                    rhs = "(" + rhs + ")";
                std::string out = lhs + binop_text(node.op) + rhs;
                bool need_parens = prec < parent_prec || (prec == parent_prec && right_side);
                if (need_parens) return "(" + out + ")";
                return out;
            }
        },
        e.node);
}

const char* assert_name(AssertKind kind) {
    switch (kind) {
        case AssertKind::Equals: return "assertEquals";
        case AssertKind::True: return "assertTrue";
        case AssertKind::False: return "assertFalse";
    }
    return "?";
}

std::string render_stmt_inline(const Stmt& s);

std::string render_block_inline(const Stmt& s) {
    // A block with exactly one statement renders as that statement alone.
    if (const auto* b = std::get_if<BlockStmt>(&s.node)) {
        if (b->block.stmts.size() == 1) return render_stmt_inline(b->block.stmts[0]);
        std::string out = "{ ";
        for (const auto& inner : b->block.stmts) {
            out += render_stmt_inline(inner);
            out += ' ';
        }
        return out + "}";
    }
    return render_stmt_inline(s);
}

std::string render_stmt_inline(const Stmt& s) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, VarDeclStmt>) {
                std::string out = type_name(node.decl_type) + " " + node.name;
                if (node.init) out += " = " + render_expr(*node.init);
                return out + ";";
            } else if constexpr (std::is_same_v<T, AssignStmt>) {
                return render_expr(node.target) + " = " + render_expr(node.value) + ";";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                std::string out =
                    "if (" + render_expr(node.cond) + ") " + render_block_inline(*node.then_branch);
                if (node.else_branch) out += " else " + render_block_inline(**node.else_branch);
                return out;
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                return "while (" + render_expr(node.cond) + ") " + render_block_inline(*node.body);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (node.value) return "return " + render_expr(*node.value) + ";";
                return "return;";
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                return render_expr(node.expr) + ";";
            } else if constexpr (std::is_same_v<T, IncDecStmt>) {
                return render_expr(node.target) + (node.increment ? "++;" : "--;");
            } else if constexpr (std::is_same_v<T, CompoundAssignStmt>) {
                return render_expr(node.target) + (node.add ? " += " : " -= ") +
                       render_expr(node.value) + ";";
            } else if constexpr (std::is_same_v<T, BlockStmt>) {
                if (node.block.stmts.empty()) return "{ }";
                std::string out = "{ ";
                for (const auto& inner : node.block.stmts) {
                    out += render_stmt_inline(inner);
                    out += ' ';
                }
                return out + "}";
            } else {
                static_assert(std::is_same_v<T, AssertStmt>);
                std::string out = std::string(assert_name(node.kind)) + "(";
                for (size_t i = 0; i < node.args.size(); i++) {
                    if (i) out += ", ";
                    out += render_expr(node.args[i]);
                }
                return out + ");";
            }
        },
        s.node);
}

class LineWriter {
public:
    void line(int indent, const std::string& text) {
        out_.append(static_cast<size_t>(indent) * 4, ' ');
        out_ += text;
        out_ += '\n';
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

void write_stmt(LineWriter& w, const Stmt& s, int indent);

void write_body(LineWriter& w, const Stmt& s, int indent) {
    if (const auto* b = std::get_if<BlockStmt>(&s.node)) {
        for (const auto& inner : b->block.stmts) write_stmt(w, inner, indent);
    } else {
        write_stmt(w, s, indent);
    }
}

void write_if(LineWriter& w, const IfStmt& iff, int indent, bool as_else_if) {
    w.line(indent, std::string(as_else_if ? "} else if (" : "if (") + render_expr(iff.cond) +
                       ") {");
    write_body(w, *iff.then_branch, indent + 1);
    if (iff.else_branch) {
        const Stmt& els = **iff.else_branch;
        if (const auto* nested = std::get_if<IfStmt>(&els.node)) {
            write_if(w, *nested, indent, true);  // the innermost writes the final brace
            return;
        }
        w.line(indent, "} else {");
        write_body(w, els, indent + 1);
    }
    w.line(indent, "}");
}

void write_stmt(LineWriter& w, const Stmt& s, int indent) {
    if (const auto* iff = std::get_if<IfStmt>(&s.node)) {
        write_if(w, *iff, indent, false);
        return;
    }
    if (const auto* wh = std::get_if<WhileStmt>(&s.node)) {
        w.line(indent, "while (" + render_expr(wh->cond) + ") {");
        write_body(w, *wh->body, indent + 1);
        w.line(indent, "}");
        return;
    }
    if (const auto* b = std::get_if<BlockStmt>(&s.node)) {
        w.line(indent, "{");
        for (const auto& inner : b->block.stmts) write_stmt(w, inner, indent + 1);
        w.line(indent, "}");
        return;
    }
    w.line(indent, render_stmt_inline(s));
}

}  // namespace

std::string render_expr(const Expr& expr) { return render_expr_prec(expr, 0, false); }

std::string render_stmt_compact(const Stmt& stmt) { return render_stmt_inline(stmt); }

std::string render_function(const Function& fn) {
    LineWriter w;
    std::string header = type_name(fn.return_type) + " " + fn.name + "(";
    for (size_t i = 0; i < fn.params.size(); i++) {
        if (i) header += ", ";
        header += type_name(fn.params[i].type) + " " + fn.params[i].name;
    }
    header += ") {";
    w.line(0, header);
    for (const auto& s : fn.body.stmts) write_stmt(w, s, 1);
    w.line(0, "}");
    return w.take();
}

std::string render_program(const Program& program) {
    std::string out;
    for (size_t i = 0; i < program.functions.size(); i++) {
        if (i) out += '\n';
        out += render_function(program.functions[i]);
    }
    return out;
}

std::string render_test(const std::string& name, const Block& body) {
    LineWriter w;
    w.line(0, "test " + name + " {");
    for (const auto& s : body.stmts) write_stmt(w, s, 1);
    w.line(0, "}");
    return w.take();
}

}  // namespace mutmj
