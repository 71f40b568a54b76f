#include "mutmj/typecheck.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "mutmj/parser.hpp"

namespace mutmj {

namespace {

struct TypeFail {
    ParseError error;
};

std::string located(int line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    return os.str();
}

[[noreturn]] void fail(int line, const std::string& msg,
                       ParseErrorKind kind = ParseErrorKind::Type) {
    throw TypeFail{ParseError{kind, line, 0, located(line, msg)}};
}

struct FnSig {
    std::vector<Type> params;
    Type return_type;
};

class Checker {
public:
    explicit Checker(const Program& program) {
        for (const auto& fn : program.functions) {
            if (fns_.count(fn.name))
                fail(fn.line, "method is already defined: '" + fn.name + "'",
                     ParseErrorKind::DuplicateFunction);
            FnSig sig;
            for (const auto& p : fn.params) sig.params.push_back(p.type);
            sig.return_type = fn.return_type;
            fns_[fn.name] = std::move(sig);
        }
    }

    void check_function(Function& fn) {
        scopes_.clear();
        push_scope();
        for (const auto& p : fn.params) declare(fn.line, p.name, p.type);
        return_type_ = fn.return_type;
        check_block(fn.body);
        pop_scope();
    }

    void check_test_body(Block& body) {
        scopes_.clear();
        push_scope();
        return_type_ = Type::void_();
        check_block(body);
        pop_scope();
    }

private:
    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() { scopes_.pop_back(); }

    void declare(int line, const std::string& name, Type type) {
        auto& scope = scopes_.back();
        if (scope.count(name)) fail(line, "variable '" + name + "' is already defined");
        scope[name] = type;
    }

    std::optional<Type> lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return found->second;
        }
        return std::nullopt;
    }

    void check_block(Block& block) {
        push_scope();
        for (auto& s : block.stmts) check_stmt(s);
        pop_scope();
    }

    // `expected` drives typing of `null` and `[]` literals.
    Type check_expr(Expr& e, std::optional<Type> expected = std::nullopt) {
        Type t = infer(e, expected);
        e.type = t;
        return t;
    }

    Type infer(Expr& e, std::optional<Type> expected) {
        return std::visit(
            [&](auto& node) -> Type {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    return Type::int_();
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return Type::bool_();
                } else if constexpr (std::is_same_v<T, StrLit>) {
                    return Type::string_();
                } else if constexpr (std::is_same_v<T, NullLit>) {
                    if (expected && expected->is_nullable()) return *expected;
                    return Type::null_();
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    return infer_array(e.line, node, expected);
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    auto t = lookup(node.name);
                    if (!t) fail(e.line, "unknown variable '" + node.name + "'");
                    return *t;
                } else if constexpr (std::is_same_v<T, IndexExpr>) {
                    Type arr = check_expr(*node.array);
                    Type idx = check_expr(*node.index);
                    if (idx != Type::int_()) fail(e.line, "array index must be int");
                    if (arr == Type::int_array()) return Type::int_();
                    if (arr == Type::str_array()) return Type::string_();
                    fail(e.line, "cannot index a value of type " + type_name(arr));
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    return infer_call(e.line, node);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    Type operand = check_expr(*node.operand);
                    if (node.op == UnOp::Neg) {
                        if (operand != Type::int_()) fail(e.line, "unary '-' needs an int operand");
                        return Type::int_();
                    }
                    if (operand != Type::bool_()) fail(e.line, "'!' needs a bool operand");
                    return Type::bool_();
                } else {
                    static_assert(std::is_same_v<T, BinaryExpr>);
                    return infer_binary(e.line, node);
                }
            },
            e.node);
    }

    Type infer_array(int line, ArrayLit& lit, std::optional<Type> expected) {
        if (lit.elements.empty()) {
            if (expected && expected->is_array()) return *expected;
            fail(line, "cannot infer the type of an empty array literal here");
        }
        Type elem = check_expr(lit.elements[0]);
        for (size_t i = 1; i < lit.elements.size(); i++) {
            Type t = check_expr(lit.elements[i]);
            if (t != elem) fail(line, "array literal elements must share one type");
        }
        if (elem == Type::int_()) return Type::int_array();
        if (elem == Type::string_()) return Type::str_array();
        fail(line, "array literals hold ints or strings only");
    }

    Type infer_call(int line, CallExpr& call) {
        if (call.callee == "length") {
            require_args(line, call, 1);
            Type t = check_expr(call.args[0]);
            if (t != Type::string_() && !t.is_array())
                fail(line, "length() needs a string or array argument");
            return Type::int_();
        }
        if (call.callee == "split") {
            require_args(line, call, 2);
            if (check_expr(call.args[0]) != Type::string_() ||
                check_expr(call.args[1]) != Type::string_())
                fail(line, "split() needs two string arguments");
            return Type::str_array();
        }
        if (call.callee == "parseInt") {
            require_args(line, call, 1);
            if (check_expr(call.args[0]) != Type::string_())
                fail(line, "parseInt() needs a string argument");
            return Type::int_();
        }
        if (call.callee == "print") {
            require_args(line, call, 1);
            Type t = check_expr(call.args[0]);
            if (t == Type::void_()) fail(line, "cannot print a void value");
            return Type::void_();
        }
        auto it = fns_.find(call.callee);
        if (it == fns_.end()) fail(line, "unknown function '" + call.callee + "'");
        const FnSig& sig = it->second;
        if (call.args.size() != sig.params.size())
            fail(line, "'" + call.callee + "' takes " + std::to_string(sig.params.size()) +
                           " argument(s), got " + std::to_string(call.args.size()));
        for (size_t i = 0; i < call.args.size(); i++) {
            Type t = check_expr(call.args[i], sig.params[i]);
            if (!assignable(sig.params[i], t))
                fail(line, "argument " + std::to_string(i + 1) + " of '" + call.callee +
                               "' expects " + type_name(sig.params[i]) + ", got " + type_name(t));
        }
        return sig.return_type;
    }

    Type infer_binary(int line, BinaryExpr& bin) {
        switch (bin.op) {
            case BinOp::And:
            case BinOp::Or: {
                if (check_expr(*bin.lhs) != Type::bool_() ||
                    check_expr(*bin.rhs) != Type::bool_())
                    fail(line, "'&&'/'||' need bool operands");
                return Type::bool_();
            }
            case BinOp::Eq:
            case BinOp::Ne: {
                Type lt = check_expr(*bin.lhs);
                Type rt = check_expr(*bin.rhs, lt == Type::null_() ? std::nullopt
                                                                   : std::optional<Type>(lt));
                if (lt == Type::null_() && rt.is_nullable()) {
                    check_expr(*bin.lhs, rt);  // re-type the null side
                    return Type::bool_();
                }
                if (!comparable(lt, rt))
                    fail(line, "cannot compare " + type_name(lt) + " with " + type_name(rt));
                return Type::bool_();
            }
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge: {
                if (check_expr(*bin.lhs) != Type::int_() || check_expr(*bin.rhs) != Type::int_())
                    fail(line, "relational operators need int operands");
                return Type::bool_();
            }
            case BinOp::Add: {
                Type lt = check_expr(*bin.lhs);
                Type rt = check_expr(*bin.rhs);
                if (lt == Type::int_() && rt == Type::int_()) return Type::int_();
                if (lt == Type::string_() && rt == Type::string_()) return Type::string_();
                fail(line, "'+' needs two ints or two strings");
            }
            default: {
                if (check_expr(*bin.lhs) != Type::int_() || check_expr(*bin.rhs) != Type::int_())
                    fail(line, "arithmetic needs int operands");
                return Type::int_();
            }
        }
    }

    void require_args(int line, const CallExpr& call, size_t n) {
        if (call.args.size() != n)
            fail(line, call.callee + "() takes " + std::to_string(n) + " argument(s)");
    }

    static bool assignable(Type slot, Type value) {
        if (slot == value) return true;
        return value == Type::null_() && slot.is_nullable();
    }

    static bool comparable(Type a, Type b) {
        if (a == Type::void_() || b == Type::void_()) return false;
        if (a == b) return true;
        if (a == Type::null_() && b.is_nullable()) return true;
        if (b == Type::null_() && a.is_nullable()) return true;
        return a == Type::null_() && b == Type::null_();
    }

    void check_stmt(Stmt& s) {
        std::visit(
            [&](auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, VarDeclStmt>) {
                    if (node.init) {
                        Type t = check_expr(*node.init, node.decl_type);
                        if (!assignable(node.decl_type, t))
                            fail(s.line, "cannot initialize " + type_name(node.decl_type) +
                                             " '" + node.name + "' with " + type_name(t));
                    }
                    declare(s.line, node.name, node.decl_type);
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    Type target = check_expr(node.target);
                    Type value = check_expr(node.value, target);
                    if (!assignable(target, value))
                        fail(s.line, "cannot assign " + type_name(value) + " to " +
                                         type_name(target));
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    if (check_expr(node.cond) != Type::bool_())
                        fail(s.line, "if condition must be bool");
                    check_stmt(*node.then_branch);
                    if (node.else_branch) check_stmt(**node.else_branch);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    if (check_expr(node.cond) != Type::bool_())
                        fail(s.line, "while condition must be bool");
                    check_stmt(*node.body);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (return_type_ == Type::void_()) {
                        if (node.value) fail(s.line, "void function cannot return a value");
                    } else {
                        if (!node.value)
                            fail(s.line, "function must return " + type_name(return_type_));
                        Type t = check_expr(*node.value, return_type_);
                        if (!assignable(return_type_, t))
                            fail(s.line, "return type mismatch: expected " +
                                             type_name(return_type_) + ", got " + type_name(t));
                    }
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    check_expr(node.expr);
                } else if constexpr (std::is_same_v<T, IncDecStmt>) {
                    if (check_expr(node.target) != Type::int_())
                        fail(s.line, "'++'/'--' need an int variable");
                } else if constexpr (std::is_same_v<T, CompoundAssignStmt>) {
                    Type target = check_expr(node.target);
                    Type value = check_expr(node.value, target);
                    if (target == Type::int_() && value == Type::int_()) return;
                    if (node.add && target == Type::string_() && value == Type::string_()) return;
                    fail(s.line, "'+='/'-=' type mismatch");
                } else if constexpr (std::is_same_v<T, BlockStmt>) {
                    check_block(node.block);
                } else if constexpr (std::is_same_v<T, AssertStmt>) {
                    if (node.kind == AssertKind::Equals) {
                        Type lt = check_expr(node.args[0]);
                        Type rt = check_expr(node.args[1], lt == Type::null_()
                                                               ? std::nullopt
                                                               : std::optional<Type>(lt));
                        if (lt == Type::null_() && rt.is_nullable())
                            check_expr(node.args[0], rt);
                        else if (!comparable(lt, rt))
                            fail(s.line, "assertEquals cannot compare " + type_name(lt) +
                                             " with " + type_name(rt));
                        if (lt == Type::void_() || rt == Type::void_())
                            fail(s.line, "assertEquals cannot take void values");
                    } else {
                        if (check_expr(node.args[0]) != Type::bool_())
                            fail(s.line, node.kind == AssertKind::True
                                             ? "assertTrue needs a bool argument"
                                             : "assertFalse needs a bool argument");
                    }
                }
            },
            s.node);
    }

    std::map<std::string, FnSig> fns_;
    std::vector<std::map<std::string, Type>> scopes_;
    Type return_type_ = Type::void_();
};

}  // namespace

bool is_builtin(const std::string& name) {
    return name == "length" || name == "split" || name == "parseInt" || name == "print";
}

std::optional<ParseError> typecheck_program(Program& program) {
    try {
        Checker checker(program);
        for (auto& fn : program.functions) {
            if (is_builtin(fn.name))
                fail(fn.line, "'" + fn.name + "' is a builtin and cannot be redefined");
            checker.check_function(fn);
        }
    } catch (const TypeFail& f) {
        return f.error;
    }
    return std::nullopt;
}

std::optional<ParseError> typecheck_test(const Program& program, ParsedTest& test) {
    try {
        Checker checker(program);
        checker.check_test_body(test.body);
    } catch (const TypeFail& f) {
        return f.error;
    }
    return std::nullopt;
}

}  // namespace mutmj
