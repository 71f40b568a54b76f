#include "mutmj/interp.hpp"

#include <cassert>
#include <cstdint>
#include <map>

#include "mutmj/printer.hpp"

namespace mutmj {

bool value_equals(const Value& a, const Value& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& av) -> bool {
            using T = std::decay_t<decltype(av)>;
            const auto& bv = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, Value::IntArr> || std::is_same_v<T, Value::StrArr>) {
                return *av == *bv;
            } else if constexpr (std::is_same_v<T, std::monostate>) {
                return true;
            } else {
                return av == bv;
            }
        },
        a.v);
}

std::string render_value(const Value& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "void";
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, NullV>) {
                return "null";
            } else if constexpr (std::is_same_v<T, Value::IntArr>) {
                std::string out = "[";
                for (size_t i = 0; i < v->size(); i++) {
                    if (i) out += ", ";
                    out += std::to_string((*v)[i]);
                }
                return out + "]";
            } else {
                std::string out = "[";
                for (size_t i = 0; i < v->size(); i++) {
                    if (i) out += ", ";
                    out += (*v)[i];
                }
                return out + "]";
            }
        },
        value.v);
}

Expr value_to_literal(const Value& value, int line) {
    Expr e;
    e.line = line;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, long long>) {
                if (v < 0) {
                    Expr inner;
                    inner.line = line;
                    inner.node = IntLit{-v};
                    e.node = UnaryExpr{UnOp::Neg, Box<Expr>(std::move(inner))};
                } else {
                    e.node = IntLit{v};
                }
            } else if constexpr (std::is_same_v<T, bool>) {
                e.node = BoolLit{v};
            } else if constexpr (std::is_same_v<T, std::string>) {
                e.node = StrLit{v};
            } else if constexpr (std::is_same_v<T, NullV>) {
                e.node = NullLit{};
            } else if constexpr (std::is_same_v<T, Value::IntArr>) {
                ArrayLit lit;
                for (long long x : *v) lit.elements.push_back(value_to_literal(Value::of_int(x), line));
                e.node = std::move(lit);
            } else if constexpr (std::is_same_v<T, Value::StrArr>) {
                ArrayLit lit;
                for (const auto& s : *v)
                    lit.elements.push_back(value_to_literal(Value::of_str(s), line));
                e.node = std::move(lit);
            } else {
                e.node = NullLit{};  // unit has no literal; unreachable for asserts
            }
        },
        value.v);
    return e;
}

namespace {

struct RuntimeSignal {
    RuntimeErr error;
};
struct BudgetSignal {};
struct AssertSignal {
    AssertFailureInfo info;
};

class Interpreter {
public:
    Interpreter(const Program& program, long long budget)
        : program_(program), budget_(budget) {
        for (const auto& fn : program.functions) fns_[fn.name] = &fn;
    }

    Value call_function(const Function& fn, std::vector<Value> args, int call_line) {
        if (depth_ >= kMaxCallDepth)
            throw RuntimeSignal{{"stack-overflow", call_line, "call depth limit exceeded"}};
        depth_++;
        scopes_stack_.emplace_back();
        push_scope();
        for (size_t i = 0; i < fn.params.size(); i++) define(fn.params[i].name, std::move(args[i]));
        std::optional<Value> ret;
        for (const auto& s : fn.body.stmts) {
            if (exec_stmt(s, ret)) break;
        }
        pop_frame();
        depth_--;
        if (!ret) {
            if (fn.return_type == Type::void_()) return Value::unit();
            throw RuntimeSignal{{"missing-return", fn.line,
                                 "function '" + fn.name + "' ended without returning a value"}};
        }
        return std::move(*ret);
    }

    void run_test_body(const Block& body) {
        scopes_stack_.emplace_back();
        push_scope();
        std::optional<Value> ret;
        for (const auto& s : body.stmts) {
            if (exec_stmt(s, ret)) break;
        }
        pop_frame();
    }

    long long steps() const { return steps_; }
    const std::set<int>& covered_lines() const { return covered_lines_; }
    const BranchSet& covered_branches() const { return covered_branches_; }
    std::string take_printed() { return std::move(printed_); }

private:
    using Scope = std::map<std::string, Value>;

    void push_scope() { scopes_stack_.back().emplace_back(); }
    void pop_scope() { scopes_stack_.back().pop_back(); }
    void pop_frame() { scopes_stack_.pop_back(); }

    void define(const std::string& name, Value v) {
        scopes_stack_.back().back()[name] = std::move(v);
    }

    Value* find(const std::string& name) {
        auto& scopes = scopes_stack_.back();
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;  // type checker rules this out
    }

    void tick() {
        steps_++;
        if (steps_ > budget_) {
            steps_ = budget_;
            throw BudgetSignal{};
        }
    }

    void cover_line(int line) {
        if (depth_ > 0) covered_lines_.insert(line);
    }
    void cover_branch(int line, bool taken) {
        if (depth_ > 0) covered_branches_.insert({line, taken ? 1 : 0});
    }

    // returns true when a `return` unwound to the caller
    bool exec_stmt(const Stmt& s, std::optional<Value>& ret) {
        tick();
        if (!std::holds_alternative<BlockStmt>(s.node)) cover_line(s.line);
        return std::visit(
            [&](const auto& node) -> bool {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, VarDeclStmt>) {
                    Value v = node.init ? eval(*node.init) : default_value(node.decl_type);
                    define(node.name, std::move(v));
                    return false;
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    assign(node.target, eval(node.value));
                    return false;
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    bool cond = truth(eval(node.cond));
                    cover_branch(s.line, cond);
                    if (cond) return exec_nested(*node.then_branch, ret);
                    if (node.else_branch) return exec_nested(**node.else_branch, ret);
                    return false;
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    while (true) {
                        tick();
                        bool cond = truth(eval(node.cond));
                        cover_branch(s.line, cond);
                        if (!cond) return false;
                        if (exec_nested(*node.body, ret)) return true;
                    }
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    ret = node.value ? eval(*node.value) : Value::unit();
                    return true;
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    eval(node.expr);
                    return false;
                } else if constexpr (std::is_same_v<T, IncDecStmt>) {
                    Value cur = eval(node.target);
                    long long x = std::get<long long>(cur.v);
                    long long next = wrap_add(x, node.increment ? 1 : -1);
                    assign(node.target, Value::of_int(next));
                    return false;
                } else if constexpr (std::is_same_v<T, CompoundAssignStmt>) {
                    Value cur = eval(node.target);
                    Value rhs = eval(node.value);
                    Value result;
                    if (std::holds_alternative<std::string>(cur.v)) {
                        result = Value::of_str(std::get<std::string>(cur.v) +
                                               std::get<std::string>(rhs.v));
                    } else {
                        long long a = std::get<long long>(cur.v);
                        long long b = std::get<long long>(rhs.v);
                        result = Value::of_int(node.add ? wrap_add(a, b) : wrap_sub(a, b));
                    }
                    assign(node.target, std::move(result));
                    return false;
                } else if constexpr (std::is_same_v<T, BlockStmt>) {
                    push_scope();
                    bool returned = false;
                    for (const auto& inner : node.block.stmts) {
                        if (exec_stmt(inner, ret)) {
                            returned = true;
                            break;
                        }
                    }
                    pop_scope();
                    return returned;
                } else {
                    static_assert(std::is_same_v<T, AssertStmt>);
                    exec_assert(s, node);
                    return false;
                }
            },
            s.node);
    }

    bool exec_nested(const Stmt& s, std::optional<Value>& ret) {
        // branch bodies that are plain blocks get their scope from BlockStmt
        return exec_stmt(s, ret);
    }

    void exec_assert(const Stmt& s, const AssertStmt& node) {
        if (node.kind == AssertKind::Equals) {
            Value expected = eval(node.args[0]);
            Value actual = eval(node.args[1]);
            if (!value_equals(expected, actual)) {
                throw AssertSignal{AssertFailureInfo{AssertKind::Equals, s.line, s.id,
                                                     std::move(expected), std::move(actual)}};
            }
            return;
        }
        bool want = node.kind == AssertKind::True;
        Value got = eval(node.args[0]);
        if (truth(got) != want) {
            throw AssertSignal{AssertFailureInfo{node.kind, s.line, s.id, std::nullopt,
                                                 std::move(got)}};
        }
    }

    void assign(const Expr& target, Value v) {
        if (const auto* var = std::get_if<VarRef>(&target.node)) {
            Value* slot = find(var->name);
            assert(slot);
            *slot = std::move(v);
            return;
        }
        const auto& idx = std::get<IndexExpr>(target.node);
        Value arr = eval(*idx.array);
        long long i = index_value(eval(*idx.index), target.line, arr);
        if (auto* ia = std::get_if<Value::IntArr>(&arr.v)) {
            (**ia)[static_cast<size_t>(i)] = std::get<long long>(v.v);
        } else {
            auto& sa = std::get<Value::StrArr>(arr.v);
            (*sa)[static_cast<size_t>(i)] = std::get<std::string>(v.v);
        }
    }

    static bool truth(const Value& v) { return std::get<bool>(v.v); }

    static long long wrap_add(long long a, long long b) {
        return static_cast<long long>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
    }
    static long long wrap_sub(long long a, long long b) {
        return static_cast<long long>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
    }
    static long long wrap_mul(long long a, long long b) {
        return static_cast<long long>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
    }

    long long index_value(const Value& v, int line, const Value& arr) {
        long long i = std::get<long long>(v.v);
        long long len = 0;
        if (const auto* ia = std::get_if<Value::IntArr>(&arr.v))
            len = static_cast<long long>((*ia)->size());
        else if (const auto* sa = std::get_if<Value::StrArr>(&arr.v))
            len = static_cast<long long>((*sa)->size());
        else if (arr.is_null())
            throw RuntimeSignal{{"null-dereference", line, "null dereference"}};
        if (i < 0 || i >= len)
            throw RuntimeSignal{{"index-out-of-bounds", line,
                                 "index " + std::to_string(i) + " out of bounds for length " +
                                     std::to_string(len)}};
        return i;
    }

    static Value default_value(Type t) {
        switch (t.kind) {
            case TypeKind::Int: return Value::of_int(0);
            case TypeKind::Bool: return Value::of_bool(false);
            default: return Value::null();
        }
    }

    Value eval(const Expr& e) {
        tick();
        return std::visit(
            [&](const auto& node) -> Value {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    return Value::of_int(node.value);
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return Value::of_bool(node.value);
                } else if constexpr (std::is_same_v<T, StrLit>) {
                    return Value::of_str(node.value);
                } else if constexpr (std::is_same_v<T, NullLit>) {
                    return Value::null();
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    if (e.type == Type::str_array()) {
                        std::vector<std::string> xs;
                        for (const auto& el : node.elements)
                            xs.push_back(std::get<std::string>(eval(el).v));
                        return Value::of_str_array(std::move(xs));
                    }
                    std::vector<long long> xs;
                    for (const auto& el : node.elements)
                        xs.push_back(std::get<long long>(eval(el).v));
                    return Value::of_int_array(std::move(xs));
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    Value* slot = find(node.name);
                    assert(slot);
                    return *slot;
                } else if constexpr (std::is_same_v<T, IndexExpr>) {
                    Value arr = eval(*node.array);
                    long long i = index_value(eval(*node.index), e.line, arr);
                    if (const auto* ia = std::get_if<Value::IntArr>(&arr.v))
                        return Value::of_int((**ia)[static_cast<size_t>(i)]);
                    const auto& sa = std::get<Value::StrArr>(arr.v);
                    return Value::of_str((*sa)[static_cast<size_t>(i)]);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    return eval_call(e, node);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    Value operand = eval(*node.operand);
                    if (node.op == UnOp::Neg)
                        return Value::of_int(wrap_sub(0, std::get<long long>(operand.v)));
                    return Value::of_bool(!truth(operand));
                } else {
                    static_assert(std::is_same_v<T, BinaryExpr>);
                    return eval_binary(e, node);
                }
            },
            e.node);
    }

    Value eval_call(const Expr& e, const CallExpr& call) {
        if (call.callee == "length") {
            Value v = eval(call.args[0]);
            if (v.is_null())
                throw RuntimeSignal{{"null-dereference", e.line, "null dereference"}};
            if (const auto* s = std::get_if<std::string>(&v.v))
                return Value::of_int(static_cast<long long>(s->size()));
            if (const auto* ia = std::get_if<Value::IntArr>(&v.v))
                return Value::of_int(static_cast<long long>((*ia)->size()));
            return Value::of_int(static_cast<long long>(std::get<Value::StrArr>(v.v)->size()));
        }
        if (call.callee == "split") {
            Value sv = eval(call.args[0]);
            Value sepv = eval(call.args[1]);
            if (sv.is_null() || sepv.is_null())
                throw RuntimeSignal{{"null-dereference", e.line, "null dereference"}};
            return Value::of_str_array(
                split_string(std::get<std::string>(sv.v), std::get<std::string>(sepv.v)));
        }
        if (call.callee == "parseInt") {
            Value sv = eval(call.args[0]);
            if (sv.is_null())
                throw RuntimeSignal{{"null-dereference", e.line, "null dereference"}};
            return parse_int(std::get<std::string>(sv.v), e.line);
        }
        if (call.callee == "print") {
            Value v = eval(call.args[0]);
            printed_ += render_value(v);
            printed_ += '\n';
            return Value::unit();
        }
        std::vector<Value> args;
        args.reserve(call.args.size());
        for (const auto& a : call.args) args.push_back(eval(a));
        const Function* fn = fns_.at(call.callee);
        return call_function(*fn, std::move(args), e.line);
    }

    Value eval_binary(const Expr& e, const BinaryExpr& bin) {
        if (bin.op == BinOp::And) {
            if (!truth(eval(*bin.lhs))) return Value::of_bool(false);
            return Value::of_bool(truth(eval(*bin.rhs)));
        }
        if (bin.op == BinOp::Or) {
            if (truth(eval(*bin.lhs))) return Value::of_bool(true);
            return Value::of_bool(truth(eval(*bin.rhs)));
        }
        Value lhs = eval(*bin.lhs);
        Value rhs = eval(*bin.rhs);
        switch (bin.op) {
            case BinOp::Eq: return Value::of_bool(value_equals(lhs, rhs));
            case BinOp::Ne: return Value::of_bool(!value_equals(lhs, rhs));
            case BinOp::Add:
                if (std::holds_alternative<std::string>(lhs.v))
                    return Value::of_str(std::get<std::string>(lhs.v) +
                                         std::get<std::string>(rhs.v));
                return Value::of_int(
                    wrap_add(std::get<long long>(lhs.v), std::get<long long>(rhs.v)));
            default: break;
        }
        long long a = std::get<long long>(lhs.v);
        long long b = std::get<long long>(rhs.v);
        switch (bin.op) {
            case BinOp::Sub: return Value::of_int(wrap_sub(a, b));
            case BinOp::Mul: return Value::of_int(wrap_mul(a, b));
            case BinOp::Div:
                if (b == 0) throw RuntimeSignal{{"division-by-zero", e.line, "division by zero"}};
                if (a == INT64_MIN && b == -1) return Value::of_int(a);  // Java wraps here
                return Value::of_int(a / b);
            case BinOp::Mod:
                if (b == 0) throw RuntimeSignal{{"division-by-zero", e.line, "division by zero"}};
                if (a == INT64_MIN && b == -1) return Value::of_int(0);
                return Value::of_int(a % b);
            case BinOp::Lt: return Value::of_bool(a < b);
            case BinOp::Le: return Value::of_bool(a <= b);
            case BinOp::Gt: return Value::of_bool(a > b);
            case BinOp::Ge: return Value::of_bool(a >= b);
            default: assert(false); return Value::unit();
        }
    }

    // Java String.split semantics for a literal separator: trailing empty
    // strings are dropped, interior ones kept.
    static std::vector<std::string> split_string(const std::string& s, const std::string& sep) {
        std::vector<std::string> parts;
        if (sep.empty()) {
            for (char c : s) parts.emplace_back(1, c);
            return parts;
        }
        size_t pos = 0;
        while (true) {
            size_t next = s.find(sep, pos);
            if (next == std::string::npos) {
                parts.push_back(s.substr(pos));
                break;
            }
            parts.push_back(s.substr(pos, next - pos));
            pos = next + sep.size();
        }
        if (parts.size() == 1) return parts;  // no match keeps the input, even ""
        while (!parts.empty() && parts.back().empty()) parts.pop_back();
        return parts;
    }

    Value parse_int(const std::string& s, int line) {
        auto bad = [&]() -> RuntimeSignal {
            return RuntimeSignal{{"parse-int", line, "parseInt: invalid input \"" + s + "\""}};
        };
        if (s.empty()) throw bad();
        size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
            if (s.size() == 1) throw bad();
        }
        unsigned long long acc = 0;
        for (; i < s.size(); i++) {
            if (s[i] < '0' || s[i] > '9') throw bad();
            acc = acc * 10 + static_cast<unsigned long long>(s[i] - '0');
            if (acc > (neg ? 9223372036854775808ULL : 9223372036854775807ULL)) throw bad();
        }
        long long out = neg ? static_cast<long long>(-acc) : static_cast<long long>(acc);
        return Value::of_int(out);
    }

    const Program& program_;
    long long budget_;
    long long steps_ = 0;
    int depth_ = 0;
    std::map<std::string, const Function*> fns_;
    std::vector<std::vector<Scope>> scopes_stack_;
    std::set<int> covered_lines_;
    BranchSet covered_branches_;
    std::string printed_;
};

}  // namespace

ExecutionOutcome execute(const Program& program, const std::string& entry,
                         const std::vector<Value>& args, long long budget) {
    ExecutionOutcome outcome;
    Interpreter interp(program, budget);
    const Function* fn = program.find_function(entry);
    assert(fn && "entry function must exist");
    try {
        Value ret = interp.call_function(*fn, args, fn->line);
        outcome.status = ExecStatus::Normal;
        if (!ret.is_unit()) outcome.return_value = std::move(ret);
    } catch (const RuntimeSignal& sig) {
        outcome.status = ExecStatus::RuntimeError;
        outcome.error = sig.error;
    } catch (const BudgetSignal&) {
        outcome.status = ExecStatus::StepBudgetExceeded;
    }
    outcome.covered_lines = interp.covered_lines();
    outcome.covered_branches = interp.covered_branches();
    outcome.steps_used = interp.steps();
    outcome.printed = interp.take_printed();
    return outcome;
}

TestExecOutcome execute_test(const Program& program, const Block& test_body, long long budget) {
    TestExecOutcome outcome;
    Interpreter interp(program, budget);
    try {
        interp.run_test_body(test_body);
        outcome.status = TestExecOutcome::Status::Pass;
    } catch (const AssertSignal& sig) {
        outcome.status = TestExecOutcome::Status::AssertionFailure;
        outcome.assertion = sig.info;
    } catch (const RuntimeSignal& sig) {
        outcome.status = TestExecOutcome::Status::RuntimeError;
        outcome.error = sig.error;
    } catch (const BudgetSignal&) {
        outcome.status = TestExecOutcome::Status::Timeout;
    }
    outcome.covered_lines = interp.covered_lines();
    outcome.covered_branches = interp.covered_branches();
    outcome.steps_used = interp.steps();
    outcome.printed = interp.take_printed();
    return outcome;
}

std::set<int> executable_lines(const Program& program) {
    std::set<int> lines;
    for (const auto& fn : program.functions) {
        walk_stmts(fn.body, [&](const Stmt& s) {
            if (!std::holds_alternative<BlockStmt>(s.node)) lines.insert(s.line);
        });
    }
    return lines;
}

BranchSet branch_universe(const Program& program) {
    BranchSet branches;
    for (const auto& fn : program.functions) {
        walk_stmts(fn.body, [&](const Stmt& s) {
            if (std::holds_alternative<IfStmt>(s.node) ||
                std::holds_alternative<WhileStmt>(s.node)) {
                branches.insert({s.line, 0});
                branches.insert({s.line, 1});
            }
        });
    }
    return branches;
}

}  // namespace mutmj
