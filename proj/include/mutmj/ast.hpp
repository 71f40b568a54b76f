#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mutmj {

// Deep-copying heap box so AST nodes keep value semantics.
template <typename T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&& other) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&& other) noexcept = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

private:
    std::unique_ptr<T> ptr_;
};

enum class TypeKind { Int, Bool, String, IntArray, StrArray, Void, Null, Unknown };

struct Type {
    TypeKind kind = TypeKind::Unknown;

    static Type int_() { return {TypeKind::Int}; }
    static Type bool_() { return {TypeKind::Bool}; }
    static Type string_() { return {TypeKind::String}; }
    static Type int_array() { return {TypeKind::IntArray}; }
    static Type str_array() { return {TypeKind::StrArray}; }
    static Type void_() { return {TypeKind::Void}; }
    static Type null_() { return {TypeKind::Null}; }
    static Type unknown() { return {TypeKind::Unknown}; }

    bool is_array() const { return kind == TypeKind::IntArray || kind == TypeKind::StrArray; }
    bool is_nullable() const { return kind == TypeKind::String || is_array(); }

    friend bool operator==(const Type& a, const Type& b) { return a.kind == b.kind; }
    friend bool operator!=(const Type& a, const Type& b) { return a.kind != b.kind; }
};

std::string type_name(Type t);

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnOp { Neg, Not };

bool is_comparison(BinOp op);  // < <= > >= == !=
const char* binop_text(BinOp op);

struct Expr;

struct IntLit { long long value; };
struct BoolLit { bool value; };
struct StrLit { std::string value; };
struct NullLit {};
struct ArrayLit { std::vector<Expr> elements; };
struct VarRef { std::string name; };
struct IndexExpr { Box<Expr> array; Box<Expr> index; };
struct CallExpr { std::string callee; std::vector<Expr> args; };
struct UnaryExpr { UnOp op; Box<Expr> operand; };
struct BinaryExpr { BinOp op; Box<Expr> lhs; Box<Expr> rhs; };

struct Expr {
    int line = 0;
    int id = 0;                 // unique per parsed unit, assigned by the parser
    Type type = Type::unknown();  // filled in by the type checker
    std::variant<IntLit, BoolLit, StrLit, NullLit, ArrayLit, VarRef, IndexExpr, CallExpr,
                 UnaryExpr, BinaryExpr>
        node;
};

struct Stmt;

struct Block { std::vector<Stmt> stmts; };

struct VarDeclStmt { Type decl_type; std::string name; std::optional<Expr> init; };
struct AssignStmt { Expr target; Expr value; };  // target is VarRef or IndexExpr
struct IfStmt { Expr cond; Box<Stmt> then_branch; std::optional<Box<Stmt>> else_branch; };
struct WhileStmt { Expr cond; Box<Stmt> body; };
struct ReturnStmt { std::optional<Expr> value; };
struct ExprStmt { Expr expr; };
struct IncDecStmt { Expr target; bool increment; };             // x++ / x--
struct CompoundAssignStmt { Expr target; bool add; Expr value; };  // += / -=
struct BlockStmt { Block block; };

// Test-suite assertions; only legal inside test bodies.
enum class AssertKind { Equals, True, False };
struct AssertStmt { AssertKind kind; std::vector<Expr> args; };

struct Stmt {
    int line = 0;
    int id = 0;
    std::variant<VarDeclStmt, AssignStmt, IfStmt, WhileStmt, ReturnStmt, ExprStmt, IncDecStmt,
                 CompoundAssignStmt, BlockStmt, AssertStmt>
        node;
};

struct Param {
    Type type;
    std::string name;
};

struct Function {
    std::string name;
    std::vector<Param> params;
    Type return_type;
    Block body;
    int line = 0;
};

struct Program {
    std::string unit_name;
    std::vector<Function> functions;
    std::vector<std::string> source_lines;  // 1-based via index+1

    const Function* find_function(const std::string& name) const {
        for (const auto& f : functions)
            if (f.name == name) return &f;
        return nullptr;
    }
};

// Pre-order traversal helpers. The visitor returns void; statements are
// visited before their children.
void walk_stmts(const Block& block, const std::function<void(const Stmt&)>& fn);
void walk_stmts(Block& block, const std::function<void(Stmt&)>& fn);
void walk_exprs(const Stmt& stmt, const std::function<void(const Expr&)>& fn);
void walk_exprs(Stmt& stmt, const std::function<void(Expr&)>& fn);
void walk_exprs(const Expr& expr, const std::function<void(const Expr&)>& fn);
void walk_exprs(Expr& expr, const std::function<void(Expr&)>& fn);

}  // namespace mutmj
