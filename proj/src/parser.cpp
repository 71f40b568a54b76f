#include "mutmj/parser.hpp"

#include <cassert>
#include <sstream>

#include "mutmj/lexer.hpp"
#include "mutmj/typecheck.hpp"

namespace mutmj {

namespace {

std::string located(int line, int col, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ", col " << col << ": " << msg;
    return os.str();
}

struct ParseFail {
    ParseError error;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, bool test_mode)
        : tokens_(std::move(tokens)), test_mode_(test_mode) {}

    Program parse_unit(const std::string& unit_name, const std::string& source) {
        Program program;
        program.unit_name = unit_name;
        std::string line;
        std::istringstream ss(source);
        while (std::getline(ss, line)) program.source_lines.push_back(line);
        while (!at(Tok::Eof)) program.functions.push_back(parse_function());
        return program;
    }

    ParsedTest parse_test_def() {
        expect(Tok::KwTest, "expected 'test'");
        int line = prev().line;
        std::string name = expect(Tok::Ident, "expected test name").text;
        ParsedTest t;
        t.name = std::move(name);
        t.line = line;
        t.body = parse_block_body();
        return t;
    }

    bool at(Tok kind) const { return tokens_[pos_].kind == kind; }
    const Token& cur() const { return tokens_[pos_]; }

    [[noreturn]] void fail(const Token& tok, const std::string& msg) {
        throw ParseFail{ParseError{ParseErrorKind::Syntax, tok.line, tok.col,
                                   located(tok.line, tok.col, msg)}};
    }

private:
    const Token& prev() const { return tokens_[pos_ - 1]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool match(Tok kind) {
        if (at(kind)) {
            pos_++;
            return true;
        }
        return false;
    }
    const Token& expect(Tok kind, const std::string& msg) {
        if (!at(kind)) fail(cur(), msg);
        return advance();
    }

    int next_id() { return next_id_++; }

    bool at_type() const {
        switch (cur().kind) {
            case Tok::KwInt:
            case Tok::KwBool:
            case Tok::KwString:
            case Tok::KwVoid: return true;
            default: return false;
        }
    }

    Type parse_type() {
        Type base;
        switch (cur().kind) {
            case Tok::KwInt: base = Type::int_(); break;
            case Tok::KwBool: base = Type::bool_(); break;
            case Tok::KwString: base = Type::string_(); break;
            case Tok::KwVoid: base = Type::void_(); break;
            default: fail(cur(), "expected type");
        }
        advance();
        if (match(Tok::LBracket)) {
            expect(Tok::RBracket, "expected ']'");
            if (base == Type::int_()) return Type::int_array();
            if (base == Type::string_()) return Type::str_array();
            fail(prev(), "only int[] and string[] array types exist");
        }
        return base;
    }

    Function parse_function() {
        Function fn;
        fn.return_type = parse_type();
        const Token& name = expect(Tok::Ident, "expected function name");
        fn.name = name.text;
        fn.line = name.line;
        expect(Tok::LParen, "expected '('");
        if (!at(Tok::RParen)) {
            do {
                Param p;
                p.type = parse_type();
                if (p.type == Type::void_()) fail(prev(), "parameter cannot be void");
                p.name = expect(Tok::Ident, "expected parameter name").text;
                fn.params.push_back(std::move(p));
            } while (match(Tok::Comma));
        }
        expect(Tok::RParen, "expected ')'");
        fn.body = parse_block_body();
        return fn;
    }

    Block parse_block_body() {
        expect(Tok::LBrace, "expected '{'");
        Block block;
        while (!at(Tok::RBrace)) {
            if (at(Tok::Eof)) fail(cur(), "unexpected end of input, expected '}'");
            block.stmts.push_back(parse_stmt());
        }
        expect(Tok::RBrace, "expected '}'");
        return block;
    }

    Stmt make_stmt(int line, auto node) {
        Stmt s;
        s.line = line;
        s.id = next_id();
        s.node = std::move(node);
        return s;
    }

    Stmt parse_stmt() {
        const Token& tok = cur();
        switch (tok.kind) {
            case Tok::LBrace: {
                int line = tok.line;
                Block b = parse_block_body();
                return make_stmt(line, BlockStmt{std::move(b)});
            }
            case Tok::KwIf: return parse_if();
            case Tok::KwWhile: return parse_while();
            case Tok::KwFor: return parse_for();
            case Tok::KwReturn: {
                advance();
                ReturnStmt ret;
                if (!at(Tok::Semi)) ret.value = parse_expr();
                expect(Tok::Semi, "expected ';'");
                return make_stmt(tok.line, std::move(ret));
            }
            default:
                if (at_type()) return parse_var_decl();
                return parse_simple_stmt(true);
        }
    }

    Stmt parse_var_decl() {
        int line = cur().line;
        VarDeclStmt decl;
        decl.decl_type = parse_type();
        if (decl.decl_type == Type::void_()) fail(prev(), "cannot declare a void variable");
        decl.name = expect(Tok::Ident, "expected variable name").text;
        if (match(Tok::Assign)) decl.init = parse_expr();
        expect(Tok::Semi, "expected ';'");
        return make_stmt(line, std::move(decl));
    }

    Stmt parse_if() {
        int line = cur().line;
        advance();
        expect(Tok::LParen, "expected '(' after 'if'");
        Expr cond = parse_expr();
        expect(Tok::RParen, "expected ')'");
        Stmt then_branch = parse_stmt();
        IfStmt node{std::move(cond), Box<Stmt>(std::move(then_branch)), std::nullopt};
        if (match(Tok::KwElse)) node.else_branch = Box<Stmt>(parse_stmt());
        return make_stmt(line, std::move(node));
    }

    Stmt parse_while() {
        int line = cur().line;
        advance();
        expect(Tok::LParen, "expected '(' after 'while'");
        Expr cond = parse_expr();
        expect(Tok::RParen, "expected ')'");
        Stmt body = parse_stmt();
        return make_stmt(line, WhileStmt{std::move(cond), Box<Stmt>(std::move(body))});
    }

    // for (init; cond; update) body  desugars to  { init; while (cond) { body; update; } }
    Stmt parse_for() {
        int line = cur().line;
        advance();
        expect(Tok::LParen, "expected '(' after 'for'");
        std::optional<Stmt> init;
        if (!match(Tok::Semi)) {
            init = at_type() ? parse_var_decl() : parse_simple_stmt(true);
        }
        Expr cond;
        if (at(Tok::Semi)) {
            cond.line = cur().line;
            cond.id = next_id();
            cond.node = BoolLit{true};
        } else {
            cond = parse_expr();
        }
        expect(Tok::Semi, "expected ';'");
        std::optional<Stmt> update;
        if (!at(Tok::RParen)) update = parse_simple_stmt(false);
        expect(Tok::RParen, "expected ')'");
        Stmt body = parse_stmt();

        Block loop_body;
        loop_body.stmts.push_back(std::move(body));
        if (update) loop_body.stmts.push_back(std::move(*update));
        Stmt loop_block = make_stmt(line, BlockStmt{std::move(loop_body)});
        Stmt loop = make_stmt(line, WhileStmt{std::move(cond), Box<Stmt>(std::move(loop_block))});

        Block outer;
        if (init) outer.stmts.push_back(std::move(*init));
        outer.stmts.push_back(std::move(loop));
        return make_stmt(line, BlockStmt{std::move(outer)});
    }

    // assignment / compound assignment / increment / call statement
    Stmt parse_simple_stmt(bool want_semi) {
        int line = cur().line;
        if (test_mode_ && at(Tok::Ident)) {
            const std::string& name = cur().text;
            std::optional<AssertKind> kind;
            if (name == "assertEquals") kind = AssertKind::Equals;
            else if (name == "assertTrue") kind = AssertKind::True;
            else if (name == "assertFalse") kind = AssertKind::False;
            if (kind) {
                advance();
                expect(Tok::LParen, "expected '('");
                AssertStmt node{*kind, {}};
                if (!at(Tok::RParen)) {
                    do {
                        node.args.push_back(parse_expr());
                    } while (match(Tok::Comma));
                }
                expect(Tok::RParen, "expected ')'");
                if (want_semi) expect(Tok::Semi, "expected ';'");
                size_t need = *kind == AssertKind::Equals ? 2 : 1;
                if (node.args.size() != need)
                    throw ParseFail{ParseError{ParseErrorKind::Type, line, 1,
                                               located(line, 1, name + " takes " +
                                                                    std::to_string(need) +
                                                                    " argument(s)")}};
                return make_stmt(line, std::move(node));
            }
        }
        Expr first = parse_expr();
        if (match(Tok::Assign)) {
            require_lvalue(first);
            Expr value = parse_expr();
            if (want_semi) expect(Tok::Semi, "expected ';'");
            return make_stmt(line, AssignStmt{std::move(first), std::move(value)});
        }
        if (at(Tok::PlusAssign) || at(Tok::MinusAssign)) {
            bool add = at(Tok::PlusAssign);
            advance();
            require_lvalue(first);
            Expr value = parse_expr();
            if (want_semi) expect(Tok::Semi, "expected ';'");
            return make_stmt(line, CompoundAssignStmt{std::move(first), add, std::move(value)});
        }
        if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
            bool inc = at(Tok::PlusPlus);
            advance();
            require_lvalue(first);
            if (want_semi) expect(Tok::Semi, "expected ';'");
            return make_stmt(line, IncDecStmt{std::move(first), inc});
        }
        if (!std::holds_alternative<CallExpr>(first.node))
            fail(cur(), "only call expressions may stand alone as statements");
        if (want_semi) expect(Tok::Semi, "expected ';'");
        return make_stmt(line, ExprStmt{std::move(first)});
    }

    void require_lvalue(const Expr& e) {
        if (!std::holds_alternative<VarRef>(e.node) && !std::holds_alternative<IndexExpr>(e.node))
            fail(cur(), "left side of assignment must be a variable or index expression");
    }

    Expr make_expr(int line, auto node) {
        Expr e;
        e.line = line;
        e.id = next_id();
        e.node = std::move(node);
        return e;
    }

    Expr parse_expr() { return parse_or(); }

    Expr parse_or() {
        Expr lhs = parse_and();
        while (at(Tok::OrOr)) {
            int line = cur().line;
            advance();
            Expr rhs = parse_and();
            lhs = make_expr(line, BinaryExpr{BinOp::Or, Box<Expr>(std::move(lhs)),
                                             Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_and() {
        Expr lhs = parse_equality();
        while (at(Tok::AndAnd)) {
            int line = cur().line;
            advance();
            Expr rhs = parse_equality();
            lhs = make_expr(line, BinaryExpr{BinOp::And, Box<Expr>(std::move(lhs)),
                                             Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_equality() {
        Expr lhs = parse_relational();
        while (at(Tok::EqEq) || at(Tok::Ne)) {
            BinOp op = at(Tok::EqEq) ? BinOp::Eq : BinOp::Ne;
            int line = cur().line;
            advance();
            Expr rhs = parse_relational();
            lhs = make_expr(line,
                            BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_relational() {
        Expr lhs = parse_additive();
        while (at(Tok::Lt) || at(Tok::Le) || at(Tok::Gt) || at(Tok::Ge)) {
            BinOp op;
            switch (cur().kind) {
                case Tok::Lt: op = BinOp::Lt; break;
                case Tok::Le: op = BinOp::Le; break;
                case Tok::Gt: op = BinOp::Gt; break;
                default: op = BinOp::Ge; break;
            }
            int line = cur().line;
            advance();
            Expr rhs = parse_additive();
            lhs = make_expr(line,
                            BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_additive() {
        Expr lhs = parse_multiplicative();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            int line = cur().line;
            advance();
            Expr rhs = parse_multiplicative();
            lhs = make_expr(line,
                            BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_multiplicative() {
        Expr lhs = parse_unary();
        while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
            BinOp op = at(Tok::Star) ? BinOp::Mul : (at(Tok::Slash) ? BinOp::Div : BinOp::Mod);
            int line = cur().line;
            advance();
            Expr rhs = parse_unary();
            lhs = make_expr(line,
                            BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))});
        }
        return lhs;
    }

    Expr parse_unary() {
        if (at(Tok::Minus) || at(Tok::Not)) {
            UnOp op = at(Tok::Minus) ? UnOp::Neg : UnOp::Not;
            int line = cur().line;
            advance();
            Expr operand = parse_unary();
            return make_expr(line, UnaryExpr{op, Box<Expr>(std::move(operand))});
        }
        return parse_postfix();
    }

    Expr parse_postfix() {
        Expr e = parse_primary();
        while (at(Tok::LBracket)) {
            int line = cur().line;
            advance();
            Expr index = parse_expr();
            expect(Tok::RBracket, "expected ']'");
            e = make_expr(line, IndexExpr{Box<Expr>(std::move(e)), Box<Expr>(std::move(index))});
        }
        return e;
    }

    Expr parse_primary() {
        const Token& tok = cur();
        switch (tok.kind) {
            case Tok::Int: {
                advance();
                return make_expr(tok.line, IntLit{tok.int_value});
            }
            case Tok::Str: {
                advance();
                return make_expr(tok.line, StrLit{tok.text});
            }
            case Tok::KwTrue: advance(); return make_expr(tok.line, BoolLit{true});
            case Tok::KwFalse: advance(); return make_expr(tok.line, BoolLit{false});
            case Tok::KwNull: advance(); return make_expr(tok.line, NullLit{});
            case Tok::LParen: {
                advance();
                Expr e = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return e;
            }
            case Tok::LBracket: {
                advance();
                ArrayLit lit;
                if (!at(Tok::RBracket)) {
                    do {
                        lit.elements.push_back(parse_expr());
                    } while (match(Tok::Comma));
                }
                expect(Tok::RBracket, "expected ']'");
                return make_expr(tok.line, std::move(lit));
            }
            case Tok::Ident: {
                advance();
                if (at(Tok::LParen)) {
                    advance();
                    CallExpr call{tok.text, {}};
                    if (!at(Tok::RParen)) {
                        do {
                            call.args.push_back(parse_expr());
                        } while (match(Tok::Comma));
                    }
                    expect(Tok::RParen, "expected ')'");
                    return make_expr(tok.line, std::move(call));
                }
                return make_expr(tok.line, VarRef{tok.text});
            }
            default: fail(tok, "expected expression");
        }
    }

    std::vector<Token> tokens_;
    bool test_mode_;
    size_t pos_ = 0;
    int next_id_ = 1;
};

std::optional<ParseError> lex_error_to_parse_error(const LexResult& lexed) {
    if (!lexed.error) return std::nullopt;
    return ParseError{ParseErrorKind::Syntax, lexed.error->line, lexed.error->col,
                      located(lexed.error->line, lexed.error->col, lexed.error->message)};
}

}  // namespace

ParseResult parse_program(const std::string& source, const std::string& unit_name) {
    ParseResult result;
    LexResult lexed = lex(source);
    if (auto err = lex_error_to_parse_error(lexed)) {
        result.error = *err;
        return result;
    }
    try {
        Parser parser(std::move(lexed.tokens), /*test_mode=*/false);
        Program program = parser.parse_unit(unit_name, source);
        if (auto err = typecheck_program(program)) {
            result.error = *err;
            return result;
        }
        result.program = std::move(program);
    } catch (const ParseFail& f) {
        result.error = f.error;
    }
    return result;
}

SuiteParseResult parse_suite(const std::string& source) {
    SuiteParseResult result;

    // Slice the file into per-test sources first so each test can be handled
    // (and re-numbered) independently.
    LexResult lexed = lex(source);
    if (auto err = lex_error_to_parse_error(lexed)) {
        result.error = *err;
        return result;
    }
    std::vector<std::string> lines;
    {
        std::istringstream ss(source);
        std::string line;
        while (std::getline(ss, line)) lines.push_back(line);
    }

    const auto& toks = lexed.tokens;
    size_t i = 0;
    while (i < toks.size() && toks[i].kind != Tok::Eof) {
        if (toks[i].kind != Tok::KwTest) {
            result.error = ParseError{ParseErrorKind::Syntax, toks[i].line, toks[i].col,
                                      located(toks[i].line, toks[i].col, "expected 'test'")};
            return result;
        }
        int start_line = toks[i].line;
        // find the matching close brace
        size_t j = i;
        while (j < toks.size() && toks[j].kind != Tok::LBrace) j++;
        int depth = 0;
        int end_line = start_line;
        for (; j < toks.size(); j++) {
            if (toks[j].kind == Tok::LBrace) depth++;
            if (toks[j].kind == Tok::RBrace) {
                depth--;
                if (depth == 0) {
                    end_line = toks[j].line;
                    j++;
                    break;
                }
            }
            if (toks[j].kind == Tok::Eof) {
                result.error = ParseError{ParseErrorKind::Syntax, toks[j].line, toks[j].col,
                                          located(toks[j].line, toks[j].col,
                                                  "unexpected end of input, expected '}'")};
                return result;
            }
        }
        std::string slice;
        for (int l = start_line; l <= end_line && l <= static_cast<int>(lines.size()); l++) {
            slice += lines[l - 1];
            slice += '\n';
        }
        TestParseResult one = parse_test(slice);
        if (!one.ok()) {
            // re-anchor the error to the file's own line numbers
            ParseError err = *one.error;
            err.line += start_line - 1;
            err.message = located(err.line, err.col, err.message.substr(err.message.find(": ") + 2));
            result.error = err;
            return result;
        }
        result.tests.push_back(std::move(*one.test));
        i = j;
    }
    return result;
}

TestParseResult parse_test(const std::string& source) {
    TestParseResult result;
    LexResult lexed = lex(source);
    if (auto err = lex_error_to_parse_error(lexed)) {
        result.error = *err;
        return result;
    }
    try {
        Parser parser(std::move(lexed.tokens), /*test_mode=*/true);
        ParsedTest t = parser.parse_test_def();
        if (!parser.at(Tok::Eof))
            parser.fail(parser.cur(), "unexpected trailing input after test body");
        t.source = source;
        result.test = std::move(t);
    } catch (const ParseFail& f) {
        result.error = f.error;
    }
    return result;
}

}  // namespace mutmj
