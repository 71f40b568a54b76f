#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mutmj {

enum class Tok {
    Ident, Int, Str,
    KwInt, KwBool, KwString, KwVoid, KwIf, KwElse, KwWhile, KwFor, KwReturn,
    KwTrue, KwFalse, KwNull, KwTest,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semi,
    Plus, Minus, Star, Slash, Percent,
    Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Not,
    Assign, PlusAssign, MinusAssign, PlusPlus, MinusMinus,
    Eof,
};

struct Token {
    Tok kind;
    std::string text;   // identifier name or decoded string contents
    long long int_value = 0;
    int line = 1;
    int col = 1;
};

struct LexError {
    int line;
    int col;
    std::string message;
};

// Tokenizes MJ source. Comments (// and /* */) are skipped. On failure the
// error is stored in `error` and the token list ends at the offending point.
struct LexResult {
    std::vector<Token> tokens;
    std::optional<LexError> error;
};

LexResult lex(const std::string& source);

}  // namespace mutmj
