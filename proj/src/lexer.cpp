#include "mutmj/lexer.hpp"

#include <cctype>
#include <optional>
#include <unordered_map>

namespace mutmj {

namespace {

const std::unordered_map<std::string, Tok>& keywords() {
    static const std::unordered_map<std::string, Tok> kw = {
        {"int", Tok::KwInt},       {"bool", Tok::KwBool},   {"string", Tok::KwString},
        {"void", Tok::KwVoid},     {"if", Tok::KwIf},       {"else", Tok::KwElse},
        {"while", Tok::KwWhile},   {"for", Tok::KwFor},     {"return", Tok::KwReturn},
        {"true", Tok::KwTrue},     {"false", Tok::KwFalse}, {"null", Tok::KwNull},
        {"test", Tok::KwTest},
    };
    return kw;
}

}  // namespace

LexResult lex(const std::string& source) {
    LexResult result;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&]() {
        if (source[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        i++;
    };
    auto push = [&](Tok kind, std::string text, int tl, int tc) {
        result.tokens.push_back(Token{kind, std::move(text), 0, tl, tc});
    };

    while (i < source.size()) {
        char c = source[i];
        int tl = line, tc = col;
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n') advance();
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
            advance();
            advance();
            bool closed = false;
            while (i < source.size()) {
                if (source[i] == '*' && i + 1 < source.size() && source[i + 1] == '/') {
                    advance();
                    advance();
                    closed = true;
                    break;
                }
                advance();
            }
            if (!closed) {
                result.error = LexError{tl, tc, "unterminated block comment"};
                return result;
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (i < source.size() &&
                   (std::isalnum(static_cast<unsigned char>(source[i])) || source[i] == '_')) {
                ident += source[i];
                advance();
            }
            auto it = keywords().find(ident);
            if (it != keywords().end())
                push(it->second, ident, tl, tc);
            else
                push(Tok::Ident, ident, tl, tc);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < source.size() && std::isdigit(static_cast<unsigned char>(source[i]))) {
                digits += source[i];
                advance();
            }
            Token t{Tok::Int, digits, 0, tl, tc};
            try {
                t.int_value = std::stoll(digits);
            } catch (const std::out_of_range&) {
                result.error = LexError{tl, tc, "integer literal out of range"};
                return result;
            }
            result.tokens.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            advance();
            std::string value;
            bool closed = false;
            while (i < source.size()) {
                char d = source[i];
                if (d == '"') {
                    advance();
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                if (d == '\\' && i + 1 < source.size()) {
                    char e = source[i + 1];
                    advance();
                    advance();
                    switch (e) {
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        case '\\': value += '\\'; break;
                        case '"': value += '"'; break;
                        default:
                            result.error = LexError{tl, tc, std::string("unknown escape '\\") + e + "'"};
                            return result;
                    }
                    continue;
                }
                value += d;
                advance();
            }
            if (!closed) {
                result.error = LexError{tl, tc, "unterminated string literal"};
                return result;
            }
            result.tokens.push_back(Token{Tok::Str, std::move(value), 0, tl, tc});
            continue;
        }

        auto two = [&](char second) {
            return i + 1 < source.size() && source[i + 1] == second;
        };
        switch (c) {
            case '(': push(Tok::LParen, "(", tl, tc); advance(); continue;
            case ')': push(Tok::RParen, ")", tl, tc); advance(); continue;
            case '{': push(Tok::LBrace, "{", tl, tc); advance(); continue;
            case '}': push(Tok::RBrace, "}", tl, tc); advance(); continue;
            case '[': push(Tok::LBracket, "[", tl, tc); advance(); continue;
            case ']': push(Tok::RBracket, "]", tl, tc); advance(); continue;
            case ',': push(Tok::Comma, ",", tl, tc); advance(); continue;
            case ';': push(Tok::Semi, ";", tl, tc); advance(); continue;
            case '%': push(Tok::Percent, "%", tl, tc); advance(); continue;
            case '*': push(Tok::Star, "*", tl, tc); advance(); continue;
            case '/': push(Tok::Slash, "/", tl, tc); advance(); continue;
            case '+':
                if (two('+')) { push(Tok::PlusPlus, "++", tl, tc); advance(); advance(); }
                else if (two('=')) { push(Tok::PlusAssign, "+=", tl, tc); advance(); advance(); }
                else { push(Tok::Plus, "+", tl, tc); advance(); }
                continue;
            case '-':
                if (two('-')) { push(Tok::MinusMinus, "--", tl, tc); advance(); advance(); }
                else if (two('=')) { push(Tok::MinusAssign, "-=", tl, tc); advance(); advance(); }
                else { push(Tok::Minus, "-", tl, tc); advance(); }
                continue;
            case '<':
                if (two('=')) { push(Tok::Le, "<=", tl, tc); advance(); advance(); }
                else { push(Tok::Lt, "<", tl, tc); advance(); }
                continue;
            case '>':
                if (two('=')) { push(Tok::Ge, ">=", tl, tc); advance(); advance(); }
                else { push(Tok::Gt, ">", tl, tc); advance(); }
                continue;
            case '=':
                if (two('=')) { push(Tok::EqEq, "==", tl, tc); advance(); advance(); }
                else { push(Tok::Assign, "=", tl, tc); advance(); }
                continue;
            case '!':
                if (two('=')) { push(Tok::Ne, "!=", tl, tc); advance(); advance(); }
                else { push(Tok::Not, "!", tl, tc); advance(); }
                continue;
            case '&':
                if (two('&')) { push(Tok::AndAnd, "&&", tl, tc); advance(); advance(); continue; }
                result.error = LexError{tl, tc, "unexpected character '&'"};
                return result;
            case '|':
                if (two('|')) { push(Tok::OrOr, "||", tl, tc); advance(); advance(); continue; }
                result.error = LexError{tl, tc, "unexpected character '|'"};
                return result;
            default:
                result.error = LexError{tl, tc, std::string("unexpected character '") + c + "'"};
                return result;
        }
    }
    result.tokens.push_back(Token{Tok::Eof, "", 0, line, col});
    return result;
}

}  // namespace mutmj
