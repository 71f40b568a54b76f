#pragma once

#include <string>

namespace mutmj {

enum class ParseErrorKind { Syntax, Type, DuplicateFunction };

struct ParseError {
    ParseErrorKind kind;
    int line = 0;
    int col = 0;
    std::string message;  // always prefixed with "line L, col C: "

    const char* kind_name() const {
        switch (kind) {
            case ParseErrorKind::Syntax: return "syntax";
            case ParseErrorKind::Type: return "type";
            case ParseErrorKind::DuplicateFunction: return "duplicate-function";
        }
        return "?";
    }
};

}  // namespace mutmj
