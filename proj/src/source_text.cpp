#include "mutmj/source_text.hpp"

#include <sstream>
#include <vector>

namespace mutmj {

namespace {

// Walks the source once, handing code and comment characters to separate
// sinks. String literals are respected so "//" inside a string stays code.
template <typename CodeFn, typename CommentFn>
void scan(const std::string& source, CodeFn code, CommentFn comment) {
    size_t i = 0;
    bool in_string = false;
    while (i < source.size()) {
        char c = source[i];
        if (in_string) {
            code(c);
            if (c == '\\' && i + 1 < source.size()) {
                code(source[i + 1]);
                i += 2;
                continue;
            }
            if (c == '"') in_string = false;
            i++;
            continue;
        }
        if (c == '"') {
            in_string = true;
            code(c);
            i++;
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n') comment(source[i++]);
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
            comment(source[i]);
            comment(source[i + 1]);
            i += 2;
            while (i < source.size()) {
                if (source[i] == '*' && i + 1 < source.size() && source[i + 1] == '/') {
                    comment(source[i]);
                    comment(source[i + 1]);
                    i += 2;
                    break;
                }
                comment(source[i++]);
            }
            continue;
        }
        code(c);
        i++;
    }
}

std::string rtrim_lines(const std::string& text) {
    std::string out;
    std::string line;
    auto flush = [&]() {
        size_t end = line.find_last_not_of(" \t");
        out += end == std::string::npos ? "" : line.substr(0, end + 1);
        line.clear();
    };
    for (char c : text) {
        if (c == '\n') {
            flush();
            out += '\n';
        } else {
            line += c;
        }
    }
    flush();
    return out;
}

}  // namespace

std::string strip_comments(const std::string& source) {
    std::string out;
    scan(
        source, [&](char c) { out += c; },
        [&](char c) {
            if (c == '\n') out += '\n';  // keep line structure
        });
    return rtrim_lines(out);
}

std::string extract_comments(const std::string& source) {
    std::string out;
    std::string chunk;
    bool in_chunk = false;
    scan(
        source,
        [&](char) {
            if (in_chunk) {
                out += chunk;
                out += '\n';
                chunk.clear();
                in_chunk = false;
            }
        },
        [&](char c) {
            in_chunk = true;
            chunk += c;
        });
    if (in_chunk) {
        out += chunk;
        out += '\n';
    }
    return out;
}

}  // namespace mutmj
