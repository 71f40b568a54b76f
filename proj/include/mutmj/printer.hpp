#pragma once

#include <string>

#include "mutmj/ast.hpp"
#include "mutmj/parser.hpp"

namespace mutmj {

// One-line rendering used for mutant statement texts and report snippets.
// Binary operators carry no surrounding spaces; a block with one statement
// renders inline without braces, e.g. `if (day<=1||day>30) return false;`.
std::string render_stmt_compact(const Stmt& stmt);
std::string render_expr(const Expr& expr);

// Multi-line canonical rendering: one simple statement per line, braces
// around every compound body.
std::string render_program(const Program& program);
std::string render_function(const Function& fn);
std::string render_test(const std::string& name, const Block& body);

}  // namespace mutmj
