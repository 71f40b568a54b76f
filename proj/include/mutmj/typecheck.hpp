#pragma once

#include <optional>

#include "mutmj/ast.hpp"
#include "mutmj/errors.hpp"

namespace mutmj {

// length, split, parseInt, print
bool is_builtin(const std::string& name);

// Checks the whole unit: duplicate functions, statement/expression types,
// return types. Annotates every Expr with its static type.
std::optional<ParseError> typecheck_program(Program& program);

}  // namespace mutmj
