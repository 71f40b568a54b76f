#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutmj/ast.hpp"
#include "mutmj/errors.hpp"

namespace mutmj {

struct ParseResult {
    std::optional<Program> program;
    std::optional<ParseError> error;
    bool ok() const { return program.has_value(); }
};

// Parses and type-checks an MJ source unit. Type errors are reported as
// ParseError(Type); duplicate function names as ParseError(DuplicateFunction)
// with a message containing "method is already defined".
ParseResult parse_program(const std::string& source, const std::string& unit_name = "main");

// A single test function from a .mjt suite.
struct ParsedTest {
    std::string name;
    Block body;
    int line = 0;                 // line of `test` keyword within `source`
    std::string source;           // the test's own source slice, lines starting at 1
};

struct SuiteParseResult {
    std::vector<ParsedTest> tests;
    std::optional<ParseError> error;
    bool ok() const { return !error.has_value(); }
};

// Splits a .mjt file into test functions. Each test's `source` slice is
// re-numbered so its own first line is line 1; bodies are parsed but NOT
// type-checked (that happens against a concrete program).
SuiteParseResult parse_suite(const std::string& source);

// Parses one `test name { ... }` definition; body statements may use
// assertEquals / assertTrue / assertFalse. No type checking.
struct TestParseResult {
    std::optional<ParsedTest> test;
    std::optional<ParseError> error;
    bool ok() const { return test.has_value(); }
};
TestParseResult parse_test(const std::string& source);

// Type-checks a test body against a program's function table. Returns an
// error formatted like other compile errors, or nothing on success.
std::optional<ParseError> typecheck_test(const Program& program, ParsedTest& test);

}  // namespace mutmj
