#include "fixtures.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mutmj::testing {

std::string fixture_dir() { return MUTMJ_FIXTURE_DIR; }
std::string golden_dir() { return MUTMJ_GOLDEN_DIR; }

std::string read_fixture(const std::string& relative_path) {
    std::string path = fixture_dir() + "/" + relative_path;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program parse_or_die(const std::string& source, const std::string& unit) {
    ParseResult parsed = parse_program(source, unit);
    if (!parsed.ok()) {
        std::fprintf(stderr, "fixture parse error: %s\n", parsed.error->message.c_str());
        std::abort();
    }
    return std::move(*parsed.program);
}

Program load_program(const std::string& name) {
    return parse_or_die(read_fixture(name + ".mj"), name.substr(name.find_last_of('/') + 1));
}

std::vector<TestCase> load_fixture_suite(const std::string& name) {
    SuiteLoadResult loaded = load_suite(read_fixture(name + ".mjt"));
    if (!loaded.ok()) {
        std::fprintf(stderr, "fixture suite parse error: %s\n", loaded.error->message.c_str());
        std::abort();
    }
    return loaded.tests;
}

TestCase make_test(const std::string& source, TestOrigin origin) {
    TestParseResult parsed = parse_test(source);
    if (!parsed.ok()) {
        std::fprintf(stderr, "inline test parse error: %s\n", parsed.error->message.c_str());
        std::abort();
    }
    TestCase tc;
    tc.name = parsed.test->name;
    tc.source_text = source;
    tc.origin = origin;
    return tc;
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "abs_max",   "arith",   "counter", "voidcalls", "strings",  "arrays",
        "bools",     "divzero", "loops",   "nonterm",   "leapyear", "grades",
    };
    return names;
}

}  // namespace mutmj::testing
