#pragma once

#include <string>
#include <vector>

#include "mutmj/harness.hpp"

namespace mutmj::testing {

std::string fixture_dir();
std::string golden_dir();
std::string read_fixture(const std::string& relative_path);

// Parses fixtures/<name>.mj, aborting the test run on failure.
Program load_program(const std::string& name);

// Loads fixtures/<name>.mjt.
std::vector<TestCase> load_fixture_suite(const std::string& name);

// Parses MJ source inline.
Program parse_or_die(const std::string& source, const std::string& unit = "main");

// Builds a TestCase from inline source.
TestCase make_test(const std::string& source, TestOrigin origin = TestOrigin::Seed);

// All corpus fixture names (fixtures/corpus/<name>.mj with a sibling .mjt).
const std::vector<std::string>& corpus_names();

}  // namespace mutmj::testing
