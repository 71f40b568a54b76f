#pragma once

#include <string>
#include <vector>

#include "mutmj/harness.hpp"
#include "mutmj/mutation.hpp"

namespace mutmj::testing {

// Brute-force mutant classification: executes every (test, mutant) pair
// directly through the interpreter and compares outcomes against the
// original run. Independent of the harness's kill matrix and coverage
// shortcuts.
std::vector<MutantStatus> oracle_statuses(const Program& program,
                                          const std::vector<Mutant>& mutants,
                                          const std::vector<TestCase>& suite,
                                          long long budget = kDefaultStepBudget);

// O(n*m) pairwise A12.
double oracle_a12(const std::vector<double>& a, const std::vector<double>& b);

struct OracleWilcoxon {
    double p_two_sided;
    double p_one_sided;
    double w_statistic;
};

// Full 2^n sign-assignment enumeration (n <= ~20).
OracleWilcoxon oracle_wilcoxon(const std::vector<double>& a, const std::vector<double>& b);

// Mid-rank Spearman via a counting-based rank assignment (no shared code
// with the production midranks).
double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mutmj::testing
