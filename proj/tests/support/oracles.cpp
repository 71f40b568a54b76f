#include "oracles.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "mutmj/interp.hpp"

namespace mutmj::testing {

namespace {

struct OracleRun {
    bool ok = false;  // compiled and executed
    TestExecOutcome::Status status = TestExecOutcome::Status::Pass;
    std::set<int> covered_lines;
};

OracleRun run_one(const Program& program, const TestCase& test, long long budget) {
    OracleRun out;
    CompiledTest compiled = compile_test(program, test);
    if (!compiled.ok()) return out;
    TestExecOutcome exec = execute_test(program, compiled.parsed->body, budget);
    out.ok = true;
    out.status = exec.status;
    out.covered_lines = exec.covered_lines;
    return out;
}

}  // namespace

std::vector<MutantStatus> oracle_statuses(const Program& program,
                                          const std::vector<Mutant>& mutants,
                                          const std::vector<TestCase>& suite, long long budget) {
    // Original runs first; only passing tests take part (ExeFilter semantics).
    std::vector<const TestCase*> active;
    std::vector<OracleRun> original_runs;
    for (const auto& test : suite) {
        OracleRun run = run_one(program, test, budget);
        if (!run.ok || run.status != TestExecOutcome::Status::Pass) continue;
        active.push_back(&test);
        original_runs.push_back(std::move(run));
    }

    std::vector<MutantStatus> statuses;
    statuses.reserve(mutants.size());
    for (const auto& mutant : mutants) {
        bool killed = false;
        for (size_t t = 0; t < active.size(); t++) {
            OracleRun mutant_run = run_one(mutant.program, *active[t], budget);
            assert(mutant_run.ok);  // mutants are type-preserving
            if (mutant_run.status != original_runs[t].status) {
                killed = true;
                break;
            }
        }
        if (killed) {
            statuses.push_back(MutantStatus::Killed);
            continue;
        }
        bool covered = false;
        for (const auto& run : original_runs)
            if (run.covered_lines.count(mutant.line)) covered = true;
        statuses.push_back(covered ? MutantStatus::Survived : MutantStatus::NoCoverage);
    }
    return statuses;
}

double oracle_a12(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("oracle_a12: empty sample");
    double wins = 0.0;
    for (double x : a) {
        for (double y : b) {
            if (x > y)
                wins += 1.0;
            else if (x == y)
                wins += 0.5;
        }
    }
    return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

OracleWilcoxon oracle_wilcoxon(const std::vector<double>& a, const std::vector<double>& b) {
    assert(a.size() == b.size());
    std::vector<double> abs_diffs;
    std::vector<int> signs;
    for (size_t i = 0; i < a.size(); i++) {
        double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_diffs.push_back(std::fabs(d));
        signs.push_back(d > 0 ? 1 : -1);
    }
    size_t n = abs_diffs.size();
    if (n == 0) return {1.0, 1.0, 0.0};
    assert(n <= 20 && "enumeration oracle is exponential");

    // doubled mid-ranks assigned by counting (independent of stats.cpp)
    std::vector<long long> doubled(n);
    for (size_t i = 0; i < n; i++) {
        long long smaller = 0, equal = 0;
        for (size_t j = 0; j < n; j++) {
            if (abs_diffs[j] < abs_diffs[i]) smaller++;
            if (abs_diffs[j] == abs_diffs[i]) equal++;
        }
        // midrank = smaller + (equal + 1) / 2; doubled keeps it integral
        doubled[i] = 2 * smaller + equal + 1;
    }

    long long total = 0;
    for (long long r : doubled) total += r;
    long long observed_plus = 0;
    for (size_t i = 0; i < n; i++)
        if (signs[i] > 0) observed_plus += doubled[i];
    long long observed_minus = total - observed_plus;
    long long observed_w = std::min(observed_plus, observed_minus);

    long long low = 0, high = 0, ge_plus = 0, le_plus = 0;
    long long assignments = 1LL << n;
    for (long long mask = 0; mask < assignments; mask++) {
        long long w_plus = 0;
        for (size_t i = 0; i < n; i++)
            if (mask & (1LL << i)) w_plus += doubled[i];
        if (w_plus <= observed_w) low++;
        if (w_plus >= total - observed_w) high++;
        if (w_plus >= observed_plus) ge_plus++;
        if (w_plus <= observed_plus) le_plus++;
    }
    OracleWilcoxon result;
    double denom = static_cast<double>(assignments);
    result.p_two_sided = std::min(1.0, (static_cast<double>(low) + static_cast<double>(high)) / denom);
    result.p_one_sided = std::min(
        1.0, static_cast<double>(observed_plus >= observed_minus ? ge_plus : le_plus) / denom);
    result.w_statistic = static_cast<double>(observed_w) / 2.0;
    return result;
}

double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    assert(x.size() == y.size() && x.size() >= 3);
    size_t n = x.size();
    auto counting_ranks = [n](const std::vector<double>& v) {
        std::vector<double> ranks(n);
        for (size_t i = 0; i < n; i++) {
            double smaller = 0.0, equal = 0.0;
            for (size_t j = 0; j < n; j++) {
                if (v[j] < v[i]) smaller += 1.0;
                if (v[j] == v[i]) equal += 1.0;
            }
            ranks[i] = smaller + (equal + 1.0) / 2.0;
        }
        return ranks;
    };
    std::vector<double> rx = counting_ranks(x);
    std::vector<double> ry = counting_ranks(y);
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; i++) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; i++) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace mutmj::testing
