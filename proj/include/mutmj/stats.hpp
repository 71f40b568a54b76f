#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mutmj/harness.hpp"

namespace mutmj {

// Mid-ranks (ties averaged), 1-based.
std::vector<double> midranks(const std::vector<double>& xs);

// Vargha-Delaney effect size: (#(a>b) + 0.5*#(a==b)) / (|a|*|b|), computed
// via the rank-sum identity. Both samples must be non-empty.
double a12(const std::vector<double>& sample_a, const std::vector<double>& sample_b);

struct WilcoxonResult {
    double w_statistic = 0.0;  // min(W+, W-)
    double w_plus = 0.0;
    double w_minus = 0.0;
    int n_effective = 0;  // pairs left after dropping zero differences
    double p_two_sided = 1.0;
    double p_one_sided = 1.0;  // tail of the observed direction
    bool exact = false;        // exact enumeration (n <= threshold) vs normal approx
    bool degenerate = false;   // every difference was zero
};

inline constexpr int kWilcoxonExactThreshold = 25;

// Paired signed-rank test. Zero differences are dropped; absolute
// differences are mid-ranked; exact two-sided p for small n, normal
// approximation with tie and continuity correction otherwise.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

struct SpearmanResult {
    double rho = 0.0;
    bool defined = true;  // false when either vector is constant
};

// Rank correlation with mid-rank tie handling. Requires equal lengths >= 3.
SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

struct OperatorTable {
    std::vector<OperatorRow> rows;  // sorted by total desc, then operator order
    OperatorRow summary;            // op field meaningless; column sums
};

// Aggregates per-operator counts across reports; rows with zero totals drop.
OperatorTable operator_table(const std::vector<MutationReport>& reports);

std::string operator_table_markdown(const OperatorTable& table);
nlohmann::json operator_table_json(const OperatorTable& table);

}  // namespace mutmj
