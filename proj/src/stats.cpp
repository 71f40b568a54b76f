#include "mutmj/stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mutmj {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Exact null distribution of 2*W+ over all sign assignments, via counting
// DP on doubled ranks (doubling keeps mid-ranks integral).
std::vector<double> wplus_distribution(const std::vector<long long>& doubled_ranks) {
    long long total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0LL);
    std::vector<double> counts(static_cast<size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    for (long long r : doubled_ranks) {
        for (long long s = total - r; s >= 0; s--) {
            if (counts[static_cast<size_t>(s)] != 0.0)
                counts[static_cast<size_t>(s + r)] += counts[static_cast<size_t>(s)];
        }
    }
    return counts;
}

}  // namespace

std::vector<double> midranks(const std::vector<double>& xs) {
    size_t n = xs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) j++;
        double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; k++) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double a12(const std::vector<double>& sample_a, const std::vector<double>& sample_b) {
    if (sample_a.empty() || sample_b.empty())
        throw std::invalid_argument("a12: samples must be non-empty");
    size_t m = sample_a.size(), n = sample_b.size();
    std::vector<double> combined;
    combined.reserve(m + n);
    combined.insert(combined.end(), sample_a.begin(), sample_a.end());
    combined.insert(combined.end(), sample_b.begin(), sample_b.end());
    std::vector<double> ranks = midranks(combined);
    double r1 = 0.0;
    for (size_t i = 0; i < m; i++) r1 += ranks[i];
    double md = static_cast<double>(m);
    return (r1 - md * (md + 1.0) / 2.0) / (md * static_cast<double>(n));
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wilcoxon: paired samples must have equal length");
    WilcoxonResult result;

    std::vector<double> diffs;
    for (size_t i = 0; i < a.size(); i++) {
        double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    result.n_effective = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        result.degenerate = true;
        result.p_two_sided = 1.0;
        result.p_one_sided = 1.0;
        return result;
    }

    std::vector<double> abs_diffs(diffs.size());
    for (size_t i = 0; i < diffs.size(); i++) abs_diffs[i] = std::fabs(diffs[i]);
    std::vector<double> ranks = midranks(abs_diffs);

    for (size_t i = 0; i < diffs.size(); i++) {
        if (diffs[i] > 0)
            result.w_plus += ranks[i];
        else
            result.w_minus += ranks[i];
    }
    result.w_statistic = std::min(result.w_plus, result.w_minus);

    int n = result.n_effective;
    if (n <= kWilcoxonExactThreshold) {
        result.exact = true;
        std::vector<long long> doubled(ranks.size());
        for (size_t i = 0; i < ranks.size(); i++)
            doubled[i] = static_cast<long long>(std::llround(ranks[i] * 2.0));
        std::vector<double> counts = wplus_distribution(doubled);
        long long total = std::accumulate(doubled.begin(), doubled.end(), 0LL);
        double denom = std::pow(2.0, n);
        long long w2 = static_cast<long long>(std::llround(result.w_statistic * 2.0));
        double low_tail = 0.0, high_tail = 0.0;
        for (long long s = 0; s <= total; s++) {
            double c = counts[static_cast<size_t>(s)];
            if (s <= w2) low_tail += c;
            if (s >= total - w2) high_tail += c;
        }
        result.p_two_sided = std::min(1.0, (low_tail + high_tail) / denom);

        long long wp2 = static_cast<long long>(std::llround(result.w_plus * 2.0));
        double tail = 0.0;
        if (result.w_plus >= result.w_minus) {
            for (long long s = wp2; s <= total; s++) tail += counts[static_cast<size_t>(s)];
        } else {
            for (long long s = 0; s <= wp2; s++) tail += counts[static_cast<size_t>(s)];
        }
        result.p_one_sided = std::min(1.0, tail / denom);
        return result;
    }

    // Normal approximation with tie correction and continuity correction.
    double nd = static_cast<double>(n);
    double mean = nd * (nd + 1.0) / 4.0;
    double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
    std::map<double, long> tie_groups;
    for (double r : abs_diffs) tie_groups[r]++;
    for (const auto& [value, count] : tie_groups) {
        double t = static_cast<double>(count);
        var -= (t * t * t - t) / 48.0;
    }
    double z = (result.w_statistic - mean + 0.5) / std::sqrt(var);
    result.p_two_sided = std::min(1.0, 2.0 * normal_cdf(z));
    result.p_one_sided = std::min(1.0, normal_cdf(z));
    return result;
}

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("spearman: vectors must be equally sized with length >= 3");
    SpearmanResult result;
    std::vector<double> rx = midranks(x);
    std::vector<double> ry = midranks(y);
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); i++) {
        double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        result.defined = false;
        result.rho = 0.0;
        return result;
    }
    result.rho = sxy / std::sqrt(sxx * syy);
    return result;
}

OperatorTable operator_table(const std::vector<MutationReport>& reports) {
    OperatorTable table;
    std::map<MutationOperator, OperatorRow> rows;
    for (const auto& report : reports) {
        for (const auto& r : report.per_operator) {
            OperatorRow& row = rows[r.op];
            row.op = r.op;
            row.killed += r.killed;
            row.live += r.live;
            row.no_coverage += r.no_coverage;
            row.total += r.total;
        }
    }
    for (auto& [op, row] : rows) {
        if (row.total == 0) continue;
        row.killing_ratio = mutation_score_percent(row.killed, row.total);
        table.rows.push_back(row);
        table.summary.killed += row.killed;
        table.summary.live += row.live;
        table.summary.no_coverage += row.no_coverage;
        table.summary.total += row.total;
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const OperatorRow& a, const OperatorRow& b) {
        if (a.total != b.total) return a.total > b.total;
        return static_cast<int>(a.op) < static_cast<int>(b.op);
    });
    table.summary.killing_ratio = mutation_score_percent(table.summary.killed,
                                                         table.summary.total);
    return table;
}

std::string operator_table_markdown(const OperatorTable& table) {
    auto pct = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f%%", round1(v));
        return std::string(buf);
    };
    std::string out = "| Operator | K | L | NoCOV | Total | Killing ratio |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const auto& row : table.rows) {
        out += "| " + operator_id(row.op) + " | " + std::to_string(row.killed) + " | " +
               std::to_string(row.live) + " | " + std::to_string(row.no_coverage) + " | " +
               std::to_string(row.total) + " | " + pct(row.killing_ratio) + " |\n";
    }
    out += "| Summary | " + std::to_string(table.summary.killed) + " | " +
           std::to_string(table.summary.live) + " | " + std::to_string(table.summary.no_coverage) +
           " | " + std::to_string(table.summary.total) + " | " + pct(table.summary.killing_ratio) +
           " |\n";
    return out;
}

nlohmann::json operator_table_json(const OperatorTable& table) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        j["rows"].push_back({{"operator", operator_id(row.op)},
                             {"killed", row.killed},
                             {"live", row.live},
                             {"no_coverage", row.no_coverage},
                             {"total", row.total},
                             {"killing_ratio", round1(row.killing_ratio)}});
    }
    j["summary"] = {{"killed", table.summary.killed},
                    {"live", table.summary.live},
                    {"no_coverage", table.summary.no_coverage},
                    {"total", table.summary.total},
                    {"killing_ratio", round1(table.summary.killing_ratio)}};
    return j;
}

}  // namespace mutmj
