#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mutmj/harness.hpp"
#include "mutmj/llm.hpp"
#include "mutmj/mutation.hpp"
#include "mutmj/pipeline.hpp"
#include "mutmj/repair.hpp"
#include "mutmj/source_text.hpp"
#include "mutmj/stats.hpp"

namespace fs = std::filesystem;
using namespace mutmj;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPipelineFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

std::string unit_name_for(const std::string& path) { return fs::path(path).stem().string(); }

struct BackendOptions {
    std::string backend = "http";  // http | replay
    std::string transcript_path;
    std::string record_path;
    std::string endpoint;
    std::string api_key;
    std::string model = "llama3.3:70b";
    bool strict_replay = false;
};

void add_backend_options(CLI::App* cmd, BackendOptions& opts) {
    cmd->add_option("--backend", opts.backend, "LLM backend: http or replay")
        ->check(CLI::IsMember({"http", "replay"}));
    cmd->add_option("--transcript", opts.transcript_path, "replay transcript JSON file");
    cmd->add_option("--record", opts.record_path, "record all exchanges into this transcript");
    cmd->add_option("--endpoint", opts.endpoint, "chat-completions endpoint, e.g. http://localhost:11434")
        ->envname("MUTMJ_ENDPOINT");
    cmd->add_option("--api-key", opts.api_key, "bearer token")->envname("MUTMJ_API_KEY");
    cmd->add_option("--model", opts.model, "model name")->envname("MUTMJ_MODEL");
    cmd->add_flag("--strict-replay", opts.strict_replay,
                  "verify transcript digests against rendered prompts");
}

std::unique_ptr<LlmBackend> make_backend(const BackendOptions& opts, std::string& error) {
    std::unique_ptr<LlmBackend> backend;
    if (opts.backend == "replay") {
        if (opts.transcript_path.empty()) {
            error = "--backend replay requires --transcript";
            return nullptr;
        }
        backend = std::make_unique<ReplayBackend>(load_transcript(read_file(opts.transcript_path)),
                                                  opts.strict_replay);
    } else {
        if (opts.endpoint.empty()) {
            error = "no endpoint configured (flag --endpoint or MUTMJ_ENDPOINT)";
            return nullptr;
        }
        HttpBackendConfig config;
        config.endpoint = opts.endpoint;
        config.api_key = opts.api_key;
        backend = make_http_backend(config);
    }
    if (!opts.record_path.empty()) backend = std::make_unique<RecordingBackend>(std::move(backend));
    return backend;
}

void flush_recording(LlmBackend* backend, const std::string& record_path) {
    if (record_path.empty()) return;
    if (auto* rec = dynamic_cast<RecordingBackend*>(backend))
        write_file(record_path, transcript_to_json(rec->transcript()));
}

// --- mutate ---------------------------------------------------------------

int cmd_mutate(const std::string& subject_path, const std::string& target,
               const std::string& json_out) {
    std::string source = read_file(subject_path);
    ParseResult parsed = parse_program(source, unit_name_for(subject_path));
    if (!parsed.ok()) {
        std::cerr << "parse error (" << parsed.error->kind_name() << "): " << parsed.error->message
                  << "\n";
        return kExitUsage;
    }
    Program& program = *parsed.program;
    std::string fn = target;
    if (fn.empty()) {
        if (program.functions.size() != 1) {
            std::cerr << "subject has " << program.functions.size()
                      << " functions; choose one with --target\n";
            return kExitUsage;
        }
        fn = program.functions[0].name;
    } else if (!program.find_function(fn)) {
        std::cerr << "target function '" << fn << "' not found\n";
        return kExitUsage;
    }
    std::vector<Mutant> mutants = generate_mutants(program, fn);
    nlohmann::json listing = nlohmann::json::array();
    for (const auto& m : mutants) {
        std::string description = operator_description(m.op);
        if (operator_mentions_target(m.op))
            description += " for " + program.unit_name + "::" + m.target_function;
        std::cout << m.id << ". " << description << " at line " << m.line << ": "
                  << m.mutated_statement_text << "\n";
        listing.push_back({{"id", m.id},
                           {"operator", operator_id(m.op)},
                           {"description", description},
                           {"line", m.line},
                           {"mutated_statement_text", m.mutated_statement_text},
                           {"status", status_word(m.status)}});
    }
    std::cout << mutants.size() << " mutants\n";
    if (!json_out.empty()) write_file(json_out, listing.dump(2) + "\n");
    return kExitOk;
}

// --- test -----------------------------------------------------------------

int cmd_test(const std::string& subject_path, const std::string& suite_path,
             const std::string& json_out, int jobs) {
    std::string source = read_file(subject_path);
    ParseResult parsed = parse_program(source, unit_name_for(subject_path));
    if (!parsed.ok()) {
        std::cerr << "parse error: " << parsed.error->message << "\n";
        return kExitUsage;
    }
    Program& program = *parsed.program;
    SuiteLoadResult suite = load_suite(read_file(suite_path));
    if (!suite.ok()) {
        std::cerr << "suite parse error: " << suite.error->message << "\n";
        return kExitUsage;
    }
    if (program.functions.size() != 1) {
        std::cerr << "subject must contain exactly one function\n";
        return kExitUsage;
    }
    std::vector<Mutant> mutants = generate_mutants(program, program.functions[0].name);

    ExeFilterResult filtered = exe_filter(program, suite.tests);
    EvaluationResult eval = evaluate_mutants(program, mutants, filtered.passing,
                                             kDefaultStepBudget, jobs);
    nlohmann::json out = report_to_json(eval.report);
    out["rejected"] = nlohmann::json::array();
    for (const auto& f : filtered.failures) {
        out["rejected"].push_back({{"test", f.test.name},
                                   {"category", f.category == FailureCategory::CompileError
                                                    ? "compile-error"
                                                    : "assertion-failure"},
                                   {"message", f.message}});
    }
    std::cout << render_report(eval.report);
    if (!filtered.failures.empty()) {
        std::cout << "\nRejected tests (failing on the original program):\n";
        for (const auto& f : filtered.failures)
            std::cout << "  " << f.test.name << ": " << f.message << "\n";
    }
    if (!json_out.empty()) write_file(json_out, out.dump(2) + "\n");
    return kExitOk;
}

// --- run ------------------------------------------------------------------

nlohmann::json config_echo(const PipelineConfig& config, const BackendOptions& backend) {
    return {{"max_iterations", config.max_iterations},
            {"convergence_rule",
             config.convergence_rule == ConvergenceRule::NoNewKills ? "no-new-kills"
                                                                    : "score-delta-below"},
            {"epsilon", config.epsilon},
            {"mode", mode_name(config.mode)},
            {"fix_mode", config.fix_mode == FixMode::MechanicalFirst ? "mechanical-first"
                                                                     : "llm-only"},
            {"step_budget", config.step_budget},
            {"include_killed_feedback", config.include_killed_feedback},
            {"dedup_useless", config.dedup_useless},
            {"jobs", config.jobs},
            {"model", backend.model},
            {"backend", backend.backend},
            {"target", config.target_function}};
}

int cmd_run(const std::string& subject_path, const std::string& seed_suite_path,
            const std::string& out_dir, PipelineConfig config, const BackendOptions& backend_opts,
            const std::string& templates_dir) {
    std::string source = read_file(subject_path);
    std::string unit = unit_name_for(subject_path);

    std::vector<TestCase> seed;
    if (!seed_suite_path.empty()) {
        SuiteLoadResult loaded = load_suite(read_file(seed_suite_path));
        if (!loaded.ok()) {
            std::cerr << "seed suite parse error: " << loaded.error->message << "\n";
            return kExitUsage;
        }
        seed = std::move(loaded.tests);
    }

    std::string backend_error;
    std::unique_ptr<LlmBackend> backend = make_backend(backend_opts, backend_error);
    if (!backend) {
        std::cerr << backend_error << "\n";
        return kExitUsage;
    }
    config.model_name = backend_opts.model;
    TemplateStore templates(templates_dir);

    PipelineResult result = run_pipeline(source, unit, seed, config, *backend, templates);
    flush_recording(backend.get(), backend_opts.record_path);
    if (!result.error.empty() && result.iterations.empty() && result.final_suite.empty() &&
        result.stop_reason.empty()) {
        std::cerr << result.error << "\n";
        return kExitUsage;  // pre-iteration failures (parse, target selection)
    }

    fs::path run_dir = fs::path(out_dir) / unit;
    for (size_t i = 0; i < result.artifacts.size(); i++) {
        const IterationArtifacts& art = result.artifacts[i];
        fs::path iter_dir = run_dir / std::to_string(i + 1);
        write_file(iter_dir / "prompt.txt", art.prompt_text);
        write_file(iter_dir / "response.txt", art.response_text);
        write_file(iter_dir / "suite.mjt", art.suite_text);
        write_file(iter_dir / "report.json", art.report_json.dump(2) + "\n");
        write_file(iter_dir / "stats.json", art.stats_json.dump(2) + "\n");
        for (size_t k = 0; k < art.fix_exchanges.size(); k++) {
            write_file(iter_dir / "fix" / ("prompt" + std::to_string(k + 1) + ".txt"),
                       art.fix_exchanges[k].first);
            write_file(iter_dir / "fix" / ("response" + std::to_string(k + 1) + ".txt"),
                       art.fix_exchanges[k].second);
        }
        for (const auto& unfixed : art.unfixed) {
            nlohmann::json j = {{"test_name", unfixed.test_name},
                                {"source", unfixed.source_text},
                                {"category", unfixed.category == FailureCategory::CompileError
                                                 ? "compile-error"
                                                 : "assertion-failure"},
                                {"message", unfixed.message},
                                {"matched_strategy", unfixed.matched_strategy}};
            write_file(iter_dir / "unfixed" / (unfixed.test_name + ".json"), j.dump(2) + "\n");
        }
    }

    nlohmann::json summary;
    summary["subject"] = unit;
    summary["mode"] = mode_name(config.mode);
    summary["stop_reason"] = result.stop_reason;
    summary["ok"] = result.ok;
    if (!result.error.empty()) summary["error"] = result.error;
    summary["final_mutation_score"] = round1(result.final_report.mutation_score);
    summary["final_line_coverage"] = round1(result.final_report.line_coverage);
    summary["final_branch_coverage"] = round1(result.final_report.branch_coverage);
    summary["final_suite_size"] = result.final_suite.size();
    summary["summary_text"] = result.summary_text;
    summary["iterations"] = nlohmann::json::array();
    for (const auto& record : result.iterations)
        summary["iterations"].push_back(iteration_record_json(record));
    long iteration_tokens = 0;
    for (const auto& record : result.iterations) iteration_tokens += record.tokens_used;
    summary["totals"] = {{"tokens", result.total_tokens},
                         {"summarize_tokens", result.summarize_tokens},
                         {"iteration_tokens", iteration_tokens}};
    summary["warnings"] = result.warnings;
    nlohmann::json timing;
    timing["total_seconds"] = result.total_wall_seconds;
    timing["iteration_seconds"] = nlohmann::json::array();
    for (const auto& record : result.iterations)
        timing["iteration_seconds"].push_back(record.wall_time_seconds);
    summary["timing"] = timing;

    write_file(run_dir / "summary.json", summary.dump(2) + "\n");
    write_file(run_dir / "config.json",
               config_echo(config, backend_opts).dump(2) + "\n");
    write_file(run_dir / "final_suite.mjt", suite_to_text(result.final_suite));
    write_file(run_dir / "report.json", report_to_json(result.final_report).dump(2) + "\n");

    std::cout << "subject " << unit << ": score "
              << round1(result.final_report.mutation_score) << "% after "
              << result.iterations.size() << " iteration(s), stop: " << result.stop_reason
              << "\n";
    if (!result.ok) {
        std::cerr << result.error << "\n";
        return kExitPipelineFailure;
    }
    return kExitOk;
}

// --- fix ------------------------------------------------------------------

int cmd_fix(const std::string& subject_path, const std::string& suite_path,
            const std::string& out_dir, const std::string& fix_mode_name,
            const BackendOptions& backend_opts, const std::string& templates_dir) {
    std::string source = read_file(subject_path);
    ParseResult parsed = parse_program(source, unit_name_for(subject_path));
    if (!parsed.ok()) {
        std::cerr << "parse error: " << parsed.error->message << "\n";
        return kExitUsage;
    }
    SuiteLoadResult suite = load_suite(read_file(suite_path));
    if (!suite.ok()) {
        std::cerr << "suite parse error: " << suite.error->message << "\n";
        return kExitUsage;
    }
    FixMode mode = fix_mode_name == "llm-only" ? FixMode::LlmOnly : FixMode::MechanicalFirst;

    std::string backend_error;
    std::unique_ptr<LlmBackend> backend;
    if (mode == FixMode::LlmOnly || !backend_opts.transcript_path.empty() ||
        !backend_opts.endpoint.empty()) {
        backend = make_backend(backend_opts, backend_error);
        if (!backend && mode == FixMode::LlmOnly) {
            std::cerr << backend_error << "\n";
            return kExitUsage;
        }
    }
    TemplateStore templates(templates_dir);

    ExeFilterResult filtered = exe_filter(*parsed.program, suite.tests);
    std::set<std::string> taken;
    for (const auto& t : filtered.passing) taken.insert(t.name);
    RepairRoundResult repair = repair_round(*parsed.program, filtered.failures, backend.get(),
                                            templates, mode, taken, backend_opts.model);
    flush_recording(backend.get(), backend_opts.record_path);

    std::vector<TestCase> final_suite = filtered.passing;
    for (const auto& t : repair.fixed_passing) final_suite.push_back(t);

    fs::path dir(out_dir);
    write_file(dir / "fixed_suite.mjt", suite_to_text(final_suite));
    write_file(dir / "repair_stats.json", repair_stats_json(repair.stats).dump(2) + "\n");
    for (const auto& record : repair.unfixed) {
        nlohmann::json j = {{"test_name", record.test.name},
                            {"source", record.test.source_text},
                            {"category", record.category == FailureCategory::CompileError
                                             ? "compile-error"
                                             : "assertion-failure"},
                            {"message", record.message},
                            {"matched_strategy", record.matched_strategy}};
        write_file(dir / "unfixed" / (record.test.name + ".json"), j.dump(2) + "\n");
    }
    std::cout << "attempted " << repair.stats.attempted << ", fixed "
              << repair.stats.fixed_mechanical + repair.stats.fixed_llm << " (mechanical "
              << repair.stats.fixed_mechanical << ", llm " << repair.stats.fixed_llm
              << "), unfixed " << repair.stats.unfixed << "\n";
    return kExitOk;
}

// --- stats ----------------------------------------------------------------

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<double> column(const std::string& name) const {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("csv column not found: " + name);
        size_t idx = static_cast<size_t>(it - header.begin());
        std::vector<double> out;
        for (const auto& row : rows) {
            if (idx >= row.size()) throw std::runtime_error("short csv row");
            out.push_back(std::stod(row[idx]));
        }
        return out;
    }
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream ss(text);
    std::string line;
    bool first = true;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            csv.rows.push_back(std::move(cells));
        }
    }
    if (csv.header.empty()) throw std::runtime_error("empty csv");
    return csv;
}

int cmd_stats(const std::string& which, const std::string& csv_path, const std::string& col_a,
              const std::string& col_b, const std::vector<std::string>& report_paths,
              const std::string& json_out, const std::string& md_out) {
    nlohmann::json out;
    try {
        if (which == "table") {
            std::vector<MutationReport> reports;
            for (const auto& path : report_paths)
                reports.push_back(report_from_json(nlohmann::json::parse(read_file(path))));
            OperatorTable table = operator_table(reports);
            std::string md = operator_table_markdown(table);
            std::cout << md;
            out = operator_table_json(table);
            if (!md_out.empty()) write_file(md_out, md);
        } else {
            Csv csv = parse_csv(read_file(csv_path));
            std::vector<double> a = csv.column(col_a);
            std::vector<double> b = csv.column(col_b);
            if (which == "a12") {
                double value = a12(a, b);
                out = {{"a12", value}, {"n_a", a.size()}, {"n_b", b.size()}};
                std::cout << "A12(" << col_a << ", " << col_b << ") = " << value << "\n";
            } else if (which == "wilcoxon") {
                WilcoxonResult w = wilcoxon_signed_rank(a, b);
                out = {{"w_statistic", w.w_statistic},
                       {"w_plus", w.w_plus},
                       {"w_minus", w.w_minus},
                       {"n_effective", w.n_effective},
                       {"p_two_sided", w.p_two_sided},
                       {"p_one_sided", w.p_one_sided},
                       {"exact", w.exact},
                       {"degenerate", w.degenerate}};
                std::cout << "W = " << w.w_statistic << ", n = " << w.n_effective
                          << ", two-sided p = " << w.p_two_sided
                          << (w.exact ? " (exact)" : " (normal approximation)") << "\n";
            } else if (which == "spearman") {
                SpearmanResult s = spearman(a, b);
                out = {{"rho", s.rho}, {"defined", s.defined}};
                if (!s.defined)
                    std::cout << "spearman undefined (constant vector)\n";
                else
                    std::cout << "spearman rho = " << s.rho << "\n";
            } else {
                std::cerr << "unknown stats kind: " << which << "\n";
                return kExitUsage;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "stats error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!json_out.empty()) write_file(json_out, out.dump(2) + "\n");
    return kExitOk;
}

// --- report ---------------------------------------------------------------

int cmd_report(const std::string& report_path) {
    MutationReport report = report_from_json(nlohmann::json::parse(read_file(report_path)));
    std::cout << render_report(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutation-guided test generation for the MJ mini-language"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);

    int jobs = 1;
    app.add_option("--jobs", jobs, "parallel mutant evaluations")->capture_default_str();
    std::string templates_dir = TemplateStore::default_directory();
    app.add_option("--templates", templates_dir, "prompt template directory")
        ->envname("MUTMJ_TEMPLATES");

    // mutate
    auto* mutate = app.add_subcommand("mutate", "enumerate mutants of a subject");
    std::string mutate_subject, mutate_target, mutate_json;
    mutate->add_option("subject", mutate_subject, ".mj source file")->required();
    mutate->add_option("--target", mutate_target, "target function");
    mutate->add_option("--json", mutate_json, "write the mutant listing JSON here");

    // test
    auto* test = app.add_subcommand("test", "run a suite and score all mutants");
    std::string test_subject, test_suite, test_json;
    test->add_option("subject", test_subject, ".mj source file")->required();
    test->add_option("suite", test_suite, ".mjt test suite")->required();
    test->add_option("--json", test_json, "write report.json here");

    // run
    auto* run = app.add_subcommand("run", "full generation pipeline");
    std::string run_subject, run_seed, run_out = "run";
    std::string run_mode = "mutgen", run_fix_mode = "mechanical-first",
                run_convergence = "no-new-kills";
    PipelineConfig config;
    BackendOptions run_backend;
    run->add_option("subject", run_subject, ".mj source file")->required();
    run->add_option("--seed-suite", run_seed, "initial .mjt suite");
    run->add_option("--out", run_out, "run directory root")->capture_default_str();
    run->add_option("--mode", run_mode, "mutgen | vanilla | mutgen-s | mutgen-f | mutgen-mf")
        ->check(CLI::IsMember({"mutgen", "vanilla", "mutgen-s", "mutgen-f", "mutgen-mf"}));
    run->add_option("--max-iterations", config.max_iterations, "iteration cap")
        ->capture_default_str();
    run->add_option("--fix-mode", run_fix_mode, "mechanical-first | llm-only")
        ->check(CLI::IsMember({"mechanical-first", "llm-only"}));
    run->add_option("--convergence", run_convergence, "no-new-kills | score-delta-below")
        ->check(CLI::IsMember({"no-new-kills", "score-delta-below"}));
    run->add_option("--epsilon", config.epsilon, "score delta threshold (percent points)");
    run->add_option("--step-budget", config.step_budget, "interpreter step budget");
    run->add_option("--target", config.target_function, "target function");
    run->add_flag("--include-killed-feedback", config.include_killed_feedback,
                  "also render killed mutants into prompts");
    run->add_flag("--dedup-useless", config.dedup_useless,
                  "drop new tests that kill no new mutant");
    add_backend_options(run, run_backend);

    // fix
    auto* fix = app.add_subcommand("fix", "repair failing tests in a suite");
    std::string fix_subject, fix_suite, fix_out = "fix-out", fix_mode = "mechanical-first";
    BackendOptions fix_backend;
    fix->add_option("subject", fix_subject, ".mj source file")->required();
    fix->add_option("suite", fix_suite, ".mjt test suite")->required();
    fix->add_option("--out", fix_out, "output directory")->capture_default_str();
    fix->add_option("--fix-mode", fix_mode, "mechanical-first | llm-only")
        ->check(CLI::IsMember({"mechanical-first", "llm-only"}));
    add_backend_options(fix, fix_backend);

    // stats
    auto* stats = app.add_subcommand("stats", "evaluation statistics");
    std::string stats_which, stats_csv, stats_a = "a", stats_b = "b";
    std::vector<std::string> stats_reports;
    std::string stats_json_out, stats_md_out;
    stats->add_option("which", stats_which, "a12 | wilcoxon | spearman | table")->required();
    stats->add_option("--csv", stats_csv, "CSV input with a header row");
    stats->add_option("--col-a,--x", stats_a, "first column name")->capture_default_str();
    stats->add_option("--col-b,--y", stats_b, "second column name")->capture_default_str();
    stats->add_option("--reports", stats_reports, "report.json files to aggregate");
    stats->add_option("--json", stats_json_out, "write the stats bundle JSON here");
    stats->add_option("--md", stats_md_out, "write the markdown table here");

    // report
    auto* report = app.add_subcommand("report", "re-render a report.json");
    std::string report_path;
    report->add_option("report", report_path, "report.json file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (mutate->parsed()) return cmd_mutate(mutate_subject, mutate_target, mutate_json);
        if (test->parsed()) return cmd_test(test_subject, test_suite, test_json, jobs);
        if (run->parsed()) {
            config.mode = *mode_from_name(run_mode);
            config.fix_mode = run_fix_mode == "llm-only" ? FixMode::LlmOnly
                                                         : FixMode::MechanicalFirst;
            config.convergence_rule = run_convergence == "score-delta-below"
                                          ? ConvergenceRule::ScoreDeltaBelow
                                          : ConvergenceRule::NoNewKills;
            config.jobs = jobs;
            return cmd_run(run_subject, run_seed, run_out, config, run_backend, templates_dir);
        }
        if (fix->parsed())
            return cmd_fix(fix_subject, fix_suite, fix_out, fix_mode, fix_backend, templates_dir);
        if (stats->parsed())
            return cmd_stats(stats_which, stats_csv, stats_a, stats_b, stats_reports,
                             stats_json_out, stats_md_out);
        if (report->parsed()) return cmd_report(report_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
