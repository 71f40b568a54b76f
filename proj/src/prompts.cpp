#include "mutmj/prompts.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mutmj {

namespace {

const char* kRoleLine = "You are a senior software engineer who writes thorough unit tests.";

long estimate_tokens(const PromptBundle& bundle) {
    return static_cast<long>((bundle.system_text.size() + bundle.user_text.size()) / 4);
}

PromptBundle finish(PromptKind kind, std::string user_text) {
    PromptBundle bundle;
    bundle.kind = kind;
    bundle.system_text = kRoleLine;
    bundle.user_text = std::move(user_text);
    bundle.token_estimate = estimate_tokens(bundle);
    return bundle;
}

}  // namespace

std::vector<FeedbackEntry> feedback_from_mutants(const std::vector<Mutant>& mutants,
                                                 bool include_killed) {
    std::vector<FeedbackEntry> entries;
    for (const auto& m : mutants) {
        std::string status;
        switch (m.status) {
            case MutantStatus::Survived: status = "live"; break;
            case MutantStatus::NoCoverage: status = "uncovered"; break;
            case MutantStatus::Killed:
                if (!include_killed) continue;
                status = "killed";
                break;
            case MutantStatus::Pending: continue;
        }
        entries.push_back(FeedbackEntry{m.id, operator_feedback_phrase(m.op), m.line, status,
                                        m.mutated_statement_text});
    }
    return entries;  // mutants are already in id order
}

std::string render_feedback_entry(const FeedbackEntry& entry) {
    return std::to_string(entry.id) + ". " + entry.operator_phrase + " at line " +
           std::to_string(entry.line) + ", " + entry.status_word + ":\n" +
           entry.mutated_statement_text;
}

TemplateStore::TemplateStore(std::string directory) : directory_(std::move(directory)) {}

std::string TemplateStore::default_directory() {
    if (const char* env = std::getenv("MUTMJ_TEMPLATES"); env && *env) return env;
#ifdef MUTMJ_DEFAULT_TEMPLATE_DIR
    return MUTMJ_DEFAULT_TEMPLATE_DIR;
#else
    return "templates";
#endif
}

const std::string& TemplateStore::load(const std::string& name) const {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    std::string path = directory_ + "/" + name + ".txt";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open template file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return cache_.emplace(name, ss.str()).first->second;
}

std::string TemplateStore::render(const std::string& template_name,
                                  const std::map<std::string, std::string>& vars) const {
    std::string text = load(template_name);
    for (const auto& [key, value] : vars) {
        std::string marker = "{{" + key + "}}";
        size_t pos = 0;
        while ((pos = text.find(marker, pos)) != std::string::npos) {
            text.replace(pos, marker.size(), value);
            pos += value.size();
        }
    }
    if (size_t pos = text.find("{{"); pos != std::string::npos) {
        size_t end = text.find("}}", pos);
        std::string marker = end == std::string::npos ? text.substr(pos, 20)
                                                      : text.substr(pos, end - pos + 2);
        throw std::runtime_error("unsubstituted template variable " + marker + " in " +
                                 template_name);
    }
    return text;
}

PromptBundle build_summarize_prompt(const TemplateStore& templates, const std::string& source) {
    return finish(PromptKind::Summarize,
                  templates.render("summarize", {{"source_code", source}}));
}

PromptBundle build_generation_prompt(const TemplateStore& templates, const std::string& summary,
                                     const std::string& source_no_comments,
                                     const std::vector<FeedbackEntry>& feedback,
                                     bool include_feedback_section) {
    if (!include_feedback_section) {
        return finish(PromptKind::Generate,
                      templates.render("generate_plain", {{"summary", summary},
                                                          {"source_code", source_no_comments}}));
    }
    std::string blocks;
    for (size_t i = 0; i < feedback.size(); i++) {
        if (i) blocks += "\n\n";
        blocks += render_feedback_entry(feedback[i]);
    }
    return finish(PromptKind::Generate,
                  templates.render("generate", {{"summary", summary},
                                                {"source_code", source_no_comments},
                                                {"mutation_feedback", blocks}}));
}

PromptBundle build_fix_prompt(const TemplateStore& templates,
                              const std::string& failed_test_source,
                              const std::string& error_message) {
    return finish(PromptKind::Fix, templates.render("fix", {{"failed_test", failed_test_source},
                                                            {"error_message", error_message}}));
}

PromptBundle build_vanilla_prompt(const TemplateStore& templates,
                                  const std::string& source_with_comments) {
    return finish(PromptKind::Vanilla,
                  templates.render("vanilla", {{"source_code", source_with_comments}}));
}

}  // namespace mutmj
