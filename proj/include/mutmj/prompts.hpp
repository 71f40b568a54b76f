#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mutmj/mutation.hpp"

namespace mutmj {

// One live/uncovered mutant, as rendered into the generation prompt:
//   "<id>. <operator_phrase> at line <line>, <status_word>:"
//   "<mutated statement>"
struct FeedbackEntry {
    int id = 0;
    std::string operator_phrase;
    int line = 0;
    std::string status_word;  // "live" | "uncovered" (| "killed" when enabled)
    std::string mutated_statement_text;
};

// Builds feedback from classified mutants in id order. Killed mutants are
// excluded unless `include_killed` is set.
std::vector<FeedbackEntry> feedback_from_mutants(const std::vector<Mutant>& mutants,
                                                 bool include_killed = false);

std::string render_feedback_entry(const FeedbackEntry& entry);

enum class PromptKind { Summarize, Generate, Fix, Vanilla };

struct PromptBundle {
    PromptKind kind = PromptKind::Generate;
    std::string system_text;
    std::string user_text;
    long token_estimate = 0;  // chars / 4, reporting only
};

// Loads the five template files (summarize, generate, generate_plain, fix,
// vanilla) from a directory. Missing files or leftover {{markers}} after
// substitution raise std::runtime_error.
class TemplateStore {
public:
    explicit TemplateStore(std::string directory);
    static std::string default_directory();

    std::string render(const std::string& template_name,
                       const std::map<std::string, std::string>& vars) const;

    const std::string& directory() const { return directory_; }

private:
    std::string directory_;
    mutable std::map<std::string, std::string> cache_;
    const std::string& load(const std::string& name) const;
};

PromptBundle build_summarize_prompt(const TemplateStore& templates, const std::string& source);

// `include_feedback_section` is cleared by the no-mutation-feedback ablation;
// with it set and an empty entry list the section renders empty but present.
PromptBundle build_generation_prompt(const TemplateStore& templates, const std::string& summary,
                                     const std::string& source_no_comments,
                                     const std::vector<FeedbackEntry>& feedback,
                                     bool include_feedback_section = true);

PromptBundle build_fix_prompt(const TemplateStore& templates, const std::string& failed_test_source,
                              const std::string& error_message);

PromptBundle build_vanilla_prompt(const TemplateStore& templates,
                                  const std::string& source_with_comments);

}  // namespace mutmj
