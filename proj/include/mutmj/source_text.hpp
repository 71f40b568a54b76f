#pragma once

#include <string>

namespace mutmj {

// Removes // and /* */ comments while preserving the line structure, so all
// line numbers stay valid. Lines that were pure comment become empty lines;
// trailing whitespace is trimmed. Idempotent.
std::string strip_comments(const std::string& source);

// The inverse selection: every comment as written (delimiters included),
// one per line, in source order. Used by the ablation that feeds original
// comments instead of a generated summary.
std::string extract_comments(const std::string& source);

}  // namespace mutmj
