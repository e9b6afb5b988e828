#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace scbench::detail {

enum class CharKind : unsigned char { Code, String, Comment };

struct CommentSpan {
  std::size_t begin;
  std::size_t end;  // one past the last character
};

struct SourceScan {
  std::vector<CharKind> kinds;  // one entry per input byte
  std::vector<CommentSpan> comments;
  std::vector<std::size_t> line_starts;

  int line_of(std::size_t offset) const;  // 1-based
};

// Classifies each byte as code, string-literal or comment. Throws
// UnterminatedBlockComment / UnterminatedString with a line:column position.
SourceScan scan_source(std::string_view source);

}  // namespace scbench::detail
