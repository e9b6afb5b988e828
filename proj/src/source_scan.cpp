#include "source_scan.hpp"

#include <algorithm>
#include <string>

#include "scbench/error.hpp"

namespace scbench::detail {

int SourceScan::line_of(std::size_t offset) const {
  auto it = std::upper_bound(line_starts.begin(), line_starts.end(), offset);
  return static_cast<int>(it - line_starts.begin());
}

namespace {

std::string position(const SourceScan& scan, std::size_t offset) {
  const int line = scan.line_of(offset);
  const auto col = offset - scan.line_starts[static_cast<std::size_t>(line - 1)] + 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SourceScan scan_source(std::string_view src) {
  SourceScan scan;
  scan.kinds.assign(src.size(), CharKind::Code);
  scan.line_starts.push_back(0);
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src[i] == '\n') scan.line_starts.push_back(i + 1);

  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    const char c = src[i];
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      const std::size_t begin = i;
      while (i < n && src[i] != '\n') scan.kinds[i++] = CharKind::Comment;
      scan.comments.push_back({begin, i});
    } else if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const std::size_t begin = i;
      const auto close = src.find("*/", i + 2);
      if (close == std::string_view::npos)
        throw Error(ErrorKind::UnterminatedBlockComment, "comment opened at " + position(scan, begin));
      i = close + 2;
      std::fill(scan.kinds.begin() + static_cast<std::ptrdiff_t>(begin),
                scan.kinds.begin() + static_cast<std::ptrdiff_t>(i), CharKind::Comment);
      scan.comments.push_back({begin, i});
    } else if (c == '"' || c == '\'') {
      const std::size_t begin = i;
      scan.kinds[i++] = CharKind::String;
      bool closed = false;
      while (i < n) {
        const char d = src[i];
        if (d == '\n') break;
        scan.kinds[i++] = CharKind::String;
        if (d == '\\' && i < n) {
          scan.kinds[i++] = CharKind::String;
        } else if (d == c) {
          closed = true;
          break;
        }
      }
      if (!closed) throw Error(ErrorKind::UnterminatedString, "string opened at " + position(scan, begin));
    } else {
      ++i;
    }
  }
  return scan;
}

}  // namespace scbench::detail
