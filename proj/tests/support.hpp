#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scbench/corpus.hpp"

namespace testing {

inline std::filesystem::path source_dir() { return SCBENCH_SOURCE_DIR; }
inline std::filesystem::path fixtures() { return source_dir() / "fixtures"; }
inline std::filesystem::path data() { return source_dir() / "data"; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("scbench-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

// Random Solidity-like text mixing code, comments and string literals whose
// contents include comment delimiters. Tokens are separated by ';' where
// whitespace removal could otherwise glue '/' characters together.
inline std::string random_source(std::mt19937& rng) {
  static const std::vector<std::string> code = {"uint x = 1;", "x += y;", "pragma solidity ^0.4.24;",
                                                "function f() public {", "}", "a / b;", "c * d;", "emit E(x);"};
  static const std::vector<std::string> lit = {"//", "/*", "*/", "http://x.io", "a // b", "/* c */", "q\\\"q",
                                               "it's", "x", " ", "\\\\", "*"};
  static const std::vector<std::string> comment = {"// note", "// \"quoted\" //", "/* block */", "/* multi\n line */",
                                                   "/* 'quote' */", "/**/", "// /* nested"};
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  std::string out;
  const int parts = 5 + static_cast<int>(rng() % 20);
  for (int i = 0; i < parts; ++i) {
    switch (rng() % 4) {
      case 0: out += pick(code); break;
      case 1: {
        const bool dq = rng() % 2;
        std::string body = pick(lit);
        if (!dq) {
          // keep single-quoted literals free of bare single quotes
          std::string b;
          for (char c : body) {
            if (c == '\'') b += "\\'";
            else b += c;
          }
          body = b;
        }
        out += std::string("s = ") + (dq ? "\"" : "'") + body + (dq ? "\"" : "'") + ";";
        break;
      }
      case 2: out += pick(comment) + "\n"; break;
      default: out += rng() % 2 ? "\n" : "  "; break;
    }
    out += rng() % 3 ? " " : "\n";
  }
  return out;
}

}  // namespace testing
