#include "scbench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <openssl/evp.h>

#include "csv.hpp"
#include "scbench/error.hpp"
#include "source_scan.hpp"

namespace scbench {

namespace fs = std::filesystem;
using detail::CharKind;

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

int line_count(std::string_view s) {
  if (s.empty()) return 0;
  auto n = static_cast<int>(std::count(s.begin(), s.end(), '\n'));
  return s.back() == '\n' ? n : n + 1;
}

std::string normalize_once(std::string_view source) {
  const auto scan = detail::scan_source(source);
  std::string out;
  out.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i)
    if (scan.kinds[i] != CharKind::Comment && !is_space(source[i])) out.push_back(source[i]);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> sol_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".sol") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::string normalize_source(std::string_view source) {
  std::string current = normalize_once(source);
  for (;;) {
    std::string next = normalize_once(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

bool has_pragma_solidity(std::string_view normalized) {
  static constexpr std::string_view kDirective = "pragmasolidity";
  std::size_t i = 0;
  while (i < normalized.size()) {
    const char c = normalized[i];
    if (c == '"' || c == '\'') {
      // skip the literal; normalized text has no newlines so scan to the close
      ++i;
      while (i < normalized.size() && normalized[i] != c) i += normalized[i] == '\\' ? 2 : 1;
      ++i;
      continue;
    }
    if (normalized.substr(i, kDirective.size()) == kDirective) {
      const bool word_start = i == 0 || !(std::isalnum(static_cast<unsigned char>(normalized[i - 1])) ||
                                          normalized[i - 1] == '_' || normalized[i - 1] == '$');
      if (word_start) return true;
    }
    ++i;
  }
  return false;
}

int count_loc(std::string_view source) {
  std::vector<bool> code;
  try {
    const auto scan = detail::scan_source(source);
    code.assign(scan.line_starts.size() + 1, false);
    for (std::size_t i = 0; i < source.size(); ++i)
      if (scan.kinds[i] != CharKind::Comment && !is_space(source[i])) code[static_cast<std::size_t>(scan.line_of(i))] = true;
  } catch (const Error&) {
    // unlexable text: fall back to non-blank lines
    code.assign(static_cast<std::size_t>(line_count(source)) + 2, false);
    int line = 1;
    for (char c : source) {
      if (c == '\n') ++line;
      else if (!is_space(c)) code[static_cast<std::size_t>(line)] = true;
    }
  }
  return static_cast<int>(std::count(code.begin(), code.end(), true));
}

AnnotationResult parse_annotations(std::string_view source, std::optional<VulnClass> default_class,
                                   const Taxonomy& taxonomy) {
  static const std::regex kHeader(R"(@vulnerable_at_lines\s*:\s*([0-9][0-9, \t]*))");
  static const std::regex kInline(R"(<yes>\s*<report>\s*([A-Za-z0-9_.\-]+))");

  AnnotationResult result;
  const auto scan = detail::scan_source(source);
  const int nlines = line_count(source);

  std::vector<bool> has_code(static_cast<std::size_t>(nlines) + 2, false);
  for (std::size_t i = 0; i < source.size(); ++i)
    if (scan.kinds[i] != CharKind::Comment && !is_space(source[i]))
      has_code[static_cast<std::size_t>(scan.line_of(i))] = true;

  std::vector<int> header_lines;
  Annotations inline_labels;
  std::multimap<int, VulnClass> bound;

  for (const auto& span : scan.comments) {
    const std::string text(source.substr(span.begin, span.end - span.begin));
    for (std::sregex_iterator it(text.begin(), text.end(), kHeader), end; it != end; ++it) {
      std::string list = (*it)[1].str();
      std::replace(list.begin(), list.end(), ',', ' ');
      std::istringstream ss(list);
      for (int line; ss >> line;) header_lines.push_back(line);
    }
    for (std::sregex_iterator it(text.begin(), text.end(), kInline), end; it != end; ++it) {
      const auto marker = (*it)[1].str();
      const int marker_line = scan.line_of(span.begin + static_cast<std::size_t>(it->position(0)));
      auto cls = taxonomy.try_class_for_marker(marker);
      if (!cls) {
        result.errors.push_back("line " + std::to_string(marker_line) + ": unknown marker '" + marker + "'");
        continue;
      }
      int target = marker_line + 1;
      while (target <= nlines && !has_code[static_cast<std::size_t>(target)]) ++target;
      if (target > nlines) {
        result.warnings.push_back("line " + std::to_string(marker_line) + ": marker '" + marker +
                                  "' is not followed by code");
        continue;
      }
      inline_labels[*cls].insert(target);
      bound.emplace(target, *cls);
    }
  }

  std::optional<VulnClass> fallback = default_class;
  if (!fallback && inline_labels.size() == 1) fallback = inline_labels.begin()->first;

  std::map<VulnClass, std::size_t> header_count;
  result.labels = inline_labels;
  for (int h : header_lines) {
    if (h < 1 || h > nlines) {
      result.errors.push_back("header line " + std::to_string(h) + " outside 1.." + std::to_string(nlines));
      continue;
    }
    auto [lo, hi] = bound.equal_range(h);
    if (lo != hi) {
      for (auto it = lo; it != hi; ++it) ++header_count[it->second];
      continue;
    }
    if (!fallback) {
      result.warnings.push_back("header line " + std::to_string(h) + " cannot be attributed to a class");
      continue;
    }
    result.labels[*fallback].insert(h);
    ++header_count[*fallback];
  }

  if (!header_lines.empty() && !inline_labels.empty()) {
    std::set<VulnClass> classes;
    for (const auto& [c, _] : header_count) classes.insert(c);
    for (const auto& [c, _] : inline_labels) classes.insert(c);
    for (auto c : classes) {
      const auto h = header_count.contains(c) ? header_count[c] : 0;
      const auto i = inline_labels.contains(c) ? inline_labels[c].size() : 0;
      if (h != i)
        result.warnings.push_back("AnnotationMismatch: " + class_id(c) + " has " + std::to_string(h) +
                                  " header line(s) but " + std::to_string(i) + " inline marker(s)");
    }
  }
  return result;
}

std::string md5_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_md5(), nullptr) != 1)
    throw Error(ErrorKind::Io, "MD5 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

DedupResult dedup(std::vector<ContractCase> cases, const Checksum& checksum) {
  DedupResult result;
  std::unordered_set<std::string> seen;
  for (auto& c : cases) {
    std::string key;
    try {
      key = checksum(normalize_source(c.source));
    } catch (const Error&) {
      key = "raw:" + checksum(c.source);
    }
    if (seen.insert(std::move(key)).second) result.cases.push_back(std::move(c));
    else ++result.removed;
  }
  return result;
}

std::vector<ContractCase> pragma_filter(std::vector<ContractCase> cases) {
  std::vector<ContractCase> kept;
  for (auto& c : cases) {
    bool ok = false;
    try {
      ok = has_pragma_solidity(normalize_source(c.source));
    } catch (const Error&) {
      ok = false;
    }
    if (ok) kept.push_back(std::move(c));
  }
  return kept;
}

CorpusStats stats(std::span<const ContractCase> corpus, const Taxonomy& taxonomy) {
  CorpusStats s;
  for (auto v : kAllClasses) s.rows.push_back({taxonomy.name(v), 0, 0});
  s.rows.push_back({"Safe contracts", 0, 0});
  CorpusStats::Row unlabelled{"Unlabelled", 0, 0};
  for (const auto& c : corpus) {
    const auto loc = static_cast<std::size_t>(count_loc(c.source));
    CorpusStats::Row* row = nullptr;
    if (!c.labelled) row = &unlabelled;
    else if (c.category) row = &s.rows[index_of(*c.category)];
    else if (!c.expected.empty()) row = &s.rows[index_of(c.expected.begin()->first)];
    else row = &s.rows[kClassCount];
    ++row->number;
    row->loc += loc;
  }
  if (unlabelled.number > 0) s.rows.push_back(unlabelled);
  for (const auto& r : s.rows) {
    s.total_cases += r.number;
    s.total_loc += r.loc;
  }
  return s;
}

LoadResult load_labelled(const fs::path& root_in, const Taxonomy& taxonomy) {
  LoadResult result;
  fs::path root = root_in;
  if (fs::is_directory(root / "labelled")) root /= "labelled";
  if (!fs::is_directory(root)) throw Error(ErrorKind::Io, "not a directory: " + root_in.string());

  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());

  for (const auto& dir : dirs) {
    const auto name = dir.filename().string();
    std::optional<VulnClass> category;
    const bool safe_dir = name == "safe";
    if (!safe_dir) {
      category = taxonomy.try_class_for_marker(name);
      if (!category) {
        result.warnings.push_back(name + "/: directory does not name a class; skipped");
        continue;
      }
    }
    for (const auto& file : sol_files(dir)) {
      ContractCase c;
      c.id = fs::relative(file, root).generic_string();
      c.source = read_file(file);
      c.category = category;
      try {
        auto ann = parse_annotations(c.source, category, taxonomy);
        for (auto& w : ann.warnings) result.warnings.push_back(c.id + ": " + w);
        for (auto& e : ann.errors) result.errors.push_back(c.id + ": " + e);
        c.expected = std::move(ann.labels);
      } catch (const Error& e) {
        result.errors.push_back(c.id + ": " + e.what());
      }
      if (safe_dir && !c.expected.empty()) {
        result.warnings.push_back(c.id + ": annotated contract filed under safe/");
      }
      if (category && !c.expects(*category)) {
        result.warnings.push_back(c.id + ": no annotated lines for " + class_id(*category));
        c.expected[*category];
      }
      result.cases.push_back(std::move(c));
    }
  }
  return result;
}

LoadResult load_scaled(const fs::path& path) {
  LoadResult result;
  if (fs::is_directory(path)) {
    for (const auto& file : sol_files(path)) {
      ContractCase c;
      c.id = fs::relative(file, path).generic_string();
      c.source = read_file(file);
      c.labelled = false;
      result.cases.push_back(std::move(c));
    }
    return result;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  auto rows = detail::read_csv(in);
  std::size_t first = 0;
  if (!rows.empty() && rows[0].size() >= 2 && rows[0][0] == "address") first = 1;
  for (std::size_t i = first; i < rows.size(); ++i) {
    if (rows[i].size() < 2) {
      result.errors.push_back(path.string() + ": row " + std::to_string(i + 1) + " has fewer than 2 columns");
      continue;
    }
    ContractCase c;
    c.id = rows[i][0];
    c.source = rows[i][1];
    c.labelled = false;
    result.cases.push_back(std::move(c));
  }
  return result;
}

std::int64_t parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  const std::string str(text);
  const int got = std::sscanf(str.c_str(), "%d-%d-%d%*[T ]%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
  if (got != 3 && got != 6) throw Error(ErrorKind::InvalidInput, "bad timestamp '" + str + "'");
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw Error(ErrorKind::InvalidInput, "bad timestamp '" + str + "'");
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_timestamp(std::int64_t seconds) {
  using namespace std::chrono;
  auto days = seconds >= 0 ? seconds / 86400 : (seconds - 86399) / 86400;
  auto rem = seconds - days * 86400;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

std::size_t attach_metadata(std::vector<ContractCase>& cases, const fs::path& csv) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + csv.string());
  auto rows = detail::read_csv(in);
  std::unordered_map<std::string, std::pair<std::optional<std::int64_t>, std::optional<double>>> meta;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i == 0 && !r.empty() && r[0] == "id") continue;
    if (r.empty() || r[0].empty()) continue;
    std::optional<std::int64_t> ts;
    std::optional<double> value;
    if (r.size() > 1 && !r[1].empty()) ts = parse_timestamp(r[1]);
    if (r.size() > 2 && !r[2].empty()) {
      char* end = nullptr;
      const long double wei = std::strtold(r[2].c_str(), &end);
      if (end == r[2].c_str() || *end != '\0' || wei < 0)
        throw Error(ErrorKind::InvalidInput, csv.string() + ": bad wei value '" + r[2] + "'");
      value = static_cast<double>(wei / 1e18L);
    }
    meta[r[0]] = {ts, value};
  }
  std::size_t attached = 0;
  for (auto& c : cases) {
    auto it = meta.find(c.id);
    if (it == meta.end()) continue;
    c.created_at = it->second.first;
    c.tx_value = it->second.second;
    ++attached;
  }
  return attached;
}

std::vector<std::string> validate(std::span<const ContractCase> corpus) {
  std::vector<std::string> issues;
  std::unordered_set<std::string> ids;
  for (const auto& c : corpus) {
    if (!ids.insert(c.id).second) issues.push_back(c.id + ": duplicate case id");
    const int nlines = line_count(c.source);
    for (const auto& [cls, lines] : c.expected)
      for (int line : lines)
        if (line < 1 || line > nlines)
          issues.push_back(c.id + ": " + class_id(cls) + " line " + std::to_string(line) + " outside source");
    if (c.category && !c.expects(*c.category))
      issues.push_back(c.id + ": filed under " + class_id(*c.category) + " but not labelled with it");
  }
  return issues;
}

}  // namespace scbench
