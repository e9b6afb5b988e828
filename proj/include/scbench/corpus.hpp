#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scbench/taxonomy.hpp"

namespace scbench {

using LineSet = std::set<int>;
using Annotations = std::map<VulnClass, LineSet>;

struct AnnotationResult {
  Annotations labels;
  // Header/inline disagreement and similar soft problems; loading continues.
  std::vector<std::string> warnings;
  // Unknown markers and out-of-range lines; the offending entry is dropped.
  std::vector<std::string> errors;
};

// Ground truth from a contract's comments: `@vulnerable_at_lines: a, b` in the
// header plus inline `<yes> <report> MARKER` comments. An inline marker labels
// the first following line that carries code. Header lines take the class of
// the inline marker bound to them, else `default_class`, else the only inline
// class present.
AnnotationResult parse_annotations(std::string_view source,
                                   std::optional<VulnClass> default_class = std::nullopt,
                                   const Taxonomy& taxonomy = Taxonomy::builtin());

// Strips `//` and `/* */` comments and every whitespace character. Comment
// delimiters inside string literals are kept. Repeated until stable, so the
// result is a fixpoint. Throws UnterminatedBlockComment / UnterminatedString.
std::string normalize_source(std::string_view source);

// True when `normalized` (output of normalize_source) holds a
// `pragma solidity` directive outside string literals.
bool has_pragma_solidity(std::string_view normalized);

// Lines that still hold code once comments (and with them annotation
// markers) are removed.
int count_loc(std::string_view source);

using Checksum = std::function<std::string(std::string_view)>;
std::string md5_hex(std::string_view data);

struct ContractCase {
  std::string id;
  std::string source;
  Annotations expected;
  // Class directory the case was filed under, when known.
  std::optional<VulnClass> category;
  // False for mined (scaled) contracts that carry no ground truth.
  bool labelled = true;
  std::optional<std::int64_t> created_at;  // seconds since the Unix epoch, UTC
  std::optional<double> tx_value;          // ether

  bool safe() const noexcept { return expected.empty(); }
  bool expects(VulnClass v) const { return expected.contains(v); }
};

struct DedupResult {
  std::vector<ContractCase> cases;
  std::size_t removed = 0;
};

// Keeps the first case per checksum of the normalized source.
DedupResult dedup(std::vector<ContractCase> cases, const Checksum& checksum = md5_hex);

std::vector<ContractCase> pragma_filter(std::vector<ContractCase> cases);

struct CorpusStats {
  struct Row {
    std::string type;
    std::size_t number = 0;
    std::size_t loc = 0;
  };
  std::vector<Row> rows;  // V1..V10 in order, then safe (and unlabelled, if any)
  std::size_t total_cases = 0;
  std::size_t total_loc = 0;
};

// Each case is counted once, under its category (else its lowest expected
// class, else safe).
CorpusStats stats(std::span<const ContractCase> corpus, const Taxonomy& taxonomy = Taxonomy::builtin());

struct LoadResult {
  std::vector<ContractCase> cases;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
};

// `root/<class_dir>/**.sol` and `root/safe/**.sol`; a `labelled/` child of
// root is used when present. Class directories resolve through the alias table.
LoadResult load_labelled(const std::filesystem::path& root, const Taxonomy& taxonomy = Taxonomy::builtin());

// Unlabelled contracts from a directory tree of .sol files or a CSV export
// with `address,source` columns.
LoadResult load_scaled(const std::filesystem::path& path);

// Sidecar `id,created_at,tx_value` (ISO-8601 UTC timestamp, value in wei).
// Returns the number of cases that received metadata.
std::size_t attach_metadata(std::vector<ContractCase>& cases, const std::filesystem::path& csv);

std::int64_t parse_timestamp(std::string_view iso8601);
std::string format_timestamp(std::int64_t seconds);

// Checks ContractCase invariants; returns one message per violation.
std::vector<std::string> validate(std::span<const ContractCase> corpus);

}  // namespace scbench
