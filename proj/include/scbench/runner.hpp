#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "scbench/corpus.hpp"
#include "scbench/taxonomy.hpp"

namespace scbench {

enum class OutputKind { Json, Text, Replay, Stub };

std::string_view output_kind_name(OutputKind k) noexcept;

// Where findings live in a JSON report. Paths are dot-separated; arrays met on
// the way are flattened, so "elements.source_mapping.lines" collects the lines
// of every element.
struct JsonFindingSpec {
  std::string findings_path = "findings";
  std::string rule_field = "rule";
  std::string lines_field = "lines";
};

// One finding per matching output line; groups are 1-based regex captures.
struct TextFindingSpec {
  std::string pattern;
  int rule_group = 1;
  int line_group = 0;  // 0: no line information
};

struct AdapterConfig {
  std::string id;
  OutputKind kind = OutputKind::Stub;
  // argv with {input}, {solc}, {name} placeholders; no shell is involved.
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{300'000};
  std::vector<int> ok_exit_codes{0};  // empty: any exit code is accepted
  std::map<std::string, VulnClass> rule_map;
  std::filesystem::path fixture;  // replay: directory holding <tool>.jsonl
  JsonFindingSpec json;
  TextFindingSpec text;
};

AdapterConfig adapter_from_json(const nlohmann::json& j, const Taxonomy& taxonomy = Taxonomy::builtin());

// Tools plus the adapters they reference, loaded from one registry file.
class Registry {
 public:
  static Registry from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static Registry load(const std::filesystem::path& path);

  const std::vector<ToolDescriptor>& tools() const noexcept { return tools_; }
  const ToolDescriptor& tool(std::string_view name) const;
  const AdapterConfig& adapter_for(const ToolDescriptor& tool) const;
  const VersionScale& scale() const noexcept { return scale_; }
  const Taxonomy& taxonomy() const noexcept { return taxonomy_; }

  // Keeps only the named tools, in the given order.
  Registry select(std::span<const std::string> names) const;

 private:
  std::vector<ToolDescriptor> tools_;
  std::map<std::string, AdapterConfig, std::less<>> adapters_;
  VersionScale scale_;
  Taxonomy taxonomy_ = Taxonomy::builtin();
};

enum class ScanStatus { Ok, Timeout, ToolError, HarnessError };

std::string_view status_name(ScanStatus s) noexcept;
ScanStatus parse_status(std::string_view s);

struct ScanRecord {
  std::string tool;
  std::string contract;
  ScanStatus status = ScanStatus::HarnessError;
  std::int64_t duration_ms = 0;
  Annotations findings{};  // class -> reported lines (possibly empty)
  std::string raw_ref{};

  bool ok() const noexcept { return status == ScanStatus::Ok; }
  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

nlohmann::ordered_json to_json(const ScanRecord& r);
ScanRecord record_from_json(const nlohmann::json& j);
std::string to_jsonl_line(const ScanRecord& r);
std::vector<ScanRecord> read_jsonl(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::chrono::milliseconds> timeout;  // overrides adapter timeouts
  std::filesystem::path raw_dir;                      // captured outputs; empty: not persisted
  std::optional<std::filesystem::path> replay_dir;    // forces every tool onto replay
};

// Runs one tool on one contract. Task failures become statuses; only a
// mis-configured adapter throws.
ScanRecord run_scan(const ToolDescriptor& tool, const AdapterConfig& adapter, const ContractCase& contract,
                    const RunOptions& options = {}, const Taxonomy& taxonomy = Taxonomy::builtin());

using RecordSink = std::function<void(const ScanRecord&)>;

// Every (tool, case) pair yields exactly one record, passed to `sink` from a
// single thread at a time. Exceptions thrown by the sink abort the campaign.
void execute_campaign(const Registry& registry, std::span<const ContractCase> corpus, int parallelism,
                      const RunOptions& options, const RecordSink& sink);

// Collects every record and returns them in (registry tool, corpus case)
// order, so output is independent of scheduling.
std::vector<ScanRecord> run_campaign(const Registry& registry, std::span<const ContractCase> corpus,
                                     int parallelism, const RunOptions& options = {});

// Indexed view over a campaign's records.
class RecordSet {
 public:
  RecordSet() = default;
  explicit RecordSet(std::vector<ScanRecord> records);

  const std::vector<ScanRecord>& records() const noexcept { return records_; }
  const ScanRecord* find(std::string_view tool, std::string_view contract) const;
  std::vector<const ScanRecord*> for_tool(std::string_view tool) const;

  // Contract-level prediction: nullopt when the record is not ok (excluded
  // from evaluation). Throws MissingRecord when no record exists.
  std::optional<bool> predicted(std::string_view tool, std::string_view contract, VulnClass v) const;

 private:
  std::vector<ScanRecord> records_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index_;
};

// Findings outside the tool's declared capability set; one message each.
std::vector<std::string> capability_violations(const ScanRecord& r, const ToolDescriptor& tool);

}  // namespace scbench
