#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scbench/corpus.hpp"
#include "scbench/mcdm.hpp"
#include "scbench/metrics.hpp"
#include "scbench/runner.hpp"

namespace scbench {

// A rectangular table of preformatted cells.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& t);
std::string to_markdown(const Table& t);
nlohmann::ordered_json to_json(const Table& t);

// Fixed-point rendering with round-half-even on the decimal value.
std::string format_fixed(double value, int decimals);

struct DistributionCell {
  std::string tool;
  VulnClass cls;
  std::size_t count = 0;
  bool capable = true;
};

// Contracts with at least one finding per (tool, class), tools in registry
// order. Pairs outside a tool's capability set stay 0 and are flagged.
std::vector<DistributionCell> class_distribution(std::span<const ScanRecord> records,
                                                 std::span<const ToolDescriptor> tools);

enum class Bucket { Month, Quarter, Year };

Bucket parse_bucket(std::string_view s);
std::string period_label(std::int64_t seconds, Bucket bucket);

struct SeriesPoint {
  std::size_t count = 0;
  double value = 0;  // ether
};

struct TimeSeries {
  Bucket bucket = Bucket::Quarter;
  std::map<VulnClass, std::map<std::string, SeriesPoint>> classes;
};

// A contract counts for class v when any of `tools` (all tools when empty)
// reported v on it. Flagged contracts without a timestamp raise
// MissingMetadata naming them; a missing value counts as 0.
TimeSeries time_series(std::span<const ScanRecord> records, std::span<const ContractCase> corpus,
                       std::span<const std::string> tools, Bucket bucket = Bucket::Quarter);

struct NamedWeights {
  std::string method;
  WeightVector weights;
  std::optional<ConsistencyReport> consistency;
};

Table stats_table(const CorpusStats& s);
Table metrics_table(std::span<const ToolEvaluation> evaluations);
Table timing_table(std::span<const ToolEvaluation> evaluations);
Table compat_table(std::span<const ToolEvaluation> evaluations, const Registry& registry);
Table weights_table(std::span<const NamedWeights> weights);
Table scores_table(std::span<const ScoreTable> scores);
Table distribution_table(std::span<const DistributionCell> cells);
Table series_table(const TimeSeries& series);

struct ReportBundle {
  Table corpus;
  Table metrics;
  Table timing;
  Table compat;
  Table weights;
  Table scores;
  Table distribution;
  std::optional<Table> series;

  std::vector<const Table*> tables() const;
};

struct ReportInputs {
  const RecordSet* records = nullptr;
  std::span<const ContractCase> corpus;
  const Registry* registry = nullptr;
  // Named AHP judgment matrices; EWM weights are always derived.
  std::vector<std::pair<std::string, PairwiseMatrix>> ahp;
  EvalMode mode = EvalMode::ExcludeNonOk;
  // Set to emit the time series; an empty tool list means every tool.
  std::optional<std::vector<std::string>> series_tools;
  Bucket bucket = Bucket::Quarter;
};

ReportBundle build_report(const ReportInputs& in);

// One CSV and one Markdown file per table plus manifest.json. Byte-stable.
void write_report(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace scbench
