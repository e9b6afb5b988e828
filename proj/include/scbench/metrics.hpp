#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scbench/corpus.hpp"
#include "scbench/runner.hpp"
#include "scbench/taxonomy.hpp"

namespace scbench {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Undefined precision/recall hold 0 with the flag cleared.
struct MetricSet {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool precision_defined = true;
  bool recall_defined = true;
};

enum class EvalMode {
  ExcludeNonOk,  // failed scans drop out of the matrix
  Strict,        // failed scans count as "nothing found"
};

// Per-contract binary classification for class v over the safe cases plus the
// cases labelled with v. Throws NotApplicable when the tool cannot detect v.
ConfusionMatrix confusion(const RecordSet& records, const ToolDescriptor& tool, VulnClass v,
                          std::span<const ContractCase> corpus, EvalMode mode = EvalMode::ExcludeNonOk);

MetricSet prf(const ConfusionMatrix& cm);

// Harmonic combination of the mean precision and mean recall over the
// supported classes.
double functional_score(std::span<const MetricSet> per_class);
double functional_score(double precision_avg, double recall_avg);

struct TimingSummary {
  double total_s = 0;
  std::size_t valid = 0;
  double avg_s = 0;
  std::size_t timeouts = 0;
  std::size_t tool_errors = 0;
  std::size_t harness_errors = 0;
};

TimingSummary timing(const RecordSet& records, std::string_view tool);
TimingSummary timing_from_totals(double total_s, std::size_t valid);

// 1 - (t - min)/(max - min); every tool gets 1 when all averages are equal.
std::vector<double> efficiency_scores(std::span<const double> avg_times);

double usability_score(const ToolDescriptor& tool, std::size_t selected = kClassCount);

struct IndicatorRow {
  std::string tool;
  double sf = 0;
  double se = 0;
  double sc = 0;
  double su = 0;
};

struct IndicatorMatrix {
  std::vector<IndicatorRow> rows;
};

// Indicator CSV with header tool,S_f,S_e,S_c,S_u.
IndicatorMatrix read_indicator_csv(const std::filesystem::path& path);

struct ClassEvaluation {
  VulnClass cls;
  ConfusionMatrix cm;
  MetricSet metrics;
};

struct ToolEvaluation {
  std::string tool;
  std::vector<ClassEvaluation> classes;  // supported classes only
  double accuracy_avg = 0;
  double precision_avg = 0;
  double recall_avg = 0;
  double sf = 0;
  TimingSummary time;
  double se = 0;
  double sc = 0;
  double su = 0;
};

// Full per-tool evaluation of a campaign: confusion matrices, averages and
// the four indicators. Errors name the offending tool.
std::vector<ToolEvaluation> evaluate(const RecordSet& records, const Registry& registry,
                                     std::span<const ContractCase> corpus, EvalMode mode = EvalMode::ExcludeNonOk);

IndicatorMatrix indicator_matrix(std::span<const ToolEvaluation> evaluations);
IndicatorMatrix indicator_matrix(const RecordSet& records, const Registry& registry,
                                 std::span<const ContractCase> corpus, EvalMode mode = EvalMode::ExcludeNonOk);

}  // namespace scbench
