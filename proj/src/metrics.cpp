#include "scbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "csv.hpp"
#include "scbench/error.hpp"

namespace scbench {

ConfusionMatrix confusion(const RecordSet& records, const ToolDescriptor& tool, VulnClass v,
                          std::span<const ContractCase> corpus, EvalMode mode) {
  if (!capability(tool, v))
    throw Error(ErrorKind::NotApplicable, tool.name + " cannot detect " + class_id(v));
  ConfusionMatrix cm;
  for (const auto& c : corpus) {
    if (!c.labelled) continue;
    const bool actual = c.expects(v);
    if (!actual && !c.safe()) continue;
    auto predicted = records.predicted(tool.name, c.id, v);
    if (!predicted) {
      if (mode == EvalMode::ExcludeNonOk) continue;
      predicted = false;
    }
    if (actual) (*predicted ? cm.tp : cm.fn)++;
    else (*predicted ? cm.fp : cm.tn)++;
  }
  return cm;
}

MetricSet prf(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw Error(ErrorKind::EmptyMatrix, "confusion matrix has no evaluated cases");
  MetricSet m;
  const auto d = [](std::uint64_t x) { return static_cast<double>(x); };
  m.accuracy = d(cm.tp + cm.tn) / d(total);
  m.precision_defined = cm.tp + cm.fp > 0;
  m.recall_defined = cm.tp + cm.fn > 0;
  m.precision = m.precision_defined ? d(cm.tp) / d(cm.tp + cm.fp) : 0.0;
  m.recall = m.recall_defined ? d(cm.tp) / d(cm.tp + cm.fn) : 0.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

double functional_score(double precision_avg, double recall_avg) {
  if (precision_avg + recall_avg <= 0) return 0.0;
  return 2 * precision_avg * recall_avg / (precision_avg + recall_avg);
}

double functional_score(std::span<const MetricSet> per_class) {
  const bool any_defined = std::any_of(per_class.begin(), per_class.end(),
                                       [](const MetricSet& m) { return m.precision_defined || m.recall_defined; });
  if (per_class.empty() || !any_defined)
    throw Error(ErrorKind::NoSupportedClasses, "no supported class with defined metrics");
  double p = 0, r = 0;
  for (const auto& m : per_class) {
    p += m.precision;
    r += m.recall;
  }
  const auto n = static_cast<double>(per_class.size());
  return functional_score(p / n, r / n);
}

TimingSummary timing_from_totals(double total_s, std::size_t valid) {
  if (valid == 0) throw Error(ErrorKind::NoValidRuns, "no valid runs");
  return {total_s, valid, total_s / static_cast<double>(valid)};
}

TimingSummary timing(const RecordSet& records, std::string_view tool) {
  TimingSummary t;
  std::int64_t total_ms = 0;
  for (const auto* r : records.for_tool(tool)) {
    switch (r->status) {
      case ScanStatus::Ok:
        total_ms += r->duration_ms;
        ++t.valid;
        break;
      case ScanStatus::Timeout: ++t.timeouts; break;
      case ScanStatus::ToolError: ++t.tool_errors; break;
      case ScanStatus::HarnessError: ++t.harness_errors; break;
    }
  }
  if (t.valid == 0) throw Error(ErrorKind::NoValidRuns, std::string(tool) + " has no valid runs");
  t.total_s = static_cast<double>(total_ms) / 1000.0;
  t.avg_s = t.total_s / static_cast<double>(t.valid);
  return t;
}

std::vector<double> efficiency_scores(std::span<const double> avg_times) {
  std::vector<double> out(avg_times.size(), 1.0);
  if (avg_times.empty()) return out;
  const auto [lo, hi] = std::minmax_element(avg_times.begin(), avg_times.end());
  const double range = *hi - *lo;
  if (range <= 0) return out;
  for (std::size_t i = 0; i < avg_times.size(); ++i) out[i] = 1.0 - (avg_times[i] - *lo) / range;
  return out;
}

double usability_score(const ToolDescriptor& tool, std::size_t selected) {
  if (selected == 0) throw Error(ErrorKind::InvalidInput, "selected class count must be positive");
  return static_cast<double>(tool.capabilities.size()) / static_cast<double>(selected);
}

IndicatorMatrix read_indicator_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  auto rows = detail::read_csv(in);
  IndicatorMatrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i == 0 && !r.empty() && r[0] == "tool") continue;
    if (r.size() != 5) throw Error(ErrorKind::InvalidInput, path.string() + ": expected 5 columns on row " + std::to_string(i + 1));
    try {
      m.rows.push_back({r[0], std::stod(r[1]), std::stod(r[2]), std::stod(r[3]), std::stod(r[4])});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, path.string() + ": bad number on row " + std::to_string(i + 1));
    }
  }
  return m;
}

std::vector<ToolEvaluation> evaluate(const RecordSet& records, const Registry& registry,
                                     std::span<const ContractCase> corpus, EvalMode mode) {
  std::vector<ToolEvaluation> out;
  std::vector<double> avg_times;
  for (const auto& tool : registry.tools()) {
    ToolEvaluation e;
    e.tool = tool.name;
    try {
      std::vector<MetricSet> sets;
      double acc = 0;
      for (auto v : tool.capabilities.members()) {
        const auto cm = confusion(records, tool, v, corpus, mode);
        const auto m = prf(cm);
        e.classes.push_back({v, cm, m});
        sets.push_back(m);
        acc += m.accuracy;
        e.precision_avg += m.precision;
        e.recall_avg += m.recall;
      }
      const auto n = static_cast<double>(sets.size());
      e.accuracy_avg = acc / n;
      e.precision_avg /= n;
      e.recall_avg /= n;
      e.sf = functional_score(sets);
      e.time = timing(records, tool.name);
      e.sc = compat_score(tool.max_solidity, registry.scale());
      e.su = usability_score(tool, registry.taxonomy().selected());
    } catch (const Error& err) {
      throw Error(err.kind(), tool.name + ": " + err.message());
    }
    avg_times.push_back(e.time.avg_s);
    out.push_back(std::move(e));
  }
  const auto se = efficiency_scores(avg_times);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].se = se[i];
  return out;
}

IndicatorMatrix indicator_matrix(std::span<const ToolEvaluation> evaluations) {
  IndicatorMatrix m;
  for (const auto& e : evaluations) m.rows.push_back({e.tool, e.sf, e.se, e.sc, e.su});
  return m;
}

IndicatorMatrix indicator_matrix(const RecordSet& records, const Registry& registry,
                                 std::span<const ContractCase> corpus, EvalMode mode) {
  return indicator_matrix(evaluate(records, registry, corpus, mode));
}

}  // namespace scbench
