#include "scbench/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "csv.hpp"
#include "scbench/error.hpp"

namespace scbench {

std::string format_fixed(double value, int decimals) {
  double r = round_half_even(value, decimals);
  if (r == 0) r = 0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, r);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string to_markdown(const Table& t) {
  auto cell = [](std::string s) {
    std::string out;
    for (char c : s) {
      if (c == '|') out += '\\';
      out += c;
    }
    return out;
  };
  std::string out = "|";
  for (const auto& c : t.columns) out += " " + cell(c) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += " --- |";
  out += '\n';
  for (const auto& r : t.rows) {
    out += '|';
    for (const auto& c : r) out += " " + cell(c) + " |";
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const Table& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(std::move(o));
  }
  return {{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

std::vector<DistributionCell> class_distribution(std::span<const ScanRecord> records,
                                                 std::span<const ToolDescriptor> tools) {
  std::map<std::pair<std::string, VulnClass>, std::set<std::string>> flagged;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    for (const auto& [v, lines] : r.findings) flagged[{r.tool, v}].insert(r.contract);
  }
  std::vector<DistributionCell> out;
  for (const auto& tool : tools) {
    for (auto v : kAllClasses) {
      DistributionCell c{tool.name, v, 0, capability(tool, v)};
      if (c.capable) {
        auto it = flagged.find({tool.name, v});
        if (it != flagged.end()) c.count = it->second.size();
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

Bucket parse_bucket(std::string_view s) {
  if (s == "month") return Bucket::Month;
  if (s == "quarter") return Bucket::Quarter;
  if (s == "year") return Bucket::Year;
  throw Error(ErrorKind::InvalidInput, "bucket must be month, quarter or year, got '" + std::string(s) + "'");
}

std::string period_label(std::int64_t seconds, Bucket bucket) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(sys_seconds{std::chrono::seconds{seconds}})};
  const int y = static_cast<int>(ymd.year());
  const unsigned m = static_cast<unsigned>(ymd.month());
  char buf[32];
  switch (bucket) {
    case Bucket::Month: std::snprintf(buf, sizeof buf, "%04d-%02u", y, m); break;
    case Bucket::Quarter: std::snprintf(buf, sizeof buf, "%04d-Q%u", y, (m - 1) / 3 + 1); break;
    case Bucket::Year: std::snprintf(buf, sizeof buf, "%04d", y); break;
  }
  return buf;
}

TimeSeries time_series(std::span<const ScanRecord> records, std::span<const ContractCase> corpus,
                       std::span<const std::string> tools, Bucket bucket) {
  const std::set<std::string, std::less<>> wanted(tools.begin(), tools.end());
  std::map<VulnClass, std::set<std::string>> flagged;
  for (const auto& r : records) {
    if (!r.ok() || (!wanted.empty() && !wanted.contains(r.tool))) continue;
    for (const auto& [v, lines] : r.findings) flagged[v].insert(r.contract);
  }

  std::unordered_map<std::string_view, const ContractCase*> by_id;
  for (const auto& c : corpus) by_id.emplace(c.id, &c);

  std::set<std::string> missing;
  for (const auto& [v, ids] : flagged)
    for (const auto& id : ids) {
      auto it = by_id.find(id);
      if (it == by_id.end() || !it->second->created_at) missing.insert(id);
    }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw Error(ErrorKind::MissingMetadata, "no timestamp for: " + list);
  }

  TimeSeries ts{bucket, {}};
  for (const auto& [v, ids] : flagged) {
    auto& series = ts.classes[v];
    for (const auto& id : ids) {
      const auto& c = *by_id.at(id);
      auto& p = series[period_label(*c.created_at, bucket)];
      ++p.count;
      p.value += c.tx_value.value_or(0.0);
    }
  }
  return ts;
}

Table stats_table(const CorpusStats& s) {
  Table t{"corpus", {"type", "number", "loc"}, {}};
  for (const auto& r : s.rows) t.rows.push_back({r.type, std::to_string(r.number), std::to_string(r.loc)});
  t.rows.push_back({"Total", std::to_string(s.total_cases), std::to_string(s.total_loc)});
  return t;
}

Table metrics_table(std::span<const ToolEvaluation> evaluations) {
  Table t{"metrics", {"tool", "metric"}, {}};
  for (auto v : kAllClasses) t.columns.push_back(class_id(v));
  t.columns.push_back("Average");

  struct Field {
    const char* name;
    double MetricSet::*value;
    bool MetricSet::*defined;
    double ToolEvaluation::*avg;
  };
  static const Field fields[] = {
      {"Accuracy", &MetricSet::accuracy, nullptr, &ToolEvaluation::accuracy_avg},
      {"Precision", &MetricSet::precision, &MetricSet::precision_defined, &ToolEvaluation::precision_avg},
      {"Recall", &MetricSet::recall, &MetricSet::recall_defined, &ToolEvaluation::recall_avg},
      {"F1", &MetricSet::f1, nullptr, &ToolEvaluation::sf},
  };
  for (const auto& e : evaluations) {
    for (const auto& f : fields) {
      std::vector<std::string> row{e.tool, f.name};
      for (auto v : kAllClasses) {
        auto it = std::find_if(e.classes.begin(), e.classes.end(), [v](const ClassEvaluation& c) { return c.cls == v; });
        if (it == e.classes.end() || (f.defined && !(it->metrics.*f.defined))) row.push_back("-");
        else row.push_back(format_fixed(it->metrics.*f.value, 3));
      }
      row.push_back(format_fixed(e.*f.avg, 3));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table timing_table(std::span<const ToolEvaluation> evaluations) {
  Table t{"timing",
          {"tool", "total_s", "valid", "avg_s", "timeouts", "tool_errors", "harness_errors", "S_e"},
          {}};
  for (const auto& e : evaluations)
    t.rows.push_back({e.tool, format_fixed(e.time.total_s, 3), std::to_string(e.time.valid),
                      format_fixed(e.time.avg_s, 3), std::to_string(e.time.timeouts),
                      std::to_string(e.time.tool_errors), std::to_string(e.time.harness_errors),
                      format_fixed(e.se, 3)});
  return t;
}

Table compat_table(std::span<const ToolEvaluation> evaluations, const Registry& registry) {
  Table t{"compatibility", {"tool", "methods", "S_com", "S_c", "coverage", "S_u"}, {}};
  for (const auto& e : evaluations) {
    const auto& tool = registry.tool(e.tool);
    std::string methods;
    for (auto m : tool.methods) methods += (methods.empty() ? "" : "+") + std::string(method_name(m));
    t.rows.push_back({e.tool, methods, tool.max_solidity.str(), format_fixed(e.sc, 2),
                      std::to_string(tool.capabilities.size()), format_fixed(e.su, 1)});
  }
  return t;
}

Table weights_table(std::span<const NamedWeights> weights) {
  Table t{"weights", {"method", "S_f", "S_e", "S_c", "S_u", "lambda_max", "CI", "CR"}, {}};
  for (const auto& w : weights) {
    std::vector<std::string> row{w.method};
    for (double x : w.weights.values()) row.push_back(format_fixed(x, 4));
    if (w.consistency) {
      row.push_back(format_fixed(w.consistency->lambda_max, 4));
      row.push_back(format_fixed(w.consistency->ci, 4));
      row.push_back(format_fixed(w.consistency->cr, 4));
    } else {
      row.insert(row.end(), {"-", "-", "-"});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table scores_table(std::span<const ScoreTable> scores) {
  Table t{"scores", {"method", "rank", "tool", "score"}, {}};
  for (const auto& s : scores)
    for (const auto& r : s.rows) t.rows.push_back({s.method, std::to_string(r.rank), r.tool, format_fixed(r.score, 1)});
  return t;
}

Table distribution_table(std::span<const DistributionCell> cells) {
  Table t{"distribution", {"tool", "class", "count", "capable"}, {}};
  for (const auto& c : cells)
    t.rows.push_back({c.tool, class_id(c.cls), std::to_string(c.count), c.capable ? "true" : "false"});
  return t;
}

Table series_table(const TimeSeries& series) {
  Table t{"series", {"class", "period", "count", "value_ether"}, {}};
  for (const auto& [v, points] : series.classes)
    for (const auto& [period, p] : points)
      t.rows.push_back({class_id(v), period, std::to_string(p.count), format_fixed(p.value, 6)});
  return t;
}

std::vector<const Table*> ReportBundle::tables() const {
  std::vector<const Table*> out{&corpus, &metrics, &timing, &compat, &weights, &scores, &distribution};
  if (series) out.push_back(&*series);
  return out;
}

ReportBundle build_report(const ReportInputs& in) {
  if (!in.records || !in.registry) throw Error(ErrorKind::InvalidInput, "report needs records and a registry");
  const auto& registry = *in.registry;
  const auto evaluations = evaluate(*in.records, registry, in.corpus, in.mode);
  const auto indicators = indicator_matrix(evaluations);

  std::vector<NamedWeights> weights;
  weights.push_back({"EWM", ewm_weights(DecisionMatrix::from_indicators(indicators)), std::nullopt});
  for (const auto& [name, matrix] : in.ahp) {
    auto r = ahp(matrix);
    weights.push_back({name, r.weights, r.consistency});
  }
  std::vector<ScoreTable> scores;
  for (const auto& w : weights) scores.push_back(overall_scores(indicators, w.weights, w.method));

  const auto& records = in.records->records();
  ReportBundle b{stats_table(stats(in.corpus, registry.taxonomy())),
                 metrics_table(evaluations),
                 timing_table(evaluations),
                 compat_table(evaluations, registry),
                 weights_table(weights),
                 scores_table(scores),
                 distribution_table(class_distribution(records, registry.tools())),
                 std::nullopt};
  if (in.series_tools) b.series = series_table(time_series(records, in.corpus, *in.series_tools, in.bucket));
  return b;
}

void write_report(const ReportBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
    out << text;
  };
  nlohmann::ordered_json manifest;
  manifest["tables"] = nlohmann::ordered_json::array();
  for (const auto* t : bundle.tables()) {
    const auto csv = to_csv(*t);
    write(t->name + ".csv", csv);
    write(t->name + ".md", to_markdown(*t));
    manifest["tables"].push_back({{"name", t->name},
                                  {"columns", t->columns},
                                  {"rows", t->rows.size()},
                                  {"csv", t->name + ".csv"},
                                  {"markdown", t->name + ".md"},
                                  {"md5", md5_hex(csv)}});
  }
  write("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace scbench
