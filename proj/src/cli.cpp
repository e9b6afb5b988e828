#include "scbench/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "scbench/error.hpp"
#include "scbench/report.hpp"

namespace scbench {
namespace {

namespace fs = std::filesystem;

struct CorpusArgs {
  std::string path;
  bool scaled = false;
  std::string metadata;
};

void add_corpus_args(CLI::App* cmd, CorpusArgs& a, bool required = true) {
  auto* opt = cmd->add_option("--corpus", a.path, "labelled corpus root (or scaled corpus with --scaled)");
  if (required) opt->required();
  cmd->add_flag("--scaled", a.scaled, "treat the corpus as unlabelled mined contracts");
  cmd->add_option("--metadata", a.metadata, "sidecar CSV id,created_at,tx_value");
}

LoadResult load_corpus(const CorpusArgs& a, std::ostream& err) {
  auto r = a.scaled ? load_scaled(a.path) : load_labelled(a.path);
  if (!a.metadata.empty()) attach_metadata(r.cases, a.metadata);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  return r;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(std::ostream& out, const Table& t, const std::string& format) {
  if (format == "csv") out << to_csv(t);
  else if (format == "json") out << to_json(t).dump(2) << '\n';
  else out << to_markdown(t);
}

Registry load_registry(const std::string& path, const std::string& tools) {
  auto reg = Registry::load(path);
  if (!tools.empty()) reg = reg.select(split_list(tools));
  return reg;
}

void write_records(const fs::path& path, const std::vector<ScanRecord>& records) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (const auto& r : records) out << to_jsonl_line(r) << '\n';
}

}  // namespace

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark smart-contract analyzers and rank them on four quality indicators", "scbench"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "md";
  app.add_option("--format", format, "table format")
      ->check(CLI::IsMember({"csv", "md", "json"}))
      ->capture_default_str();

  // corpus
  auto* corpus_cmd = app.add_subcommand("corpus", "inspect and curate a corpus");
  corpus_cmd->require_subcommand(1);
  CorpusArgs stats_args, dedup_args, validate_args;
  auto* stats_cmd = corpus_cmd->add_subcommand("stats", "per-class case and LoC counts");
  stats_cmd->add_option("path", stats_args.path, "corpus root")->required();
  stats_cmd->add_flag("--scaled", stats_args.scaled, "unlabelled corpus");
  auto* dedup_cmd = corpus_cmd->add_subcommand("dedup", "pragma filter and deduplicate by normalized checksum");
  dedup_cmd->add_option("path", dedup_args.path, "directory or address,source CSV")->required();
  dedup_cmd->add_flag("--labelled", [&](std::int64_t) { dedup_args.scaled = false; }, "labelled layout");
  dedup_args.scaled = true;
  std::string dedup_out;
  dedup_cmd->add_option("--out", dedup_out, "write kept ids here");
  auto* validate_cmd = corpus_cmd->add_subcommand("validate", "check annotations and case invariants");
  validate_cmd->add_option("path", validate_args.path, "corpus root")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "scan every corpus case with every selected tool");
  std::string registry_path, tools, out_path, replay, raw_dir;
  CorpusArgs run_corpus;
  int jobs = 1;
  std::optional<double> timeout_s;
  run_cmd->add_option("--registry", registry_path, "tool/adapter registry JSON")->required();
  add_corpus_args(run_cmd, run_corpus);
  run_cmd->add_option("--out", out_path, "JSONL record file")->required();
  run_cmd->add_option("--jobs", jobs, "parallel scans")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--timeout", timeout_s, "per-scan timeout in seconds")->check(CLI::PositiveNumber);
  run_cmd->add_option("--tools", tools, "comma-separated tool subset");
  run_cmd->add_option("--replay", replay, "replay every tool from DIR/<tool>.jsonl");
  run_cmd->add_option("--raw-dir", raw_dir, "keep raw analyzer output here");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "per-class metrics, timing and indicators");
  std::string records_path;
  CorpusArgs metrics_corpus;
  bool strict = false;
  metrics_cmd->add_option("--registry", registry_path)->required();
  add_corpus_args(metrics_cmd, metrics_corpus);
  metrics_cmd->add_option("--records", records_path, "JSONL record file")->required();
  metrics_cmd->add_option("--tools", tools, "comma-separated tool subset");
  metrics_cmd->add_flag("--strict", strict, "count failed scans as negative predictions");

  // score
  auto* score_cmd = app.add_subcommand("score", "weight the indicators and rank the tools");
  std::string method, matrix_path, indicators_path;
  CorpusArgs score_corpus;
  score_cmd->add_option("--method", method)->required()->check(CLI::IsMember({"ewm", "ahp"}));
  score_cmd->add_option("--matrix", matrix_path, "pairwise judgment matrix (ahp)");
  auto* ind_opt = score_cmd->add_option("--indicators", indicators_path, "CSV tool,S_f,S_e,S_c,S_u");
  auto* score_reg = score_cmd->add_option("--registry", registry_path);
  add_corpus_args(score_cmd, score_corpus, false);
  score_cmd->add_option("--records", records_path);
  score_cmd->add_flag("--strict", strict);
  ind_opt->excludes(score_reg);

  // report
  auto* report_cmd = app.add_subcommand("report", "write every table of a campaign to a directory");
  CorpusArgs report_corpus;
  std::vector<std::string> ahp_specs;
  std::string series_tools, bucket = "quarter";
  bool series = false;
  report_cmd->add_option("--registry", registry_path)->required();
  add_corpus_args(report_cmd, report_corpus);
  report_cmd->add_option("--records", records_path)->required();
  report_cmd->add_option("--out", out_path, "output directory")->required();
  report_cmd->add_option("--ahp", ahp_specs, "NAME=FILE judgment matrix, repeatable");
  report_cmd->add_flag("--series", series, "emit the time series (needs --metadata)");
  report_cmd->add_option("--series-tools", series_tools, "union of these tools flags a contract");
  report_cmd->add_option("--bucket", bucket)->check(CLI::IsMember({"month", "quarter", "year"}))->capture_default_str();
  report_cmd->add_flag("--strict", strict);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const auto mode = strict ? EvalMode::Strict : EvalMode::ExcludeNonOk;
  try {
    if (*stats_cmd) {
      auto r = stats_args.scaled ? load_scaled(stats_args.path) : load_labelled(stats_args.path);
      emit(out, stats_table(stats(r.cases)), format);
      return kExitOk;
    }
    if (*dedup_cmd) {
      auto r = dedup_args.scaled ? load_scaled(dedup_args.path) : load_labelled(dedup_args.path);
      const auto loaded = r.cases.size();
      auto filtered = pragma_filter(std::move(r.cases));
      const auto no_pragma = loaded - filtered.size();
      auto d = dedup(std::move(filtered));
      out << "loaded " << loaded << "\nwithout pragma " << no_pragma << "\nduplicates " << d.removed << "\nkept "
          << d.cases.size() << '\n';
      if (!dedup_out.empty()) {
        std::ofstream f(dedup_out, std::ios::trunc);
        if (!f) throw Error(ErrorKind::Io, "cannot write " + dedup_out);
        for (const auto& c : d.cases) f << c.id << '\n';
      }
      return kExitOk;
    }
    if (*validate_cmd) {
      auto r = load_labelled(validate_args.path);
      auto problems = validate(r.cases);
      for (const auto& w : r.warnings) out << "warning: " << w << '\n';
      for (const auto& e : r.errors) out << "error: " << e << '\n';
      for (const auto& p : problems) out << "error: " << p << '\n';
      out << r.cases.size() << " cases, " << r.warnings.size() << " warnings, " << r.errors.size() + problems.size()
          << " errors\n";
      return r.errors.empty() && problems.empty() ? kExitOk : kExitValidation;
    }
    if (*run_cmd) {
      const auto reg = load_registry(registry_path, tools);
      const auto corpus = load_corpus(run_corpus, err);
      RunOptions opt;
      if (timeout_s) opt.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*timeout_s * 1000));
      if (!raw_dir.empty()) opt.raw_dir = raw_dir;
      if (!replay.empty()) opt.replay_dir = replay;
      const auto records = run_campaign(reg, corpus.cases, jobs, opt);
      write_records(out_path, records);
      std::map<std::string, std::size_t> by_status;
      for (const auto& r : records) ++by_status[std::string(status_name(r.status))];
      out << records.size() << " records";
      for (const auto& [s, n] : by_status) out << ", " << s << " " << n;
      out << '\n';
      return kExitOk;
    }
    if (*metrics_cmd) {
      const auto reg = load_registry(registry_path, tools);
      const auto corpus = load_corpus(metrics_corpus, err);
      const RecordSet records(read_jsonl(records_path));
      const auto evals = evaluate(records, reg, corpus.cases, mode);
      for (const auto& t : {metrics_table(evals), timing_table(evals), compat_table(evals, reg)}) {
        emit(out, t, format);
        out << '\n';
      }
      return kExitOk;
    }
    if (*score_cmd) {
      IndicatorMatrix indicators;
      if (!indicators_path.empty()) {
        indicators = read_indicator_csv(indicators_path);
      } else {
        if (registry_path.empty() || score_corpus.path.empty() || records_path.empty())
          throw CLI::RequiredError("--indicators or all of --registry, --corpus, --records");
        const auto reg = Registry::load(registry_path);
        const auto corpus = load_corpus(score_corpus, err);
        indicators = indicator_matrix(RecordSet(read_jsonl(records_path)), reg, corpus.cases, mode);
      }
      std::vector<NamedWeights> weights;
      if (method == "ewm") {
        weights.push_back({"EWM", ewm_weights(DecisionMatrix::from_indicators(indicators)), std::nullopt});
      } else {
        if (matrix_path.empty()) throw CLI::RequiredError("--matrix");
        auto r = ahp(PairwiseMatrix::load(matrix_path));
        weights.push_back({"AHP", r.weights, r.consistency});
        if (!r.consistency.consistent)
          err << "warning: consistency ratio " << format_fixed(r.consistency.cr, 4) << " exceeds 0.1\n";
      }
      const ScoreTable scores[] = {overall_scores(indicators, weights.front().weights, weights.front().method)};
      emit(out, weights_table(weights), format);
      out << '\n';
      emit(out, scores_table(scores), format);
      return kExitOk;
    }
    if (*report_cmd) {
      const auto reg = Registry::load(registry_path);
      const auto corpus = load_corpus(report_corpus, err);
      const RecordSet records(read_jsonl(records_path));
      ReportInputs in;
      in.records = &records;
      in.corpus = corpus.cases;
      in.registry = &reg;
      in.mode = mode;
      for (const auto& spec : ahp_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--ahp", "expected NAME=FILE");
        in.ahp.emplace_back(spec.substr(0, eq), PairwiseMatrix::load(spec.substr(eq + 1)));
      }
      if (series || !series_tools.empty()) in.series_tools = split_list(series_tools);
      in.bucket = parse_bucket(bucket);
      write_report(build_report(in), out_path);
      out << "report written to " << out_path << '\n';
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace scbench
