#include "scbench/runner.hpp"

#include <stdlib.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "process.hpp"
#include "scbench/error.hpp"

namespace scbench {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view output_kind_name(OutputKind k) noexcept {
  switch (k) {
    case OutputKind::Json: return "json";
    case OutputKind::Text: return "text";
    case OutputKind::Replay: return "replay";
    case OutputKind::Stub: return "stub";
  }
  return "?";
}

std::string_view status_name(ScanStatus s) noexcept {
  switch (s) {
    case ScanStatus::Ok: return "ok";
    case ScanStatus::Timeout: return "timeout";
    case ScanStatus::ToolError: return "tool_error";
    case ScanStatus::HarnessError: return "harness_error";
  }
  return "?";
}

ScanStatus parse_status(std::string_view s) {
  for (auto st : {ScanStatus::Ok, ScanStatus::Timeout, ScanStatus::ToolError, ScanStatus::HarnessError})
    if (s == status_name(st)) return st;
  throw Error(ErrorKind::InvalidInput, "unknown scan status '" + std::string(s) + "'");
}

namespace {

OutputKind parse_kind(std::string_view s) {
  for (auto k : {OutputKind::Json, OutputKind::Text, OutputKind::Replay, OutputKind::Stub})
    if (s == output_kind_name(k)) return k;
  throw Error(ErrorKind::InvalidRegistry, "unknown adapter kind '" + std::string(s) + "'");
}

std::optional<VulnClass> resolve_rule(const AdapterConfig& adapter, const std::string& rule, const Taxonomy& taxonomy) {
  if (auto it = adapter.rule_map.find(rule); it != adapter.rule_map.end()) return it->second;
  if (auto v = parse_class_id(rule)) return v;
  return taxonomy.try_class_for_marker(rule);
}

// Collects every value reachable through a dotted path, flattening arrays.
void walk(const json& node, std::span<const std::string> path, std::vector<const json*>& out) {
  if (node.is_array()) {
    for (const auto& item : node) walk(item, path, out);
    return;
  }
  if (path.empty()) {
    out.push_back(&node);
    return;
  }
  if (!node.is_object()) return;
  auto it = node.find(path.front());
  if (it == node.end()) return;
  walk(*it, path.subspan(1), out);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');)
    if (!part.empty()) parts.push_back(part);
  return parts;
}

void add_lines(const json& v, LineSet& lines) {
  if (v.is_number_integer()) lines.insert(v.get<int>());
  else if (v.is_array())
    for (const auto& x : v) add_lines(x, lines);
  else if (v.is_string()) {
    try {
      lines.insert(std::stoi(v.get<std::string>()));
    } catch (...) {
    }
  }
}

Annotations parse_json_findings(const AdapterConfig& a, const std::string& output, const Taxonomy& taxonomy) {
  const json doc = json::parse(output);
  std::vector<const json*> items;
  const auto path = split_path(a.json.findings_path);
  walk(doc, path, items);
  Annotations findings;
  const auto rule_path = split_path(a.json.rule_field);
  const auto lines_path = split_path(a.json.lines_field);
  for (const json* item : items) {
    std::vector<const json*> rules;
    walk(*item, rule_path, rules);
    if (rules.empty()) continue;
    const std::string rule = rules.front()->is_string() ? rules.front()->get<std::string>() : rules.front()->dump();
    auto cls = resolve_rule(a, rule, taxonomy);
    if (!cls) continue;
    auto& lines = findings[*cls];
    std::vector<const json*> line_values;
    walk(*item, lines_path, line_values);
    for (const json* lv : line_values) add_lines(*lv, lines);
  }
  return findings;
}

Annotations parse_text_findings(const AdapterConfig& a, const std::string& output, const Taxonomy& taxonomy) {
  const std::regex re(a.text.pattern);
  Annotations findings;
  std::istringstream in(output);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (!std::regex_search(line, m, re)) continue;
    auto cls = resolve_rule(a, m[static_cast<std::size_t>(a.text.rule_group)].str(), taxonomy);
    if (!cls) continue;
    auto& lines = findings[*cls];
    if (a.text.line_group > 0 && m[static_cast<std::size_t>(a.text.line_group)].matched) {
      try {
        lines.insert(std::stoi(m[static_cast<std::size_t>(a.text.line_group)].str()));
      } catch (...) {
      }
    }
  }
  return findings;
}

struct ReplayEntry {
  json value;
  std::size_t line = 0;
};

using ReplayTable = std::unordered_map<std::string, ReplayEntry>;

// Replay files are shared by every task of a campaign; parse each once.
const ReplayTable& replay_table(const fs::path& file) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<ReplayTable>> cache;
  std::lock_guard lock(mutex);
  auto key = fs::absolute(file).lexically_normal().string();
  std::error_code ec;
  key += "@" + std::to_string(fs::exists(file, ec) ? fs::last_write_time(file, ec).time_since_epoch().count() : 0);
  auto& slot = cache[key];
  if (!slot) {
    auto table = std::make_unique<ReplayTable>();
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::Io, "cannot open replay fixture " + file.string());
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
      ++n;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        auto j = json::parse(line);
        auto contract = j.at("contract").get<std::string>();
        (*table)[contract] = {std::move(j), n};
      } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, file.string() + ":" + std::to_string(n) + ": " + e.what());
      }
    }
    slot = std::move(table);
  }
  return *slot;
}

std::string sanitize(std::string_view id) {
  std::string out;
  for (char c : id) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_');
  return out;
}

std::string detect_solc(const std::string& source) {
  static const std::regex re(R"(pragma\s+solidity\s*[^0-9;]*([0-9]+\.[0-9]+\.[0-9]+))");
  std::smatch m;
  if (std::regex_search(source, m, re)) return m[1].str();
  return {};
}

std::string substitute(std::string arg, const std::map<std::string, std::string>& vars) {
  for (const auto& [key, value] : vars) {
    const std::string token = "{" + key + "}";
    for (auto pos = arg.find(token); pos != std::string::npos; pos = arg.find(token, pos + value.size()))
      arg.replace(pos, token.size(), value);
  }
  return arg;
}

class TempDir {
 public:
  TempDir() {
    auto tmpl = (fs::temp_directory_path() / "scbench-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw Error(ErrorKind::Io, "mkdtemp failed");
    path_ = tmpl;
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, std::string_view content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
}

ScanRecord replay_scan(const ToolDescriptor& tool, const AdapterConfig& adapter, const fs::path& dir,
                       const ContractCase& contract, const Taxonomy& taxonomy) {
  ScanRecord rec{tool.name, contract.id};
  const fs::path file = dir / (tool.name + ".jsonl");
  const ReplayTable* table = nullptr;
  try {
    table = &replay_table(file);
  } catch (const Error&) {
    rec.raw_ref = file.string();
    return rec;
  }
  auto it = table->find(contract.id);
  if (it == table->end()) {
    rec.raw_ref = file.string();
    return rec;
  }
  const auto& j = it->second.value;
  rec.raw_ref = file.string() + "#L" + std::to_string(it->second.line);
  try {
    rec.status = parse_status(j.value("status", std::string("ok")));
    rec.duration_ms = j.value("duration_ms", std::int64_t{0});
    if (rec.ok()) {
      for (const auto& f : j.value("findings", json::array())) {
        const std::string rule = f.contains("rule") ? f.at("rule").get<std::string>() : f.at("class").get<std::string>();
        auto cls = resolve_rule(adapter, rule, taxonomy);
        if (!cls) continue;
        auto& lines = rec.findings[*cls];
        if (f.contains("lines")) add_lines(f.at("lines"), lines);
      }
    }
  } catch (const std::exception&) {
    rec.status = ScanStatus::HarnessError;
    rec.findings.clear();
  }
  return rec;
}

ScanRecord process_scan(const ToolDescriptor& tool, const AdapterConfig& adapter, const ContractCase& contract,
                        const RunOptions& options, const Taxonomy& taxonomy) {
  ScanRecord rec{tool.name, contract.id};
  const auto timeout = options.timeout.value_or(adapter.timeout);
  detail::ProcessResult run;
  try {
    TempDir tmp;
    auto name = fs::path(contract.id).filename().string();
    if (name.empty()) name = "contract.sol";
    if (fs::path(name).extension() != ".sol") name = sanitize(name) + ".sol";
    const fs::path input = tmp.path() / name;
    write_file(input, contract.source);
    const std::map<std::string, std::string> vars{
        {"input", input.string()}, {"solc", detect_solc(contract.source)}, {"name", fs::path(name).stem().string()}};
    std::vector<std::string> argv;
    for (const auto& a : adapter.command) argv.push_back(substitute(a, vars));
    run = detail::run_process(argv, timeout, tmp.path());
  } catch (const Error&) {
    rec.status = ScanStatus::HarnessError;
    return rec;
  }

  if (!options.raw_dir.empty()) {
    const fs::path raw = options.raw_dir / sanitize(tool.name) / (sanitize(contract.id) + ".out");
    try {
      write_file(raw, run.out);
      if (!run.err.empty()) write_file(fs::path(raw).replace_extension(".err"), run.err);
      rec.raw_ref = raw.generic_string();
    } catch (const Error&) {
      rec.status = ScanStatus::HarnessError;
      rec.duration_ms = run.elapsed.count();
      return rec;
    }
  }

  if (run.timed_out) {
    rec.status = ScanStatus::Timeout;
    rec.duration_ms = timeout.count();
    return rec;
  }
  rec.duration_ms = run.elapsed.count();
  const auto& ok_codes = adapter.ok_exit_codes;
  if (run.exit_code < 0 ||
      (!ok_codes.empty() && std::find(ok_codes.begin(), ok_codes.end(), run.exit_code) == ok_codes.end())) {
    rec.status = ScanStatus::ToolError;
    return rec;
  }
  try {
    rec.findings = adapter.kind == OutputKind::Json ? parse_json_findings(adapter, run.out, taxonomy)
                                                    : parse_text_findings(adapter, run.out, taxonomy);
    rec.status = ScanStatus::Ok;
  } catch (const std::exception&) {
    // unparseable report
    rec.status = ScanStatus::ToolError;
    rec.findings.clear();
  }
  return rec;
}

}  // namespace

AdapterConfig adapter_from_json(const json& j, const Taxonomy& taxonomy) {
  AdapterConfig a;
  try {
    a.id = j.at("id").get<std::string>();
    a.kind = parse_kind(j.value("kind", std::string("stub")));
    for (const auto& c : j.value("command", json::array())) a.command.push_back(c.get<std::string>());
    if (j.contains("timeout_s"))
      a.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(j.at("timeout_s").get<double>() * 1000.0));
    if (j.contains("ok_exit_codes")) {
      const auto& codes = j.at("ok_exit_codes");
      a.ok_exit_codes.clear();
      if (!(codes.is_string() && codes.get<std::string>() == "any"))
        for (const auto& c : codes) a.ok_exit_codes.push_back(c.get<int>());
    }
    const auto rules = j.value("rule_map", json::object());
    for (const auto& [rule, target] : rules.items()) {
      auto v = parse_class_id(target.get<std::string>());
      if (!v) v = taxonomy.try_class_for_marker(target.get<std::string>());
      if (!v) throw Error(ErrorKind::InvalidRegistry, a.id + ": rule '" + rule + "' maps outside V1..V10");
      a.rule_map.emplace(rule, *v);
    }
    if (j.contains("fixture")) a.fixture = j.at("fixture").get<std::string>();
    if (j.contains("json")) {
      const auto& js = j.at("json");
      a.json.findings_path = js.value("findings_path", a.json.findings_path);
      a.json.rule_field = js.value("rule_field", a.json.rule_field);
      a.json.lines_field = js.value("lines_field", a.json.lines_field);
    }
    if (j.contains("text")) {
      const auto& ts = j.at("text");
      a.text.pattern = ts.at("pattern").get<std::string>();
      a.text.rule_group = ts.value("rule_group", 1);
      a.text.line_group = ts.value("line_group", 0);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidRegistry, std::string("adapter record: ") + e.what());
  }
  switch (a.kind) {
    case OutputKind::Json:
    case OutputKind::Text:
      if (a.command.empty()) throw Error(ErrorKind::InvalidRegistry, a.id + ": command required");
      if (a.kind == OutputKind::Text) {
        if (a.text.pattern.empty()) throw Error(ErrorKind::InvalidRegistry, a.id + ": text.pattern required");
        try {
          std::regex probe(a.text.pattern);
        } catch (const std::regex_error& e) {
          throw Error(ErrorKind::InvalidRegistry, a.id + ": bad text.pattern: " + e.what());
        }
      }
      break;
    case OutputKind::Replay:
      if (a.fixture.empty()) throw Error(ErrorKind::InvalidRegistry, a.id + ": replay adapter needs a fixture path");
      if (!a.command.empty()) throw Error(ErrorKind::InvalidRegistry, a.id + ": replay adapter takes no command");
      break;
    case OutputKind::Stub:
      break;
  }
  if (a.timeout.count() <= 0) throw Error(ErrorKind::InvalidRegistry, a.id + ": timeout must be positive");
  return a;
}

Registry Registry::from_json(const json& j, const fs::path& base_dir) {
  Registry r;
  try {
    if (j.contains("taxonomy")) {
      fs::path p = j.at("taxonomy").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      r.taxonomy_ = Taxonomy::load(p.string());
    }
    if (j.contains("scale")) {
      r.scale_.low = j.at("scale").value("low", r.scale_.low);
      r.scale_.high = j.at("scale").value("high", r.scale_.high);
      if (r.scale_.high <= r.scale_.low) throw Error(ErrorKind::InvalidRegistry, "scale.high must exceed scale.low");
    }
    AdapterConfig stub;
    stub.id = "stub";
    r.adapters_.emplace(stub.id, stub);
    for (const auto& a : j.value("adapters", json::array())) {
      auto cfg = adapter_from_json(a, r.taxonomy_);
      if (cfg.kind == OutputKind::Replay && cfg.fixture.is_relative()) cfg.fixture = (base_dir / cfg.fixture).lexically_normal();
      auto id = cfg.id;
      r.adapters_.insert_or_assign(id, std::move(cfg));
    }
    for (const auto& t : j.at("tools")) {
      auto tool = tool_from_json(t, r.scale_);
      if (tool.adapter_id.empty()) tool.adapter_id = "stub";
      if (!r.adapters_.contains(tool.adapter_id))
        throw Error(ErrorKind::InvalidRegistry, tool.name + ": unknown adapter '" + tool.adapter_id + "'");
      for (const auto& existing : r.tools_)
        if (existing.name == tool.name) throw Error(ErrorKind::InvalidRegistry, "duplicate tool " + tool.name);
      r.tools_.push_back(std::move(tool));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidRegistry, e.what());
  }
  return r;
}

Registry Registry::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open registry " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidRegistry, path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

const ToolDescriptor& Registry::tool(std::string_view name) const {
  for (const auto& t : tools_)
    if (t.name == name) return t;
  throw Error(ErrorKind::InvalidInput, "unknown tool '" + std::string(name) + "'");
}

const AdapterConfig& Registry::adapter_for(const ToolDescriptor& tool) const {
  auto it = adapters_.find(tool.adapter_id);
  if (it == adapters_.end()) throw Error(ErrorKind::InvalidRegistry, tool.name + ": unknown adapter");
  return it->second;
}

Registry Registry::select(std::span<const std::string> names) const {
  Registry r = *this;
  r.tools_.clear();
  for (const auto& n : names) r.tools_.push_back(tool(n));
  return r;
}

ordered_json to_json(const ScanRecord& r) {
  ordered_json j;
  j["tool"] = r.tool;
  j["contract"] = r.contract;
  j["status"] = std::string(status_name(r.status));
  j["duration_ms"] = r.duration_ms;
  auto& findings = j["findings"] = ordered_json::array();
  for (const auto& [cls, lines] : r.findings) {
    ordered_json f;
    f["class"] = class_id(cls);
    f["lines"] = std::vector<int>(lines.begin(), lines.end());
    findings.push_back(std::move(f));
  }
  j["raw_ref"] = r.raw_ref;
  return j;
}

ScanRecord record_from_json(const json& j) {
  ScanRecord r;
  try {
    r.tool = j.at("tool").get<std::string>();
    r.contract = j.at("contract").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.duration_ms = j.at("duration_ms").get<std::int64_t>();
    for (const auto& f : j.at("findings")) {
      auto cls = parse_class_id(f.at("class").get<std::string>());
      if (!cls) throw Error(ErrorKind::InvalidInput, "record finding class " + f.at("class").dump());
      auto& lines = r.findings[*cls];
      for (const auto& l : f.value("lines", json::array())) lines.insert(l.get<int>());
    }
    r.raw_ref = j.value("raw_ref", std::string{});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("scan record: ") + e.what());
  }
  if (r.duration_ms < 0) throw Error(ErrorKind::InvalidInput, "scan record: negative duration");
  if (!r.ok() && !r.findings.empty()) throw Error(ErrorKind::InvalidInput, "scan record: findings on a failed scan");
  return r;
}

std::string to_jsonl_line(const ScanRecord& r) { return to_json(r).dump(); }

std::vector<ScanRecord> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<ScanRecord> out;
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::InvalidInput, path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

ScanRecord run_scan(const ToolDescriptor& tool, const AdapterConfig& adapter, const ContractCase& contract,
                    const RunOptions& options, const Taxonomy& taxonomy) {
  if (options.replay_dir) return replay_scan(tool, adapter, *options.replay_dir, contract, taxonomy);
  switch (adapter.kind) {
    case OutputKind::Stub: {
      // perfect detector over the declared capabilities
      ScanRecord rec{tool.name, contract.id, ScanStatus::Ok};
      for (const auto& [cls, lines] : contract.expected)
        if (capability(tool, cls)) rec.findings[cls] = lines;
      return rec;
    }
    case OutputKind::Replay:
      return replay_scan(tool, adapter, adapter.fixture, contract, taxonomy);
    case OutputKind::Json:
    case OutputKind::Text:
      return process_scan(tool, adapter, contract, options, taxonomy);
  }
  return {tool.name, contract.id};
}

void execute_campaign(const Registry& registry, std::span<const ContractCase> corpus, int parallelism,
                      const RunOptions& options, const RecordSink& sink) {
  if (parallelism < 1) throw Error(ErrorKind::InvalidInput, "parallelism must be at least 1");
  const auto& tools = registry.tools();
  std::vector<const AdapterConfig*> adapters;
  for (const auto& t : tools) adapters.push_back(&registry.adapter_for(t));

  const std::size_t total = tools.size() * corpus.size();
  if (total == 0) return;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex sink_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t ti = task / corpus.size();
      const std::size_t ci = task % corpus.size();
      ScanRecord rec;
      try {
        rec = run_scan(tools[ti], *adapters[ti], corpus[ci], options, registry.taxonomy());
      } catch (const std::exception&) {
        rec = ScanRecord{tools[ti].name, corpus[ci].id, ScanStatus::HarnessError};
      }
      std::lock_guard lock(sink_mutex);
      if (abort.load()) return;
      try {
        sink(rec);
      } catch (...) {
        failure = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  const auto n = static_cast<std::size_t>(parallelism) < total ? static_cast<std::size_t>(parallelism) : total;
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<ScanRecord> run_campaign(const Registry& registry, std::span<const ContractCase> corpus,
                                     int parallelism, const RunOptions& options) {
  std::vector<ScanRecord> out;
  out.reserve(registry.tools().size() * corpus.size());
  execute_campaign(registry, corpus, parallelism, options, [&](const ScanRecord& r) { out.push_back(r); });
  std::map<std::string_view, std::size_t> tool_pos, case_pos;
  for (std::size_t i = 0; i < registry.tools().size(); ++i) tool_pos.emplace(registry.tools()[i].name, i);
  for (std::size_t i = 0; i < corpus.size(); ++i) case_pos.emplace(corpus[i].id, i);
  std::sort(out.begin(), out.end(), [&](const ScanRecord& a, const ScanRecord& b) {
    const auto ka = std::pair{tool_pos.at(a.tool), case_pos.at(a.contract)};
    const auto kb = std::pair{tool_pos.at(b.tool), case_pos.at(b.contract)};
    return ka < kb;
  });
  return out;
}

RecordSet::RecordSet(std::vector<ScanRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto [it, inserted] = index_.emplace(std::pair{records_[i].tool, records_[i].contract}, i);
    if (!inserted)
      throw Error(ErrorKind::InvalidInput,
                  "duplicate record for (" + records_[i].tool + ", " + records_[i].contract + ")");
  }
}

const ScanRecord* RecordSet::find(std::string_view tool, std::string_view contract) const {
  auto it = index_.find(std::pair{std::string(tool), std::string(contract)});
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::vector<const ScanRecord*> RecordSet::for_tool(std::string_view tool) const {
  std::vector<const ScanRecord*> out;
  for (const auto& r : records_)
    if (r.tool == tool) out.push_back(&r);
  return out;
}

std::optional<bool> RecordSet::predicted(std::string_view tool, std::string_view contract, VulnClass v) const {
  const ScanRecord* r = find(tool, contract);
  if (!r)
    throw Error(ErrorKind::MissingRecord, "no record for (" + std::string(tool) + ", " + std::string(contract) + ")");
  if (!r->ok()) return std::nullopt;
  return r->findings.contains(v);
}

std::vector<std::string> capability_violations(const ScanRecord& r, const ToolDescriptor& tool) {
  std::vector<std::string> out;
  for (const auto& [cls, _] : r.findings)
    if (!capability(tool, cls))
      out.push_back(tool.name + " reported " + class_id(cls) + " on " + r.contract + " outside its capability set");
  return out;
}

}  // namespace scbench
