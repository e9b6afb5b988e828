// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "scbench/corpus.hpp"
#include "scbench/error.hpp"
#include "scbench/mcdm.hpp"
#include "scbench/metrics.hpp"
#include "scbench/report.hpp"
#include "scbench/runner.hpp"
#include "support.hpp"

using namespace scbench;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double v, int d = 3) { return format_fixed(v, d); }

struct Published {
  json doc;
  const json& tools() const { return doc["tools"]; }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& t : tools()) out.push_back(t["tool"]);
    return out;
  }
};

IndicatorMatrix published_indicators(const Published& p) {
  IndicatorMatrix m;
  for (const auto& t : p.tools())
    m.rows.push_back({t["tool"], t["f1_avg"], t["S_e"], t["S_c"], t["S_u"]});
  return m;
}

Outcome f1_identity(const Published& p) {
  Outcome o;
  const auto excluded = p.doc["f1_inconsistent"].get<std::set<std::string>>();
  int checked = 0;
  for (const auto& t : p.tools()) {
    const std::string name = t["tool"];
    const double sf = functional_score(t["precision_avg"].get<double>(), t["recall_avg"].get<double>());
    const double printed = t["f1_avg"];
    if (excluded.contains(name)) {
      o.require(std::abs(sf - printed) > 0.002, name + " was expected to be inconsistent");
      o.note("validation note: " + name + " average F1 recomputes to " + fmt(sf) + " against printed " + fmt(printed));
      continue;
    }
    ++checked;
    o.require(std::abs(sf - printed) <= 0.002, name + ": " + fmt(sf) + " vs " + fmt(printed));
  }
  o.require(checked == 12, "expected 12 consistent tools, checked " + std::to_string(checked));
  return o;
}

Outcome efficiency(const Published& p) {
  Outcome o;
  std::vector<double> avg;
  for (const auto& t : p.tools()) avg.push_back(timing_from_totals(t["total_s"], t["valid"]).avg_s);
  const auto se = efficiency_scores(avg);
  double worst = 0;
  for (std::size_t i = 0; i < se.size(); ++i) {
    const auto& t = p.tools()[i];
    const double printed = t["S_e"];
    worst = std::max(worst, std::abs(se[i] - printed));
    o.require(std::abs(se[i] - printed) <= 0.02, t["tool"].get<std::string>() + ": " + fmt(se[i]) + " vs " + fmt(printed));
    if (t["tool"] == "Slither") o.require(se[i] == 1.0, "Slither is not the fastest tool");
    if (t["tool"] == "sFuzz") o.require(se[i] == 0.0, "sFuzz is not the slowest tool");
    if (t["tool"] == "ConFuzzius") o.require(std::abs(se[i] - 0.007) <= 0.005, "ConFuzzius " + fmt(se[i], 4));
  }
  o.note("max deviation " + fmt(worst));
  return o;
}

Outcome compat_usability(const Published& p, const Registry& reg) {
  Outcome o;
  for (const auto& t : p.tools()) {
    const std::string name = t["tool"];
    const double sc = compat_score(VersionId::parse(t["S_com"].get<std::string>()), reg.scale());
    const double su = usability_score(reg.tool(name), reg.taxonomy().selected());
    o.require(sc == t["S_c"].get<double>(), name + " S_c " + fmt(sc, 2));
    o.require(su == t["S_u"].get<double>(), name + " S_u " + fmt(su, 1));
  }
  return o;
}

std::string show(const WeightVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + fmt(w[i]);
  return s + ")";
}

Outcome ewm_check(const Published& p) {
  Outcome o;
  const auto w = ewm_weights(DecisionMatrix::from_indicators(published_indicators(p)));
  const auto expected = p.doc["weights"]["EWM"].get<std::vector<double>>();
  const char* names[] = {"S_f", "S_e", "S_c", "S_u"};
  for (std::size_t i = 0; i < 4; ++i)
    o.require(std::abs(w[i] - expected[i]) <= 0.02,
              std::string(names[i]) + " " + fmt(w[i]) + " vs " + fmt(expected[i]) + " (off by " +
                  fmt(std::abs(w[i] - expected[i])) + ")");
  o.note("weights " + show(w));
  return o;
}

Outcome ahp_check(const Published& p) {
  Outcome o;
  for (const auto* name : {"AHP1", "AHP2"}) {
    const auto file = testing::data() / "ahp" / (name == std::string("AHP1") ? "a1.txt" : "a2.txt");
    const auto r = ahp(PairwiseMatrix::load(file.string()));
    const auto expected = p.doc["weights"][name].get<std::vector<double>>();
    for (std::size_t i = 0; i < 4; ++i)
      o.require(std::abs(r.weights[i] - expected[i]) <= 0.005, std::string(name) + " w" + std::to_string(i + 1));
    o.require(r.consistency.cr <= 0.1, std::string(name) + " CR " + fmt(r.consistency.cr, 4));
    o.note(std::string(name) + " " + show(r.weights) + " CR " + fmt(r.consistency.cr, 4));
  }
  return o;
}

Outcome overall(const Published& p) {
  Outcome o;
  const auto indicators = published_indicators(p);
  std::vector<std::pair<std::string, WeightVector>> methods{
      {"EWM", ewm_weights(DecisionMatrix::from_indicators(indicators))},
      {"AHP1", ahp(PairwiseMatrix::load((testing::data() / "ahp/a1.txt").string())).weights},
      {"AHP2", ahp(PairwiseMatrix::load((testing::data() / "ahp/a2.txt").string())).weights}};
  int outside = 0;
  double worst = 0;
  std::string worst_at;
  for (const auto& [method, w] : methods) {
    const auto table = overall_scores(indicators, w, method);
    o.require(table.rows[0].tool == "Slither", method + ": rank 1 is " + table.rows[0].tool);
    const std::set<std::string> top{table.rows[0].tool, table.rows[1].tool, table.rows[2].tool};
    o.require(top == std::set<std::string>{"Slither", "Solhint", "Mythril"},
              method + ": top three " + table.rows[0].tool + ", " + table.rows[1].tool + ", " + table.rows[2].tool);
    for (const auto& row : table.rows) {
      const auto it = std::find_if(p.tools().begin(), p.tools().end(), [&](const json& t) { return t["tool"] == row.tool; });
      const double printed = (*it)["score"][method];
      const double dev = std::abs(row.score - printed);
      if (dev > 4.0) ++outside;
      if (dev > worst) {
        worst = dev;
        worst_at = method + " " + row.tool + " " + fmt(row.score, 1) + " vs " + fmt(printed, 1);
      }
    }
  }
  o.require(outside == 0, std::to_string(outside) + " of 39 scores outside +-4.0; worst " + worst_at);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> u(0, 1), v(0.05, 20);
  double ewm_err = 0, ahp_err = 0, recover_err = 0, cr_max = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 2 + rng() % 14, n = 3 + rng() % 4;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& r : rows)
      for (auto& x : r) x = rng() % 5 == 0 ? std::round(u(rng) * 4) / 4 : u(rng);
    const auto w = ewm_weights(DecisionMatrix::from_rows(rows));
    const auto ref = oracle::ewm(rows);
    for (std::size_t j = 0; j < n; ++j) ewm_err = std::max(ewm_err, std::abs(w[j] - static_cast<double>(ref[j])));
  }
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + rng() % 4;
    std::vector<double> pv(n);
    for (auto& x : pv) x = v(rng);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = pv[i] / pv[j];
    const auto r = ahp(PairwiseMatrix::from_rows(a));
    const auto ref = oracle::ahp(a);
    const double total = std::accumulate(pv.begin(), pv.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      ahp_err = std::max(ahp_err, std::abs(r.weights[i] - static_cast<double>(ref.weights[i])));
      recover_err = std::max(recover_err, std::abs(r.weights[i] - pv[i] / total));
    }
    ahp_err = std::max(ahp_err, std::abs(r.consistency.lambda_max - static_cast<double>(ref.lambda_max)));
    cr_max = std::max(cr_max, r.consistency.cr);
  }
  o.require(ewm_err <= 1e-6, "EWM max error " + std::to_string(ewm_err));
  o.require(ahp_err <= 1e-6, "AHP max error " + std::to_string(ahp_err));
  o.require(recover_err <= 1e-6, "priority recovery error " + std::to_string(recover_err));
  o.require(cr_max < 1e-6, "max CR " + std::to_string(cr_max));
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0, 1), judgment(1, 9);
  auto valid_weights = [](const WeightVector& w) {
    double s = 0;
    for (double x : w.values()) {
      if (x < 0) return false;
      s += x;
    }
    return std::abs(s - 1) <= 1e-9;
  };
  int weight_fail = 0, f1_fail = 0, mono_fail = 0, idem_fail = 0, lexer_fail = 0, delim_fail = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 2 + rng() % 10, n = 2 + rng() % 5;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& r : rows)
      for (auto& x : r) x = u(rng);
    if (!valid_weights(ewm_weights(DecisionMatrix::from_rows(rows)))) ++weight_fail;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        a[i][j] = rng() % 2 ? judgment(rng) : 1 / judgment(rng);
        a[j][i] = 1 / a[i][j];
      }
    if (!valid_weights(ahp(PairwiseMatrix::from_rows(a)).weights)) ++weight_fail;
  }
  for (int k = 0; k < 2000; ++k) {
    ConfusionMatrix cm{rng() % 30, rng() % 30, rng() % 30, rng() % 30};
    if (cm.total() == 0) continue;
    const auto s = prf(cm);
    if (s.precision_defined && s.recall_defined &&
        (s.f1 < std::min(s.precision, s.recall) - 1e-12 || s.f1 > std::max(s.precision, s.recall) + 1e-12))
      ++f1_fail;
    auto more = cm;
    more.tp += 1 + rng() % 5;
    const auto t = prf(more);
    if (t.recall < s.recall - 1e-12 || t.precision < s.precision - 1e-12 || t.f1 < s.f1 - 1e-12) ++mono_fail;
  }
  std::vector<ContractCase> cases;
  for (int k = 0; k < 50; ++k) {
    const auto src = testing::random_source(rng);
    const auto norm = normalize_source(src);
    if (normalize_source(norm) != norm) ++idem_fail;
    if (norm != oracle::normalize(src)) ++lexer_fail;
    // literal contents survive with their comment delimiters intact
    auto expected = oracle::string_literals(src);
    for (auto& s : expected) std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (oracle::string_literals(norm) != expected) ++delim_fail;
    ContractCase c;
    c.id = std::to_string(k);
    c.source = src;
    cases.push_back(c);
    if (k % 4 == 0) {
      c.id += "-copy";
      c.source = "// copy\n" + src;
      cases.push_back(c);
    }
  }
  const auto once = dedup(cases);
  const auto twice = dedup(once.cases);
  if (twice.removed != 0 || twice.cases.size() != once.cases.size()) ++idem_fail;

  o.require(weight_fail == 0, std::to_string(weight_fail) + " weight vectors invalid");
  o.require(f1_fail == 0, std::to_string(f1_fail) + " F1 values outside [min, max] of P and R");
  o.require(mono_fail == 0, std::to_string(mono_fail) + " monotonicity violations");
  o.require(idem_fail == 0, std::to_string(idem_fail) + " idempotence violations");
  o.require(lexer_fail == 0, std::to_string(lexer_fail) + " disagreements with the oracle lexer");
  o.require(delim_fail == 0, std::to_string(delim_fail) + " string literals altered");
  return o;
}

Outcome campaign_shape(const Registry& reg, const std::vector<ContractCase>& corpus, const Published& p) {
  Outcome o;
  o.require(reg.tools().size() == 13, "registry holds " + std::to_string(reg.tools().size()) + " tools");
  const auto serial = run_campaign(reg, corpus, 1);
  const auto parallel = run_campaign(reg, corpus, 8);
  o.require(serial.size() == 13 * 389, std::to_string(serial.size()) + " records");
  o.require(serial == parallel, "parallel campaign differs from the serial one");
  std::string a, b;
  for (const auto& r : serial) a += to_jsonl_line(r) + "\n";
  for (const auto& r : parallel) b += to_jsonl_line(r) + "\n";
  o.require(a == b, "serialized campaigns differ");
  const auto s = stats(corpus);
  o.require(s.total_cases == p.doc["corpus"]["cases"].get<std::size_t>(), "total " + std::to_string(s.total_cases));
  o.require(s.rows[kClassCount].number == p.doc["corpus"]["safe"].get<std::size_t>(),
            "safe " + std::to_string(s.rows[kClassCount].number));
  const auto per_class = p.doc["corpus"]["classes"].get<std::vector<std::size_t>>();
  for (std::size_t i = 0; i < kClassCount; ++i)
    o.require(s.rows[i].number == per_class[i], s.rows[i].type + " " + std::to_string(s.rows[i].number));
  return o;
}

Outcome round_trip(const std::vector<ContractCase>& corpus) {
  Outcome o;
  const std::string id = "reentrancy/reentrancy_insecure.sol";
  const auto source = testing::slurp(testing::fixtures() / "labelled" / id);
  const auto ann = parse_annotations(source);
  o.require(ann.labels == Annotations{{VulnClass::V1, {17}}}, "annotations differ from {(V1, {17})}");
  o.require(ann.warnings.empty() && ann.errors.empty(), "annotation diagnostics present");
  const auto it = std::find_if(corpus.begin(), corpus.end(), [&](const ContractCase& c) { return c.id == id; });
  o.require(it != corpus.end() && it->expected == ann.labels, "loaded case does not carry the annotation");

  testing::TempDir dir;
  testing::write(dir.path() / "Probe.jsonl",
                 json{{"contract", id}, {"status", "ok"}, {"findings", {{{"rule", "REENTRANCY"}, {"lines", {17}}}}}}.dump() + "\n");
  const auto reg = Registry::from_json(json{
      {"adapters", {{{"id", "replay"}, {"kind", "replay"}, {"fixture", dir.path().string()}}}},
      {"tools", {{{"name", "Probe"}, {"capabilities", {"V1"}}, {"max_solidity", "0.5.x"}, {"adapter", "replay"}}}}});
  ContractCase c;
  c.id = id;
  c.source = source;
  c.expected = ann.labels;
  const std::vector<ContractCase> one{c};
  const RecordSet records(run_campaign(reg, one, 1));
  o.require(records.records().at(0).findings == ann.labels, "replayed findings differ");
  const auto cm = confusion(records, reg.tool("Probe"), VulnClass::V1, one);
  o.require(cm == ConfusionMatrix{1, 0, 0, 0}, "confusion TP=" + std::to_string(cm.tp) + " FP=" + std::to_string(cm.fp) +
                                                   " FN=" + std::to_string(cm.fn) + " TN=" + std::to_string(cm.tn));
  return o;
}

}  // namespace

int main() {
  Published published{json::parse(testing::slurp(testing::data() / "reference/published.json"))};
  const auto registry = Registry::load(testing::data() / "registry.json");
  const auto corpus = load_labelled(testing::fixtures()).cases;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"F1 identity", [&] { return f1_identity(published); }},
      {"Efficiency scores", [&] { return efficiency(published); }},
      {"Compatibility and usability", [&] { return compat_usability(published, registry); }},
      {"EWM weights", [&] { return ewm_check(published); }},
      {"AHP weights", [&] { return ahp_check(published); }},
      {"Overall scores", [&] { return overall(published); }},
      {"MCDM oracle equivalence", [] { return oracle_equivalence(); }},
      {"Property suites", [] { return properties(); }},
      {"Campaign shape", [&] { return campaign_shape(registry, corpus, published); }},
      {"Annotation round-trip", [&] { return round_trip(corpus); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first
              << (detail.empty() ? "" : "  [" + detail + "]") << '\n';
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
