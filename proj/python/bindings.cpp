// Python surface of the library. Values cross the boundary as plain lists,
// dicts and floats so callers never need the C++ types.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "scbench/cli.hpp"
#include "scbench/corpus.hpp"
#include "scbench/error.hpp"
#include "scbench/mcdm.hpp"
#include "scbench/metrics.hpp"
#include "scbench/runner.hpp"

namespace py = pybind11;
using namespace scbench;

namespace {

py::dict labels_dict(const Annotations& a) {
  py::dict d;
  for (const auto& [cls, lines] : a) d[py::str(class_id(cls))] = std::vector<int>(lines.begin(), lines.end());
  return d;
}

py::dict metrics_dict(const MetricSet& m) {
  py::dict d;
  d["accuracy"] = m.accuracy;
  d["precision"] = m.precision;
  d["recall"] = m.recall;
  d["f1"] = m.f1;
  d["precision_defined"] = m.precision_defined;
  d["recall_defined"] = m.recall_defined;
  return d;
}

py::dict consistency_dict(const ConsistencyReport& c) {
  py::dict d;
  d["lambda_max"] = c.lambda_max;
  d["ci"] = c.ci;
  d["ri"] = c.ri;
  d["cr"] = c.cr;
  d["consistent"] = c.consistent;
  return d;
}

IndicatorMatrix indicators_from(const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  IndicatorMatrix m;
  for (const auto& [tool, v] : rows) {
    if (v.size() != 4) throw Error(ErrorKind::DimensionMismatch, tool + " needs 4 indicators");
    m.rows.push_back({tool, v[0], v[1], v[2], v[3]});
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smart-contract analyzer benchmarking core";

  py::exception<Error>(m, "ScbenchError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto type = py::module_::import("scbench._core").attr("ScbenchError");
      py::object exc = type(e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("class_ids", [] {
    std::vector<std::string> out;
    for (auto v : kAllClasses) out.push_back(class_id(v));
    return out;
  });
  m.def("class_for_marker", [](const std::string& marker) -> std::optional<std::string> {
    const auto v = Taxonomy::builtin().try_class_for_marker(marker);
    return v ? std::optional(class_id(*v)) : std::nullopt;
  }, py::arg("marker"));

  m.def("normalize_source", [](const std::string& s) { return normalize_source(s); }, py::arg("source"));
  m.def("md5_hex", [](const std::string& s) { return md5_hex(s); }, py::arg("data"));
  m.def("parse_annotations", [](const std::string& source) {
    const auto r = parse_annotations(source);
    py::dict d;
    d["labels"] = labels_dict(r.labels);
    d["warnings"] = r.warnings;
    d["errors"] = r.errors;
    return d;
  }, py::arg("source"));

  m.def("prf", [](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn) {
    return metrics_dict(prf({tp, fp, fn, tn}));
  }, py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
  m.def("functional_score", py::overload_cast<double, double>(&functional_score), py::arg("precision_avg"),
        py::arg("recall_avg"));
  m.def("efficiency_scores", [](const std::vector<double>& t) { return efficiency_scores(t); }, py::arg("avg_times"));
  m.def("compat_score", [](const std::string& v) { return compat_score(VersionId::parse(v)); }, py::arg("version"));

  m.def("ewm", [](const std::vector<std::vector<double>>& rows) {
    const auto r = ewm(DecisionMatrix::from_rows(rows));
    py::dict d;
    d["weights"] = r.weights.values();
    d["entropy"] = r.entropy;
    d["degenerate"] = r.degenerate;
    d["uniform_fallback"] = r.uniform_fallback;
    return d;
  }, py::arg("rows"));
  m.def("ahp", [](const std::vector<std::vector<double>>& rows) {
    const auto r = ahp(PairwiseMatrix::from_rows(rows));
    py::dict d;
    d["weights"] = r.weights.values();
    d["consistency"] = consistency_dict(r.consistency);
    d["iterations"] = r.iterations;
    return d;
  }, py::arg("rows"));
  m.def("load_pairwise", [](const std::string& path) {
    const auto a = PairwiseMatrix::load(path);
    std::vector<std::vector<double>> rows(a.size(), std::vector<double>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a(i, j);
    return rows;
  }, py::arg("path"));
  m.def("overall_scores",
        [](const std::vector<std::pair<std::string, std::vector<double>>>& indicators, const std::vector<double>& w,
           const std::string& method) {
          py::list out;
          for (const auto& r : overall_scores(indicators_from(indicators), WeightVector(w), method).rows) {
            py::dict d;
            d["rank"] = r.rank;
            d["tool"] = r.tool;
            d["raw"] = r.raw;
            d["score"] = r.score;
            out.append(d);
          }
          return out;
        },
        py::arg("indicators"), py::arg("weights"), py::arg("method") = "custom");

  m.def("corpus_stats", [](const std::filesystem::path& root) {
    const auto loaded = load_labelled(root);
    const auto s = stats(loaded.cases);
    py::list rows;
    for (const auto& r : s.rows) rows.append(py::make_tuple(r.type, r.number, r.loc));
    py::dict d;
    d["rows"] = rows;
    d["total_cases"] = s.total_cases;
    return d;
  }, py::arg("root"));
  m.def("run_campaign",
        [](const std::filesystem::path& registry, const std::filesystem::path& corpus, int jobs) {
          const auto reg = Registry::load(registry);
          const auto cases = load_labelled(corpus).cases;
          std::vector<ScanRecord> records;
          {
            py::gil_scoped_release release;
            records = run_campaign(reg, cases, jobs);
          }
          py::list out;
          for (const auto& r : records) out.append(py::module_::import("json").attr("loads")(to_jsonl_line(r)));
          return out;
        },
        py::arg("registry"), py::arg("corpus"), py::arg("jobs") = 1);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
