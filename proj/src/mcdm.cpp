#include "scbench/mcdm.hpp"

#include <algorithm>
#include <array>
#include <cfenv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "scbench/error.hpp"

namespace scbench {

DecisionMatrix::DecisionMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "decision matrix size");
  if (cols == 0) throw Error(ErrorKind::DimensionMismatch, "decision matrix needs at least one criterion");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "decision matrix value is not finite");
}

DecisionMatrix DecisionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> values;
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged decision matrix");
    values.insert(values.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(values)};
}

DecisionMatrix DecisionMatrix::from_indicators(const IndicatorMatrix& m) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : m.rows) rows.push_back({r.sf, r.se, r.sc, r.su});
  if (rows.empty()) throw Error(ErrorKind::DimensionMismatch, "empty indicator matrix");
  return from_rows(rows);
}

std::vector<double> DecisionMatrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Standardized standardize(const DecisionMatrix& m) {
  Standardized s{m, std::vector<bool>(m.cols(), false)};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto col = m.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    const double range = *hi - *lo;
    s.degenerate[j] = !(range > 0);
    for (std::size_t i = 0; i < m.rows(); ++i) s.values(i, j) = s.degenerate[j] ? 0.0 : (col[i] - *lo) / range;
  }
  return s;
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw Error(ErrorKind::DimensionMismatch, "empty weight vector");
  double sum = 0;
  for (double x : w_) {
    if (!(x >= 0) || !std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "weights must be finite and non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::InvalidInput, "weights must sum to 1");
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

EwmResult ewm(const DecisionMatrix& m) {
  if (m.rows() < 2) throw Error(ErrorKind::DimensionMismatch, "entropy weighting needs at least two alternatives");
  const auto s = standardize(m);
  const double k = 1.0 / std::log(static_cast<double>(m.rows()));
  std::vector<double> entropy(m.cols(), 1.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (s.degenerate[j]) continue;
    double total = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) total += s.values(i, j);
    double h = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double p = s.values(i, j) / total;
      if (p > 0) h -= p * std::log(p);
    }
    entropy[j] = k * h;
  }
  double divergence = 0;
  for (double e : entropy) divergence += 1.0 - e;
  if (!(divergence > 0)) return {WeightVector::uniform(m.cols()), entropy, s.degenerate, true};
  std::vector<double> w(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) w[j] = (1.0 - entropy[j]) / divergence;
  // renormalize away rounding so the sum check holds exactly enough
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
  return {WeightVector(std::move(w)), entropy, s.degenerate, false};
}

PairwiseMatrix PairwiseMatrix::from_rows(const std::vector<std::vector<double>>& rows, double tolerance) {
  PairwiseMatrix p;
  p.n_ = rows.size();
  if (p.n_ == 0) throw Error(ErrorKind::DimensionMismatch, "empty pairwise matrix");
  for (const auto& r : rows) {
    if (r.size() != p.n_) throw Error(ErrorKind::DimensionMismatch, "pairwise matrix must be square");
    p.a_.insert(p.a_.end(), r.begin(), r.end());
  }
  for (std::size_t i = 0; i < p.n_; ++i) {
    for (std::size_t j = 0; j < p.n_; ++j) {
      const double a = p(i, j);
      if (!(a > 0) || !std::isfinite(a))
        throw Error(ErrorKind::NotReciprocal, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not positive");
      if (i == j && std::abs(a - 1.0) > tolerance)
        throw Error(ErrorKind::NotReciprocal, "diagonal entry " + std::to_string(i + 1) + " is not 1");
      if (std::abs(a * p(j, i) - 1.0) > tolerance)
        throw Error(ErrorKind::NotReciprocal,
                    "a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") * a(" + std::to_string(j + 1) + "," +
                        std::to_string(i + 1) + ") != 1");
    }
  }
  return p;
}

namespace {

double parse_rational(const std::string& tok) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorKind::InvalidInput, "bad matrix entry '" + tok + "'");
    return v;
  };
  const auto slash = tok.find('/');
  if (slash == std::string::npos) return number(tok);
  const double den = number(tok.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + tok + "'");
  return number(tok.substr(0, slash)) / den;
}

}  // namespace

PairwiseMatrix PairwiseMatrix::parse(std::istream& in) {
  std::vector<std::string> tokens;
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
  }
  if (tokens.empty()) throw Error(ErrorKind::InvalidInput, "empty pairwise matrix file");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(tokens[0], &used);
    if (used != tokens[0].size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidInput, "matrix file must start with its order n");
  }
  if (n == 0 || tokens.size() != 1 + n * n)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(n * n) + " entries, found " + std::to_string(tokens.size() - 1));
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = parse_rational(tokens[1 + i * n + j]);
  return from_rows(rows);
}

PairwiseMatrix PairwiseMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return parse(in);
}

double random_index(std::size_t n) {
  static constexpr std::array<double, 16> kSaaty = {0.0,  0.0,  0.0,  0.58, 0.90, 1.12, 1.24, 1.32,
                                                    1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59};
  if (n == 0 || n >= kSaaty.size()) throw Error(ErrorKind::DimensionMismatch, "no random index for n=" + std::to_string(n));
  return kSaaty[n];
}

AhpResult ahp(const PairwiseMatrix& a, const AhpOptions& options) {
  const std::size_t n = a.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<double> aw(n);
  auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
  };

  double lambda = 0;
  int it = 0;
  for (;; ++it) {
    multiply(w, aw);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += w[i] * aw[i];
      den += w[i] * w[i];
    }
    lambda = num / den;
    double residual = 0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(aw[i] - lambda * w[i]));
    if (residual <= options.tolerance * std::max(1.0, lambda)) break;
    if (it >= options.max_iterations)
      throw Error(ErrorKind::NonConvergence, "power iteration residual " + std::to_string(residual) + " after " +
                                                 std::to_string(it) + " iterations");
    const double sum = std::accumulate(aw.begin(), aw.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) w[i] = aw[i] / sum;
  }

  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;

  ConsistencyReport c;
  c.lambda_max = lambda;
  c.ri = random_index(n);
  if (n > 2) {
    c.ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
    c.cr = c.ci / c.ri;
  } else {
    c.ci = n == 2 ? (lambda - 2.0) : 0.0;
    c.cr = 0.0;
  }
  c.consistent = c.cr <= 0.1;
  return {WeightVector(std::move(w)), c, it};
}

double round_half_even(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(value * scale) / scale;
  std::fesetround(saved);
  return r;
}

ScoreTable overall_scores(const IndicatorMatrix& indicators, const WeightVector& w, std::string method) {
  if (w.size() != 4)
    throw Error(ErrorKind::DimensionMismatch, "expected 4 weights (S_f, S_e, S_c, S_u), got " + std::to_string(w.size()));
  ScoreTable table{std::move(method), {}};
  for (const auto& r : indicators.rows) {
    const double raw = w[0] * r.sf + w[1] * r.se + w[2] * r.sc + w[3] * r.su;
    table.rows.push_back({r.tool, raw, round_half_even(raw * 100.0, 1), 0});
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const ScoreRow& x, const ScoreRow& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.tool < y.tool;
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) table.rows[i].rank = static_cast<int>(i + 1);
  return table;
}

}  // namespace scbench
