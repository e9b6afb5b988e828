#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "scbench/metrics.hpp"

namespace scbench {

// Alternatives x criteria, row-major. Every criterion is benefit-type.
class DecisionMatrix {
 public:
  DecisionMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static DecisionMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DecisionMatrix from_indicators(const IndicatorMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  std::vector<double> column(std::size_t j) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

struct Standardized {
  DecisionMatrix values;
  std::vector<bool> degenerate;  // constant columns, mapped to zeros
};

// Range (min-max) normalization per column.
Standardized standardize(const DecisionMatrix& m);

// Non-negative weights summing to 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);
  static WeightVector uniform(std::size_t n);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

struct EwmResult {
  WeightVector weights;
  std::vector<double> entropy;
  std::vector<bool> degenerate;
  bool uniform_fallback = false;
};

EwmResult ewm(const DecisionMatrix& m);
inline WeightVector ewm_weights(const DecisionMatrix& m) { return ewm(m).weights; }

// Reciprocal positive judgment matrix.
class PairwiseMatrix {
 public:
  static PairwiseMatrix from_rows(const std::vector<std::vector<double>>& rows, double tolerance = 1e-9);
  // `n`, then n rows of n entries; entries may be rationals such as `1/4`.
  static PairwiseMatrix parse(std::istream& in);
  static PairwiseMatrix load(const std::string& path);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Saaty random index for an n x n matrix (n <= 15).
double random_index(std::size_t n);

struct ConsistencyReport {
  double lambda_max = 0;
  double ci = 0;
  double ri = 0;
  double cr = 0;
  bool consistent = true;
};

struct AhpOptions {
  double tolerance = 1e-12;
  int max_iterations = 100'000;
};

struct AhpResult {
  WeightVector weights;
  ConsistencyReport consistency;
  int iterations = 0;
};

// Principal eigenvector by power iteration, lambda_max by Rayleigh quotient,
// CR = CI / RI with CI = (lambda_max - n) / (n - 1).
AhpResult ahp(const PairwiseMatrix& a, const AhpOptions& options = {});
inline WeightVector ahp_weights(const PairwiseMatrix& a) { return ahp(a).weights; }

struct ScoreRow {
  std::string tool;
  double raw = 0;    // weighted sum in [0, 1]
  double score = 0;  // raw rounded to 3 decimals (half-to-even), times 100
  int rank = 0;
};

struct ScoreTable {
  std::string method;
  std::vector<ScoreRow> rows;  // rank order
};

// Weighted sum over (S_f, S_e, S_c, S_u); ranked by score, ties by tool name.
ScoreTable overall_scores(const IndicatorMatrix& indicators, const WeightVector& w, std::string method);

double round_half_even(double value, int decimals);

}  // namespace scbench
