#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "scbench/error.hpp"
#include "scbench/mcdm.hpp"
#include "support.hpp"

using namespace scbench;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

PairwiseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return PairwiseMatrix::parse(in);
}

void check_weights(const WeightVector& w) {
  double sum = 0;
  for (double x : w.values()) {
    CHECK(x >= 0);
    sum += x;
  }
  CHECK(sum == Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("min-max standardization") {
  auto s = standardize(DecisionMatrix::from_rows({{1, 2}, {3, 2}, {5, 2}}));
  CHECK(s.values.column(0) == std::vector{0.0, 0.5, 1.0});
  CHECK(s.values.column(1) == std::vector{0.0, 0.0, 0.0});
  CHECK_FALSE(s.degenerate[0]);
  CHECK(s.degenerate[1]);

  // an already range-scaled column is a fixed point
  const auto once = standardize(DecisionMatrix::from_rows({{1}, {0.318}, {0}, {0.913}}));
  const auto twice = standardize(once.values);
  CHECK(twice.values.column(0) == once.values.column(0));

  CHECK(kind_of([] { DecisionMatrix::from_rows({{1, 2}, {3}}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { DecisionMatrix::from_rows({{1, NAN}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("entropy weights") {
  SUBCASE("hand trace on a 3x2 matrix") {
    // column 0 -> (0, .5, 1), p = (0, 1/3, 2/3); column 1 -> (1, 0, 0), p = (1, 0, 0)
    const auto r = ewm(DecisionMatrix::from_rows({{1, 9}, {2, 4}, {3, 4}}));
    const double h0 = -(1.0 / 3 * std::log(1.0 / 3) + 2.0 / 3 * std::log(2.0 / 3)) / std::log(3.0);
    CHECK(r.entropy[0] == Approx(h0));
    CHECK(r.entropy[1] == Approx(0.0));
    const double d = (1 - h0) + 1;
    CHECK(r.weights[0] == Approx((1 - h0) / d));
    CHECK(r.weights[1] == Approx(1 / d));
  }
  SUBCASE("identical columns get identical weights") {
    const auto w = ewm_weights(DecisionMatrix::from_rows({{1, 1, 7}, {4, 4, 2}, {2, 2, 2}, {9, 9, 3}}));
    CHECK(w[0] == Approx(w[1]));
  }
  SUBCASE("constant columns carry no weight") {
    const auto r = ewm(DecisionMatrix::from_rows({{1, 5}, {2, 5}, {4, 5}}));
    CHECK(r.degenerate[1]);
    CHECK(r.weights[1] == 0);
    CHECK(r.weights[0] == Approx(1));
  }
  SUBCASE("all-constant matrices fall back to uniform weights") {
    const auto r = ewm(DecisionMatrix::from_rows({{1, 5}, {1, 5}}));
    CHECK(r.uniform_fallback);
    CHECK(r.weights[0] == 0.5);
  }
  SUBCASE("a single alternative is rejected") {
    CHECK(kind_of([] { ewm(DecisionMatrix::from_rows({{1, 2}})); }) == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("entropy weights match the oracle and are invariant under positive affine maps") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 2 + rng() % 12, n = 3 + rng() % 4;
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (auto& r : rows)
      for (auto& x : r) x = u(rng);
    const auto w = ewm_weights(DecisionMatrix::from_rows(rows));
    check_weights(w);
    const auto o = oracle::ewm(rows);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(w[j] - static_cast<double>(o[j])) < 1e-9);

    auto scaled = rows;
    for (auto& r : scaled)
      for (std::size_t j = 0; j < n; ++j) r[j] = 3.5 * r[j] + static_cast<double>(j);
    const auto w2 = ewm_weights(DecisionMatrix::from_rows(scaled));
    for (std::size_t j = 0; j < n; ++j) CHECK(w2[j] == Approx(w[j]).epsilon(1e-9));
  }
}

TEST_CASE("weight vectors are validated") {
  CHECK_NOTHROW(WeightVector({0.25, 0.25, 0.5}));
  CHECK(kind_of([] { WeightVector({0.5, 0.6}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { WeightVector({-0.5, 1.5}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { WeightVector(std::vector<double>{}); }) == ErrorKind::DimensionMismatch);
  check_weights(WeightVector::uniform(7));
}

TEST_CASE("pairwise matrix parsing") {
  const auto a1 = PairwiseMatrix::load((testing::data() / "ahp/a1.txt").string());
  CHECK(a1.size() == 4);
  CHECK(a1(1, 0) == 0.25);
  CHECK(a1(3, 1) == Approx(1.0 / 3));
  CHECK(parse("2\n1 3\n1/3 1 # trailing comment\n")(0, 1) == 3);
  CHECK(kind_of([] { parse("2\n1 3\n1/2 1\n"); }) == ErrorKind::NotReciprocal);
  CHECK(kind_of([] { parse("2\n2 1\n1 1\n"); }) == ErrorKind::NotReciprocal);
  CHECK(kind_of([] { parse("2\n1 -1\n-1 1\n"); }) == ErrorKind::NotReciprocal);
  CHECK(kind_of([] { parse("3\n1 1 1\n1 1 1\n"); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { parse("2\n1 x\n1 1\n"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse("2\n1 1/0\n0 1\n"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse(""); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse("two\n"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { PairwiseMatrix::load("/nonexistent/a.txt"); }) == ErrorKind::Io);
}

TEST_CASE("AHP") {
  SUBCASE("all-ones matrix is uniform and perfectly consistent") {
    const auto r = ahp(parse("4\n1 1 1 1\n1 1 1 1\n1 1 1 1\n1 1 1 1\n"));
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.weights[i] == Approx(0.25));
    CHECK(r.consistency.cr == Approx(0.0).epsilon(1e-12));
    CHECK(r.consistency.consistent);
  }
  SUBCASE("shipped judgment matrices") {
    const auto r1 = ahp(PairwiseMatrix::load((testing::data() / "ahp/a1.txt").string()));
    const double w1[] = {0.502, 0.159, 0.261, 0.078};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r1.weights[i] - w1[i]) <= 0.005);
    CHECK(r1.consistency.cr <= 0.1);
    CHECK(r1.consistency.ri == 0.90);
    CHECK(r1.consistency.ci == Approx((r1.consistency.lambda_max - 4) / 3));

    const auto r2 = ahp(PairwiseMatrix::load((testing::data() / "ahp/a2.txt").string()));
    const double w2[] = {0.438, 0.219, 0.243, 0.100};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r2.weights[i] - w2[i]) <= 0.005);
    CHECK(r2.consistency.cr <= 0.1);
  }
  SUBCASE("small matrices report CR 0") {
    CHECK(ahp(parse("1\n1\n")).weights[0] == 1);
    const auto r = ahp(parse("2\n1 3\n1/3 1\n"));
    CHECK(r.weights[0] == Approx(0.75));
    CHECK(r.consistency.cr == 0);
  }
  SUBCASE("inconsistent judgments are flagged") {
    // a > b, b > c, c > a
    const auto r = ahp(parse("3\n1 9 1/9\n1/9 1 9\n9 1/9 1\n"));
    CHECK_FALSE(r.consistency.consistent);
    CHECK(r.consistency.cr > 0.1);
  }
  SUBCASE("the random index table") {
    CHECK(random_index(3) == 0.58);
    CHECK(random_index(5) == 1.12);
    CHECK(kind_of([] { random_index(0); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { random_index(16); }) == ErrorKind::DimensionMismatch);
  }
  SUBCASE("an iteration cap raises NonConvergence") {
    AhpOptions opt;
    opt.max_iterations = 0;
    CHECK(kind_of([&] { ahp(PairwiseMatrix::load((testing::data() / "ahp/a1.txt").string()), opt); }) ==
          ErrorKind::NonConvergence);
  }
}

TEST_CASE("AHP recovers consistent priorities and matches the eigen-solver oracle") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.1, 10), judgment(1, 9);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + rng() % 6;
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = v[i] / v[j];
    const auto r = ahp(PairwiseMatrix::from_rows(a));
    check_weights(r.weights);
    const double vs = std::accumulate(v.begin(), v.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) CHECK(r.weights[i] == Approx(v[i] / vs).epsilon(1e-9));
    CHECK(r.consistency.cr < 1e-6);

    // random reciprocal judgments
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] = 1;
      for (std::size_t j = i + 1; j < n; ++j) {
        a[i][j] = rng() % 2 ? judgment(rng) : 1 / judgment(rng);
        a[j][i] = 1 / a[i][j];
      }
    }
    const auto p = ahp(PairwiseMatrix::from_rows(a));
    const auto o = oracle::ahp(a);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(p.weights[i] - static_cast<double>(o.weights[i])) < 1e-6);
    CHECK(std::abs(p.consistency.lambda_max - static_cast<double>(o.lambda_max)) < 1e-6);
  }
}

TEST_CASE("overall scores") {
  IndicatorMatrix m{{{"B", 1, 1, 1, 1}, {"A", 1, 1, 1, 1}, {"C", 0.5, 0, 1, 0.2}}};
  const auto t = overall_scores(m, WeightVector::uniform(4), "EQ");
  CHECK(t.method == "EQ");
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].tool == "A");  // tie broken by name
  CHECK(t.rows[0].score == 100);
  CHECK(t.rows[1].tool == "B");
  CHECK(t.rows[1].rank == 2);
  CHECK(t.rows[2].raw == Approx(0.425));
  CHECK(t.rows[2].score == Approx(42.5));
  CHECK(kind_of([&] { overall_scores(m, WeightVector::uniform(3), "x"); }) == ErrorKind::DimensionMismatch);

  // hand dot products
  const WeightVector w({0.4, 0.3, 0.2, 0.1});
  const auto h = overall_scores(IndicatorMatrix{{{"X", 0.9, 0.5, 0.25, 0.6}}}, w, "H");
  CHECK(h.rows[0].raw == Approx(0.36 + 0.15 + 0.05 + 0.06));
  CHECK(h.rows[0].score == Approx(62.0));
}

TEST_CASE("rounding is half-to-even") {
  CHECK(round_half_even(0.5, 0) == 0);
  CHECK(round_half_even(1.5, 0) == 2);
  CHECK(round_half_even(2.5, 0) == 2);
  CHECK(round_half_even(-2.5, 0) == -2);
  CHECK(round_half_even(12.25, 1) == Approx(12.2));
  CHECK(round_half_even(0.1234, 3) == Approx(0.123));
}
