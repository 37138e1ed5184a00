#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mutkit/error.hpp"
#include "mutkit/simulate.hpp"
#include "support/golden.hpp"

#include <cmath>

using namespace mutkit;

namespace {

MutationLaw law() { return golden::parse().law; }

}  // namespace

TEST_CASE("trajectory initialization") {
  const MutationLaw l = law();
  const TrajectoryState st = init_trajectory(l, *l.start, 2, 99);
  CHECK(st.word == Word{0, 1});
  REQUIRE(st.ct.size() == 4);
  CHECK(st.ct(0) == 0);
  CHECK(st.ct(1) == 1);
  CHECK(st.ct(2) == 1);
  CHECK(st.ct(3) == 0);
  CHECK(st.step_index == 0);

  CHECK_THROWS_WITH_AS(init_trajectory(l, Word{0}, 2, 1),
                       doctest::Contains("underflow"), Error);
}

TEST_CASE("single mutation of 01 lands in the right outcomes") {
  // from 01 one mutation yields 11, 001, 00, or 011, each with chance 1/4
  const MutationLaw l = law();
  int seen_11 = 0, seen_001 = 0, seen_00 = 0, seen_011 = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    TrajectoryState st = init_trajectory(l, *l.start, 2, 1000 + i);
    step(st, l, 2);
    CHECK(st.ct == count_vector(st.word, 2, 2));
    const std::string w = l.alphabet.to_string(st.word);
    if (w == "11") ++seen_11;
    else if (w == "001") ++seen_001;
    else if (w == "00") ++seen_00;
    else if (w == "011") ++seen_011;
    else FAIL("unexpected successor word: ", w);
  }
  for (int count : {seen_11, seen_001, seen_00, seen_011})
    CHECK(static_cast<double>(count) / n == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("counts stay consistent along a long trajectory") {
  const MutationLaw l = law();
  TrajectoryState st = init_trajectory(l, *l.start, 2, 7);
  for (int i = 0; i < 3000; ++i) {
    step(st, l, 2);
    if (i % 250 == 0) CHECK(st.ct == count_vector(st.word, 2, 2));
    // swap-or-double preserves the cyclic balance of 01 and 10 windows
    CHECK(st.ct(1) == st.ct(2));
  }
  CHECK(st.ct == count_vector(st.word, 2, 2));
  CHECK(st.step_index == 3000);
}

TEST_CASE("mean growth follows tau - 1 per step") {
  const MutationLaw l = law();
  const int trials = 400;
  const std::uint64_t steps = 500;
  double mean_len = 0.0;
  for (int t = 0; t < trials; ++t) {
    const TrialResult res = run_trial(l, *l.start, 2, steps, derive_seed(5, t));
    CHECK(res.ct.sum() == static_cast<std::int64_t>(res.length));
    mean_len += static_cast<double>(res.length);
  }
  mean_len /= trials;
  // E|S_n| = 2 + n(tau-1) = 252; sd of the mean ~ sqrt(n)*0.5/20 < 0.6
  CHECK(mean_len == doctest::Approx(252.0).epsilon(0.02));
}

TEST_CASE("zero-step trials echo the start word") {
  const MutationLaw l = law();
  const TrialResult res = run_trial(l, *l.start, 2, 0, 3);
  CHECK(res.length == 2);
  CHECK(res.ct(1) == 1);

  const EnsembleStats stats = run_ensemble(l, *l.start, 2, 0, 3, 42);
  CHECK(stats.trials == 3);
  CHECK(stats.steps == 0);
  REQUIRE(stats.mean_fr.size() == 4);
  CHECK(stats.mean_fr(0) == 0.0);
  CHECK(stats.mean_fr(1) == 0.5);
  CHECK(stats.mean_fr(2) == 0.5);
  CHECK(stats.mean_fr(3) == 0.0);
  CHECK(stats.mean_centered.size() == 0);
  CHECK(stats.emp_cov.size() == 0);
}

TEST_CASE("ensembles are bitwise reproducible across thread counts") {
  const MutationLaw l = law();
  CenterSpec center{to_double(golden::r2()), 1.5};
  const EnsembleStats a = run_ensemble(l, *l.start, 2, 200, 64, 2026, 1, center);
  const EnsembleStats b = run_ensemble(l, *l.start, 2, 200, 64, 2026, 4, center);
  const EnsembleStats c = run_ensemble(l, *l.start, 2, 200, 64, 2026, 13, center);
  REQUIRE(a.emp_cov.size() > 0);
  CHECK(a.mean_fr == b.mean_fr);
  CHECK(a.mean_fr == c.mean_fr);
  CHECK(a.mean_centered == b.mean_centered);
  CHECK(a.mean_centered == c.mean_centered);
  CHECK(a.emp_cov == b.emp_cov);
  CHECK(a.emp_cov == c.emp_cov);
}

TEST_CASE("single-trial ensembles have zero covariance") {
  const MutationLaw l = law();
  CenterSpec center{to_double(golden::r2()), 1.5};
  const EnsembleStats stats =
      run_ensemble(l, *l.start, 2, 50, 1, 77, 1, center);
  REQUIRE(stats.emp_cov.rows() == 4);
  CHECK(stats.emp_cov.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("empty ensembles are rejected") {
  const MutationLaw l = law();
  CHECK_THROWS_WITH_AS(run_ensemble(l, *l.start, 2, 10, 0, 1),
                       doctest::Contains("empty-ensemble"), Error);
}

TEST_CASE("centered mean shrinks like a CLT average") {
  // summing the centered vector gives (|S_n| - n(tau-1))/sqrt(n), whose mean
  // is exactly |start|/sqrt(n) and whose variance is exactly 1/4 under this
  // law (every replacement grows by Bernoulli(1/2)); the trial mean must sit
  // within 4 standard errors
  const MutationLaw l = law();
  CenterSpec center{to_double(golden::r2()), 1.5};
  const std::uint64_t T = 600;
  const std::uint64_t n = 400;
  const EnsembleStats stats =
      run_ensemble(l, *l.start, 2, n, T, 31415, 4, center);
  REQUIRE(stats.mean_centered.size() == 4);
  const double total = stats.mean_centered.sum();
  const double offset = 2.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(total - offset) <=
        4.0 * std::sqrt(0.25 / static_cast<double>(T)));
}

TEST_CASE("increment second-moment estimator: frozen word") {
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "alphabet": ["0", "1"],
    "rules": {
      "0": [{"word": "0", "prob": 1}],
      "1": [{"word": "1", "prob": 1}]
    }
  })");
  ParseOptions opts;
  opts.require_growth = false;
  const MutationLaw frozen = parse_law(doc, opts).law;
  const Eigen::MatrixXd est =
      estimate_theta_bar(frozen, Word{0, 1, 0, 1}, 2, 10, 500, 8);
  CHECK(est.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("increment second-moment estimator: swap-or-double law") {
  const MutationLaw l = law();
  const Eigen::MatrixXd est =
      estimate_theta_bar(l, *l.start, 2, 1000, 400000, 1234);
  const Eigen::MatrixXd expect = to_double(golden::theta_bar());
  // single-trajectory time averages converge slowly; only guards gross errors
  CHECK((est - expect).cwiseAbs().maxCoeff() <= 0.08);

  CHECK_THROWS_WITH_AS(estimate_theta_bar(l, Word{0}, 2, 0, 10, 1),
                       doctest::Contains("underflow"), Error);
  CHECK_THROWS_WITH_AS(estimate_theta_bar(l, *l.start, 3, 0, 10, 1),
                       doctest::Contains("underflow"), Error);
}

TEST_CASE("covariance comparison scores") {
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.2, 0.2, 0.5;
  // exact match: all z-scores are zero
  const ComparisonResult same = compare_covariance(sigma, sigma, 100);
  CHECK(same.max_abs_z == 0.0);
  CHECK(same.pass);

  Eigen::MatrixXd off = sigma;
  off(0, 0) += 10.0;
  const ComparisonResult bad = compare_covariance(off, sigma, 10000);
  CHECK_FALSE(bad.pass);
  // se(0,0) = sqrt(2/10000); z = 10 / 0.01414
  CHECK(bad.z(0, 0) == doctest::Approx(10.0 / std::sqrt(2.0 / 10000.0)));

  // zero target with zero deviation passes; nonzero deviation is infinite
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
  CHECK(compare_covariance(zero, zero, 50).pass);
  CHECK_FALSE(compare_covariance(off, zero, 50).pass);
}

TEST_CASE("derived seeds decorrelate trials") {
  // neighbouring trial indices must not produce identical trajectories
  const MutationLaw l = law();
  const TrialResult a = run_trial(l, *l.start, 2, 100, derive_seed(9, 0));
  const TrialResult b = run_trial(l, *l.start, 2, 100, derive_seed(9, 1));
  CHECK((a.ct != b.ct || a.length != b.length));
}
