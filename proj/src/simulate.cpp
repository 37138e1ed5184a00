#include "mutkit/simulate.hpp"

#include "mutkit/error.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace mutkit {

TrajectoryState init_trajectory(const MutationLaw& law, const Word& start,
                                int k, std::uint64_t seed) {
  if (start.size() < static_cast<std::size_t>(k))
    throw Error(errc::underflow, "start word shorter than k");
  TrajectoryState state;
  state.word = start;
  state.ct = count_vector(start, k, law.alphabet.d());
  state.step_index = 0;
  state.rng.state = seed;
  return state;
}

void step(TrajectoryState& state, const MutationLaw& law, int k) {
  const std::size_t pos = uniform_below(state.rng, state.word.size());
  const Symbol symbol = state.word[pos];
  const Word& repl = sample_replacement(law, symbol, state.rng);
  splice_and_update(state.word, pos, repl, state.ct, k, law.alphabet.d());
  ++state.step_index;
}

TrialResult run_trial(const MutationLaw& law, const Word& start, int k,
                      std::uint64_t steps, std::uint64_t seed) {
  TrajectoryState state = init_trajectory(law, start, k, seed);
  for (std::uint64_t i = 0; i < steps; ++i) step(state, law, k);
  return {state.ct, state.word.size()};
}

EnsembleStats run_ensemble(const MutationLaw& law, const Word& start, int k,
                           std::uint64_t steps, std::uint64_t trials,
                           std::uint64_t master_seed, int threads,
                           const std::optional<CenterSpec>& center) {
  if (trials == 0)
    throw Error(errc::empty_ensemble, "an ensemble needs at least one trial");

  std::vector<TrialResult> results(trials);
  const int workers = std::max(
      1, std::min<int>(threads, static_cast<int>(
                                    std::min<std::uint64_t>(trials, 1024))));
  if (workers == 1) {
    for (std::uint64_t t = 0; t < trials; ++t)
      results[t] = run_trial(law, start, k, steps, derive_seed(master_seed, t));
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto work = [&]() {
      try {
        for (;;) {
          const std::uint64_t t = next.fetch_add(1);
          if (t >= trials || failed.load()) break;
          results[t] =
              run_trial(law, start, k, steps, derive_seed(master_seed, t));
        }
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(first_error);
  }

  const Eigen::Index dim = results[0].ct.size();
  EnsembleStats stats;
  stats.trials = trials;
  stats.steps = steps;

  // means in trial order (bitwise reproducible regardless of thread count)
  Eigen::VectorXd fr_sum = Eigen::VectorXd::Zero(dim);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double len = static_cast<double>(results[t].length);
    fr_sum += results[t].ct.cast<double>() / len;
  }
  stats.mean_fr = fr_sum / static_cast<double>(trials);

  if (center && steps >= 1) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(steps));
    const Eigen::VectorXd offset =
        static_cast<double>(steps) * (center->tau - 1.0) * center->r;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint64_t t = 0; t < trials; ++t) {
      const Eigen::VectorXd x =
          (results[t].ct.cast<double>() - offset) * scale;
      const Eigen::VectorXd delta = x - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta * (x - mean).transpose();
    }
    stats.mean_centered = mean;
    stats.emp_cov = trials >= 2
                        ? Eigen::MatrixXd(m2 / static_cast<double>(trials - 1))
                        : Eigen::MatrixXd(Eigen::MatrixXd::Zero(dim, dim));
  }
  return stats;
}

Eigen::MatrixXd estimate_theta_bar(const MutationLaw& law, const Word& start,
                                   int k, std::uint64_t burn_in,
                                   std::uint64_t samples, std::uint64_t seed) {
  if (start.size() < static_cast<std::size_t>(k))
    throw Error(errc::underflow, "start word shorter than k");
  if (samples == 0)
    throw Error(errc::empty_ensemble, "theta estimation needs samples >= 1");
  TrajectoryState state = init_trajectory(law, start, k, seed);
  for (std::uint64_t i = 0; i < burn_in; ++i) step(state, law, k);
  const Eigen::Index dim = state.ct.size();
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> acc =
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim,
                                                                        dim);
  CountVec before(dim);
  for (std::uint64_t s = 0; s < samples; ++s) {
    before = state.ct;
    step(state, law, k);
    const CountVec delta = state.ct - before;
    acc += delta * delta.transpose();
  }
  return acc.cast<double>() / static_cast<double>(samples);
}

ComparisonResult compare_covariance(const Eigen::MatrixXd& emp_cov,
                                    const Eigen::MatrixXd& sigma,
                                    std::uint64_t trials, double z_threshold) {
  if (emp_cov.rows() != sigma.rows() || emp_cov.cols() != sigma.cols())
    throw Error(errc::validation, "covariance shapes differ");
  if (trials == 0)
    throw Error(errc::empty_ensemble, "comparison needs at least one trial");
  ComparisonResult out;
  const Eigen::Index n = sigma.rows();
  out.z.resize(n, n);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double var =
          (sigma(i, i) * sigma(j, j) + sigma(i, j) * sigma(i, j)) /
          static_cast<double>(trials);
      const double se = std::sqrt(std::max(var, 0.0));
      const double diff = emp_cov(i, j) - sigma(i, j);
      double z;
      if (se > 0.0)
        z = diff / se;
      else
        z = std::abs(diff) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
      out.z(i, j) = z;
      worst = std::max(worst, std::abs(z));
    }
  }
  out.max_abs_z = worst;
  out.pass = worst <= z_threshold;
  return out;
}

}  // namespace mutkit
