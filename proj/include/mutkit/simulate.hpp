#pragma once

#include "mutkit/core.hpp"
#include "mutkit/law.hpp"
#include "mutkit/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>

namespace mutkit {

struct TrajectoryState {
  Word word;
  CountVec ct;  // always equals a full recount of word
  std::uint64_t step_index = 0;
  SplitMix64 rng;
};

// Requires |start| >= k (>= 2k-1 when the trajectory feeds theta_bar
// estimation; estimate_theta_bar enforces that itself).
TrajectoryState init_trajectory(const MutationLaw& law, const Word& start,
                                int k, std::uint64_t seed);

// One mutation: uniform position, law-sampled replacement, incremental count
// update. Draw order (position, then replacement) is fixed.
void step(TrajectoryState& state, const MutationLaw& law, int k);

struct TrialResult {
  CountVec ct;
  std::uint64_t length = 0;
};

TrialResult run_trial(const MutationLaw& law, const Word& start, int k,
                      std::uint64_t steps, std::uint64_t seed);

struct CenterSpec {
  Eigen::VectorXd r;
  double tau = 0.0;
};

struct EnsembleStats {
  std::uint64_t trials = 0;
  std::uint64_t steps = 0;
  Eigen::VectorXd mean_fr;
  // Mean and sample covariance of (ct_n - n(tau-1) r)/sqrt(n); zero-sized when
  // no centering spec was supplied or steps == 0.
  Eigen::VectorXd mean_centered;
  Eigen::MatrixXd emp_cov;
  std::optional<Eigen::MatrixXd> theta_bar_emp;
};

// Deterministic ensemble: trial t uses seed derive_seed(master_seed, t); the
// reduction runs in trial-index order regardless of `threads`, so results are
// bitwise identical for every thread count.
EnsembleStats run_ensemble(const MutationLaw& law, const Word& start, int k,
                           std::uint64_t steps, std::uint64_t trials,
                           std::uint64_t master_seed, int threads = 1,
                           const std::optional<CenterSpec>& center = {});

// Time-average of the one-step increment outer products along one trajectory
// after a burn-in. Requires |start| >= 2k-1.
Eigen::MatrixXd estimate_theta_bar(const MutationLaw& law, const Word& start,
                                   int k, std::uint64_t burn_in,
                                   std::uint64_t samples, std::uint64_t seed);

struct ComparisonResult {
  Eigen::MatrixXd z;
  double max_abs_z = 0.0;
  bool pass = false;
};

// Entrywise z-scores of the empirical covariance against sigma with standard
// errors sqrt((sigma_ii sigma_jj + sigma_ij^2)/trials).
ComparisonResult compare_covariance(const Eigen::MatrixXd& emp_cov,
                                    const Eigen::MatrixXd& sigma,
                                    std::uint64_t trials,
                                    double z_threshold = 4.0);

}  // namespace mutkit
