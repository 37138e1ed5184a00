#pragma once

#include "mutkit/covariance.hpp"
#include "mutkit/increments.hpp"
#include "mutkit/law.hpp"
#include "mutkit/simulate.hpp"
#include "mutkit/spectral.hpp"
#include "mutkit/substitution_matrix.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace mutkit {

// Full analysis pipeline. Pieces whose hypotheses fail are left unset and the
// corresponding condition flags record why; hard errors (bad law, size limits)
// throw instead.
struct AnalysisResult {
  Rat tau;
  int k = 0;
  RatMatrix m;  // k-tuple substitution matrix
  ConditionReport conditions;
  std::optional<SpectralData> spectral;
  std::optional<IncrementTable> increments;
  std::optional<RatMatrix> theta_bar;
  std::optional<RatMatrix> theta;
  std::optional<RatVector> r_2km1;
  std::optional<DegeneracyInfo> degeneracy;
  std::optional<double> psd_min;
  std::optional<CovarianceReport> covariance;

  bool conditions_pass() const { return conditions.all(); }
};

AnalysisResult run_analysis(const MutationLaw& law, int k,
                            const MatrixOptions& opts = {});

// JSON report builders (ordered keys; byte-stable across runs). `exact` renders
// the exactly-known quantities (tau, r, theta_bar, theta, null vectors) as
// "p/q" strings instead of doubles.
nlohmann::ordered_json analysis_report(const AnalysisResult& a, bool exact);
nlohmann::ordered_json ensemble_report(const MutationLaw& law, int k,
                                       std::uint64_t seed,
                                       const EnsembleStats& stats);
nlohmann::ordered_json increment_report(const IncrementTable& table,
                                        const MutationLaw& law);
nlohmann::ordered_json comparison_report(const ComparisonResult& cmp,
                                         double z_threshold, double fr_max_dev,
                                         double fr_tol, bool fr_pass);

}  // namespace mutkit
