#include "mutkit/report.hpp"

#include "mutkit/error.hpp"

#include <cmath>

namespace mutkit {

namespace {

nlohmann::ordered_json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::ordered_json vec_json(const Eigen::VectorXd& v) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(finite_or_null(v(i)));
  return arr;
}

nlohmann::ordered_json mat_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(finite_or_null(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json rat_vec_json(const RatVector& v, bool exact) {
  auto arr = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (exact)
      arr.push_back(rat_to_string(v(i)));
    else
      arr.push_back(rat_to_double(v(i)));
  }
  return arr;
}

nlohmann::ordered_json rat_mat_json(const RatMatrix& m, bool exact) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (exact)
        row.push_back(rat_to_string(m(i, j)));
      else
        row.push_back(rat_to_double(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AnalysisResult run_analysis(const MutationLaw& law, int k,
                            const MatrixOptions& opts) {
  AnalysisResult a;
  a.tau = law.tau;
  a.k = k;
  a.m = build_substitution_matrix(law, k, opts);

  a.conditions.gap_threshold = k + (rat_to_double(law.tau) - 1.0) / 2.0;
  a.conditions.irreducible = is_irreducible(a.m);
  if (!a.conditions.irreducible) return a;

  a.spectral = eigendecompose(a.m, law.tau, k);

  const RatMatrix m_wide = build_substitution_matrix(law, 2 * k - 1, opts);
  const bool wide_irreducible = is_irreducible(m_wide);
  a.spectral->conditions.m2km1_irreducible = wide_irreducible;
  a.conditions = a.spectral->conditions;

  if (wide_irreducible && a.spectral->r_exact.size() > 0) {
    a.r_2km1 = exact_leading_vector(m_wide, law.tau + Rat(2 * k - 1) - 1);
    a.increments = enumerate_increments(law, k, opts);
    a.theta_bar = compute_theta_bar(*a.increments, *a.r_2km1);
    a.theta = compute_theta(*a.theta_bar, law.tau, a.spectral->r_exact);
    a.degeneracy = check_degeneracy(*a.increments, law.tau, a.spectral->r_exact);
    a.psd_min = psd_min_eigenvalue(to_double(*a.theta));
  }

  if (a.theta && a.conditions.all())
    a.covariance = build_sigma(to_double(*a.theta), *a.spectral,
                               rat_to_double(law.tau), k);
  return a;
}

nlohmann::ordered_json analysis_report(const AnalysisResult& a, bool exact) {
  nlohmann::ordered_json doc;
  doc["tau"] = exact ? nlohmann::ordered_json(rat_to_string(a.tau))
                     : nlohmann::ordered_json(rat_to_double(a.tau));
  doc["k"] = a.k;

  auto eigs = nlohmann::ordered_json::array();
  if (a.spectral)
    for (const EigenPair& p : a.spectral->pairs)
      eigs.push_back({{"re", p.value_re}, {"im", p.value_im}});
  doc["eigenvalues"] = std::move(eigs);

  if (a.spectral && a.spectral->r_exact.size() > 0)
    doc["r"] = rat_vec_json(a.spectral->r_exact, exact);
  else if (a.spectral)
    doc["r"] = vec_json(a.spectral->r);
  else
    doc["r"] = nullptr;

  const ConditionReport& c = a.conditions;
  doc["conditions"] = {
      {"irreducible", c.irreducible},
      {"radius_matches", c.radius_matches},
      {"spectral_gap", c.spectral_gap},
      {"defective_ok", c.defective_ok},
      {"m2km1_irreducible", c.m2km1_irreducible
                                ? nlohmann::ordered_json(*c.m2km1_irreducible)
                                : nlohmann::ordered_json(nullptr)},
      {"gap_threshold", c.gap_threshold},
      {"max_nonleading_real", finite_or_null(c.max_nonleading_real)},
  };

  doc["theta_bar"] =
      a.theta_bar ? rat_mat_json(*a.theta_bar, exact) : nlohmann::ordered_json(nullptr);
  doc["theta"] =
      a.theta ? rat_mat_json(*a.theta, exact) : nlohmann::ordered_json(nullptr);
  doc["sigma_prime"] = a.covariance ? mat_json(a.covariance->sigma_prime)
                                    : nlohmann::ordered_json(nullptr);
  doc["sigma"] = a.covariance ? mat_json(a.covariance->sigma)
                              : nlohmann::ordered_json(nullptr);

  if (a.degeneracy) {
    auto nulls = nlohmann::ordered_json::array();
    for (Eigen::Index c2 = 0; c2 < a.degeneracy->null_vectors.cols(); ++c2)
      nulls.push_back(rat_vec_json(a.degeneracy->null_vectors.col(c2), exact));
    doc["degeneracy"] = {{"rank", a.degeneracy->support_rank},
                         {"null_vectors", std::move(nulls)},
                         {"nondegenerate", a.degeneracy->nondegenerate},
                         {"psd_min_eigenvalue",
                          a.psd_min ? nlohmann::ordered_json(*a.psd_min)
                                    : nlohmann::ordered_json(nullptr)}};
  } else {
    doc["degeneracy"] = nullptr;
  }
  return doc;
}

nlohmann::ordered_json ensemble_report(const MutationLaw& law, int k,
                                       std::uint64_t seed,
                                       const EnsembleStats& stats) {
  nlohmann::ordered_json doc;
  doc["k"] = k;
  doc["steps"] = stats.steps;
  doc["trials"] = stats.trials;
  doc["seed"] = seed;
  doc["start"] =
      law.start ? nlohmann::ordered_json(law.alphabet.to_string(*law.start))
                : nlohmann::ordered_json(nullptr);
  doc["mean_fr"] = vec_json(stats.mean_fr);
  doc["mean_centered"] = stats.mean_centered.size()
                             ? vec_json(stats.mean_centered)
                             : nlohmann::ordered_json(nullptr);
  doc["emp_cov"] = stats.emp_cov.size() ? mat_json(stats.emp_cov)
                                        : nlohmann::ordered_json(nullptr);
  doc["theta_bar_emp"] = stats.theta_bar_emp
                             ? mat_json(*stats.theta_bar_emp)
                             : nlohmann::ordered_json(nullptr);
  return doc;
}

nlohmann::ordered_json increment_report(const IncrementTable& table,
                                        const MutationLaw& law) {
  nlohmann::ordered_json doc;
  doc["k"] = table.k;
  auto rows = nlohmann::ordered_json::array();
  for (const IncrementRow& row : table.rows) {
    auto delta = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < row.delta.size(); ++i)
      delta.push_back(row.delta(i));
    rows.push_back({{"v", law.alphabet.to_string(row.v)},
                    {"eta", law.alphabet.to_string(row.eta)},
                    {"prob", rat_to_string(row.prob)},
                    {"delta", std::move(delta)}});
  }
  doc["rows"] = std::move(rows);
  return doc;
}

nlohmann::ordered_json comparison_report(const ComparisonResult& cmp,
                                         double z_threshold, double fr_max_dev,
                                         double fr_tol, bool fr_pass) {
  nlohmann::ordered_json doc;
  doc["z"] = mat_json(cmp.z);
  doc["max_abs_z"] = finite_or_null(cmp.max_abs_z);
  doc["z_threshold"] = z_threshold;
  doc["cov_pass"] = cmp.pass;
  doc["fr_max_abs_dev"] = fr_max_dev;
  doc["fr_tol"] = fr_tol;
  doc["fr_pass"] = fr_pass;
  doc["pass"] = cmp.pass && fr_pass;
  return doc;
}

}  // namespace mutkit
