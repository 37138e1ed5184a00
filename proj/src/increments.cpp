#include "mutkit/increments.hpp"

#include "mutkit/error.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace mutkit {

IncrementTable enumerate_increments(const MutationLaw& law, int k,
                                    const MatrixOptions& opts) {
  if (k < 1) throw Error(errc::validation, "k must be >= 1");
  const int d = law.alphabet.d();
  const int width = 2 * k - 1;
  const auto dim = checked_dim(d, width, opts.max_dimension);
  if (!dim)
    throw Error(errc::size_limit,
                "d^(2k-1) exceeds the configured cap of " +
                    std::to_string(opts.max_dimension) + " neighborhoods");

  IncrementTable table;
  table.k = k;
  for (std::size_t vi = 0; vi < *dim; ++vi) {
    const Word v = word_of_index(vi, d, width);
    const CountVec before = linear_count_vector(v, k, d);
    const Symbol middle = v[static_cast<std::size_t>(k - 1)];
    for (const Replacement& rep : law.rules[middle]) {
      Word spliced;
      spliced.reserve(v.size() - 1 + rep.word.size());
      spliced.insert(spliced.end(), v.begin(), v.begin() + (k - 1));
      spliced.insert(spliced.end(), rep.word.begin(), rep.word.end());
      spliced.insert(spliced.end(), v.begin() + k, v.end());
      IncrementRow row;
      row.v = v;
      row.eta = rep.word;
      row.prob = rep.prob;
      row.delta = linear_count_vector(spliced, k, d) - before;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

RatMatrix compute_theta_bar(const IncrementTable& table,
                            const RatVector& r_2km1) {
  if (table.rows.empty())
    throw Error(errc::validation, "empty increment table");
  const int d_pow_k = static_cast<int>(table.rows.front().delta.size());
  RatMatrix theta_bar = RatMatrix::Zero(d_pow_k, d_pow_k);
  // alphabet size from the table shape: d^k = delta dimension
  int d = 1;
  for (;; ++d) {
    std::size_t p = 1;
    for (int i = 0; i < table.k; ++i) p *= static_cast<std::size_t>(d);
    if (p >= static_cast<std::size_t>(d_pow_k)) break;
  }
  for (const IncrementRow& row : table.rows) {
    const std::size_t vi = tuple_index(row.v, d);
    const Rat w = r_2km1(static_cast<Eigen::Index>(vi)) * row.prob;
    for (Eigen::Index i = 0; i < row.delta.size(); ++i) {
      if (row.delta(i) == 0) continue;
      for (Eigen::Index j = 0; j < row.delta.size(); ++j) {
        if (row.delta(j) == 0) continue;
        theta_bar(i, j) +=
            w * Rat(static_cast<long>(row.delta(i) * row.delta(j)));
      }
    }
  }
  return theta_bar;
}

RatMatrix compute_theta(const RatMatrix& theta_bar, const Rat& tau,
                        const RatVector& r_k) {
  const Rat g = (tau - 1) * (tau - 1);
  RatMatrix theta = theta_bar;
  for (Eigen::Index i = 0; i < theta.rows(); ++i)
    for (Eigen::Index j = 0; j < theta.cols(); ++j)
      theta(i, j) -= g * r_k(i) * r_k(j);
  return theta;
}

DegeneracyInfo check_degeneracy(const IncrementTable& table, const Rat& tau,
                                const RatVector& r_k) {
  const Eigen::Index dim = r_k.size();
  RatMatrix rows(static_cast<Eigen::Index>(table.rows.size()), dim);
  for (std::size_t t = 0; t < table.rows.size(); ++t)
    for (Eigen::Index j = 0; j < dim; ++j)
      rows(static_cast<Eigen::Index>(t), j) =
          Rat(static_cast<long>(table.rows[t].delta(j))) - (tau - 1) * r_k(j);
  DegeneracyInfo info;
  info.support_rank = exact_rank(rows);
  info.null_vectors = exact_kernel(rows);
  info.nondegenerate = info.support_rank == static_cast<int>(dim);
  return info;
}

double psd_min_eigenvalue(const Eigen::MatrixXd& theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(theta);
  if (es.info() != Eigen::Success)
    throw Error(errc::validation, "eigensolver did not converge");
  return es.eigenvalues().minCoeff();
}

}  // namespace mutkit
