#pragma once

#include "mutkit/law.hpp"
#include "mutkit/rational.hpp"
#include "mutkit/substitution_matrix.hpp"

#include <vector>

namespace mutkit {

// One mutation outcome on a (2k-1)-neighborhood v: the middle symbol is
// replaced by eta. delta is the change in plain (non-wrapping) k-window counts
// between the spliced neighborhood and v.
struct IncrementRow {
  Word v;
  Word eta;
  Rat prob;
  CountVec delta;
};

struct IncrementTable {
  int k = 0;
  std::vector<IncrementRow> rows;
};

IncrementTable enumerate_increments(const MutationLaw& law, int k,
                                    const MatrixOptions& opts = {});

// Second moment of the one-step increment under the stationary neighborhood
// frequencies r_2km1 (indexed by tuple_index over (2k-1)-tuples).
RatMatrix compute_theta_bar(const IncrementTable& table,
                            const RatVector& r_2km1);

// Centered increment covariance: theta_bar - (tau-1)^2 r r^T.
RatMatrix compute_theta(const RatMatrix& theta_bar, const Rat& tau,
                        const RatVector& r_k);

struct DegeneracyInfo {
  int support_rank = 0;
  RatMatrix null_vectors;  // columns; orthogonal complement of the delta span
  bool nondegenerate = false;
};

// Rank of span{delta - (tau-1) r_k} over the table's support.
DegeneracyInfo check_degeneracy(const IncrementTable& table, const Rat& tau,
                                const RatVector& r_k);

double psd_min_eigenvalue(const Eigen::MatrixXd& theta);

}  // namespace mutkit
