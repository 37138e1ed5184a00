#pragma once

#include "mutkit/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace mutkit {

enum class ModeKind { Leading, ComplexPairRepresentative, RealNonleading };

// One eigen-direction of the substitution matrix, represented by its left
// eigenvector (row). Complex conjugate pairs are stored once, with positive
// imaginary part; left_im is zero for real modes.
struct EigenPair {
  double value_re = 0.0;
  double value_im = 0.0;
  Eigen::VectorXd left_re;
  Eigen::VectorXd left_im;
  ModeKind kind = ModeKind::RealNonleading;
};

struct ConditionReport {
  bool irreducible = false;
  bool radius_matches = false;   // leading eigenvalue equals tau + k - 1 (1e-9)
  bool spectral_gap = false;     // every non-leading real part < k + (tau-1)/2
  bool defective_ok = false;     // numerically diagonalizable
  std::optional<bool> m2km1_irreducible;  // filled by the analysis pipeline
  double gap_threshold = 0.0;
  double max_nonleading_real = 0.0;

  bool all() const {
    return irreducible && radius_matches && spectral_gap && defective_ok &&
           m2km1_irreducible.value_or(false);
  }
};

struct RowLabel {
  int mode = 0;     // index into pairs
  bool imag = false;  // row holds Im(u) of a complex pair
};

struct SpectralData {
  // pairs[0] is the leading mode (all-ones left vector); then complex pair
  // representatives, then real non-leading modes, each group by descending
  // real part.
  std::vector<EigenPair> pairs;
  std::vector<RowLabel> rows;  // U row -> (mode, part)
  Eigen::MatrixXd U;           // stacked rows: u0; per pair Re,Im; reals
  Eigen::MatrixXd U_inv;
  Eigen::VectorXd r;           // limiting frequency vector (exact, converted)
  RatVector r_exact;
  bool diagonalizable = false;
  ConditionReport conditions;
};

// Exact leading right eigenvector: kernel of (M - lambda I), normalized to sum
// to 1. Throws irreducibility-violation if the eigenvalue is not simple or the
// vector is not entrywise positive.
RatVector exact_leading_vector(const RatMatrix& m, const Rat& lambda);

// Rebuilds U, U_inv and rows from pairs (used after any test-side rescaling).
void finalize_spectral(SpectralData& s);

// Left eigendecomposition of M with the conventions above. `tau` and `k` feed
// the condition report (radius/gap); m2km1_irreducible is left unset.
SpectralData eigendecompose(const RatMatrix& m, const Rat& tau, int k);

}  // namespace mutkit
