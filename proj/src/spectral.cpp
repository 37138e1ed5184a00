#include "mutkit/spectral.hpp"

#include "mutkit/error.hpp"
#include "mutkit/substitution_matrix.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

namespace mutkit {

RatVector exact_leading_vector(const RatMatrix& m, const Rat& lambda) {
  RatMatrix shifted = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
  const RatMatrix null_basis = exact_kernel(shifted);
  if (null_basis.cols() == 0)
    throw Error(errc::irreducibility_violation,
                "no eigenvector at the expected leading eigenvalue");
  if (null_basis.cols() > 1)
    throw Error(errc::irreducibility_violation,
                "leading eigenvalue is not simple");
  RatVector v = null_basis.col(0);
  Rat sum = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += v(i);
  if (sum == 0)
    throw Error(errc::irreducibility_violation,
                "leading eigenvector sums to zero");
  v /= sum;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) <= 0)
      throw Error(errc::irreducibility_violation,
                  "limiting frequency vector is not entrywise positive");
  return v;
}

void finalize_spectral(SpectralData& s) {
  const Eigen::Index n = s.pairs.empty() ? 0 : s.pairs[0].left_re.size();
  Eigen::Index row_count = 0;
  for (const EigenPair& p : s.pairs)
    row_count += (p.kind == ModeKind::ComplexPairRepresentative) ? 2 : 1;
  s.rows.clear();
  if (row_count != n || !s.diagonalizable) {
    s.U.resize(0, 0);
    s.U_inv.resize(0, 0);
    return;
  }
  s.U.resize(n, n);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const EigenPair& p = s.pairs[i];
    s.U.row(row) = p.left_re.transpose();
    s.rows.push_back({static_cast<int>(i), false});
    ++row;
    if (p.kind == ModeKind::ComplexPairRepresentative) {
      s.U.row(row) = p.left_im.transpose();
      s.rows.push_back({static_cast<int>(i), true});
      ++row;
    }
  }
  s.U_inv = s.U.inverse();
}

namespace {

struct Mode {
  std::complex<double> lam;
  Eigen::VectorXcd vec;
  bool is_complex = false;
};

}  // namespace

SpectralData eigendecompose(const RatMatrix& m, const Rat& tau, int k) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n)
    throw Error(errc::validation, "matrix must be square and nonempty");

  SpectralData s;
  s.conditions.irreducible = is_irreducible(m);

  const Rat lambda0 = tau + Rat(k) - 1;
  const double lambda0_d = rat_to_double(lambda0);

  const Eigen::MatrixXd md = to_double(m);
  Eigen::EigenSolver<Eigen::MatrixXd> es(md.transpose());
  if (es.info() != Eigen::Success)
    throw Error(errc::validation, "eigensolver did not converge");

  const Eigen::VectorXcd vals = es.eigenvalues();
  const double vmax =
      std::max(1.0, vals.cwiseAbs().maxCoeff());
  const double tol = 1e-7 * vmax;

  // numeric leading eigenvalue and simplicity of its cluster
  Eigen::Index lead_idx = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (vals(i).real() > vals(lead_idx).real()) lead_idx = i;
  const std::complex<double> lead = vals(lead_idx);
  if (std::abs(lead.imag()) > tol)
    throw Error(errc::irreducibility_violation,
                "leading eigenvalue is not real");
  int lead_mult = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(vals(i) - lead) <= tol) ++lead_mult;
  if (lead_mult != 1)
    throw Error(errc::irreducibility_violation,
                "leading eigenvalue is not simple");

  s.conditions.radius_matches = std::abs(lead.real() - lambda0_d) <= 1e-9;

  // exact limiting frequencies when the radius is where the theory puts it
  if (s.conditions.radius_matches) {
    s.r_exact = exact_leading_vector(m, lambda0);
    s.r = to_double(s.r_exact);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> right(md);
    Eigen::Index ri = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (right.eigenvalues()(i).real() > right.eigenvalues()(ri).real())
        ri = i;
    Eigen::VectorXd rv = right.eigenvectors().col(ri).real().cwiseAbs();
    const double total = rv.sum();
    if (total <= 0)
      throw Error(errc::irreducibility_violation,
                  "could not extract a positive leading eigenvector");
    s.r = rv / total;
    s.r_exact.resize(0);
  }

  // defectiveness: every eigenvalue cluster needs full geometric multiplicity
  std::vector<char> clustered(static_cast<std::size_t>(n), 0);
  bool defective = false;
  for (Eigen::Index i = 0; i < n && !defective; ++i) {
    if (clustered[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index j = i; j < n; ++j)
      if (!clustered[static_cast<std::size_t>(j)] &&
          std::abs(vals(j) - vals(i)) <= tol) {
        cluster.push_back(j);
        clustered[static_cast<std::size_t>(j)] = 1;
      }
    if (cluster.size() < 2) continue;
    std::complex<double> centre{0.0, 0.0};
    for (Eigen::Index j : cluster) centre += vals(j);
    centre /= static_cast<double>(cluster.size());
    Eigen::MatrixXcd shifted = md.cast<std::complex<double>>();
    shifted.diagonal().array() -= centre;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const Eigen::VectorXd sv = svd.singularValues();
    const double rank_tol =
        sv.size() ? sv(0) * static_cast<double>(n) * 1e-12 : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
      if (sv(j) > rank_tol) ++rank;
    const Eigen::Index geometric = n - rank;
    if (geometric < static_cast<Eigen::Index>(cluster.size())) defective = true;
  }
  s.diagonalizable = !defective;
  s.conditions.defective_ok = !defective;

  // group conjugates; keep representatives with positive imaginary part
  std::vector<Mode> modes;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[static_cast<std::size_t>(lead_idx)] = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    Mode mode;
    if (std::abs(vals(i).imag()) <= tol) {
      mode.lam = {vals(i).real(), 0.0};
      mode.vec = es.eigenvectors().col(i);
      mode.is_complex = false;
      used[static_cast<std::size_t>(i)] = 1;
    } else {
      // find the conjugate partner and keep one representative
      Eigen::Index partner = -1;
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (!used[static_cast<std::size_t>(j)] &&
            std::abs(vals(j) - std::conj(vals(i))) <= tol) {
          partner = j;
          break;
        }
      if (partner < 0)
        throw Error(errc::validation,
                    "complex eigenvalue without a conjugate partner");
      used[static_cast<std::size_t>(i)] = 1;
      used[static_cast<std::size_t>(partner)] = 1;
      mode.lam = vals(i);
      mode.vec = es.eigenvectors().col(i);
      if (mode.lam.imag() < 0) {
        mode.lam = std::conj(mode.lam);
        mode.vec = mode.vec.conjugate();
      }
      mode.is_complex = true;
    }
    modes.push_back(std::move(mode));
  }

  // normalization: largest-modulus entry becomes exactly 1
  for (Mode& mode : modes) {
    Eigen::Index jmax = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < mode.vec.size(); ++j) {
      const double mag = std::abs(mode.vec(j));
      if (mag > best + 1e-15 * vmax) {
        best = mag;
        jmax = j;
      }
    }
    if (best <= 0.0)
      throw Error(errc::validation, "zero eigenvector from the solver");
    mode.vec /= mode.vec(jmax);
  }

  // order: complex representatives before reals, descending real part
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.is_complex != b.is_complex) return a.is_complex;
    if (a.lam.real() != b.lam.real()) return a.lam.real() > b.lam.real();
    return a.lam.imag() > b.lam.imag();
  });

  EigenPair leading;
  leading.value_re = lead.real();
  leading.value_im = 0.0;
  leading.left_re = Eigen::VectorXd::Ones(n);
  leading.left_im = Eigen::VectorXd::Zero(n);
  leading.kind = ModeKind::Leading;
  s.pairs.push_back(std::move(leading));

  double max_nonleading = -std::numeric_limits<double>::infinity();
  for (const Mode& mode : modes) {
    EigenPair p;
    p.value_re = mode.lam.real();
    p.value_im = mode.lam.imag();
    p.left_re = mode.vec.real();
    p.left_im = mode.is_complex ? Eigen::VectorXd(mode.vec.imag())
                                : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
    p.kind = mode.is_complex ? ModeKind::ComplexPairRepresentative
                             : ModeKind::RealNonleading;
    max_nonleading = std::max(max_nonleading, p.value_re);
    s.pairs.push_back(std::move(p));
  }

  s.conditions.gap_threshold = k + (rat_to_double(tau) - 1.0) / 2.0;
  s.conditions.max_nonleading_real = max_nonleading;
  s.conditions.spectral_gap =
      modes.empty() || max_nonleading < s.conditions.gap_threshold;

  finalize_spectral(s);
  return s;
}

}  // namespace mutkit
