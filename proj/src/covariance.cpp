#include "mutkit/covariance.hpp"

#include "mutkit/error.hpp"

#include <cmath>
#include <string>

namespace mutkit {

double integral_kernel(double r, double a, double b, KernelKind kind) {
  if (!(r < 1.0))
    throw Error(errc::divergence,
                "moment integral diverges for r >= 1 (r = " + std::to_string(r) +
                    ")");
  const double s = 1.0 - r;
  const double dm = a - b, dp = a + b;
  const double qm = s * s + dm * dm, qp = s * s + dp * dp;
  switch (kind) {
    case KernelKind::CosCos:
      return 0.5 * s * (1.0 / qm + 1.0 / qp);
    case KernelKind::CosSin:
      return 0.5 * (dp / qp - dm / qm);
    case KernelKind::SinSin:
      return 0.5 * s * (1.0 / qm - 1.0 / qp);
  }
  throw Error(errc::validation, "unknown kernel kind");
}

namespace {

struct ModeView {
  double lam_re;
  double lam_im;
  double alpha_r;
  double alpha_i;
  const Eigen::VectorXd* u_re;
  const Eigen::VectorXd* u_im;  // nullptr for real/leading modes
};

// The leading mode projects onto a constant-coefficient direction, which the
// closed forms reproduce with effective eigenvalue (k, 0).
ModeView mode_view(int i, const AlphaWeights* alphas, const SpectralData& s,
                   int k) {
  if (i < 0 || static_cast<std::size_t>(i) >= s.pairs.size())
    throw Error(errc::validation, "mode index out of range");
  const EigenPair& p = s.pairs[static_cast<std::size_t>(i)];
  ModeView v;
  const bool complex_pair = p.kind == ModeKind::ComplexPairRepresentative;
  if (p.kind == ModeKind::Leading) {
    v.lam_re = static_cast<double>(k);
    v.lam_im = 0.0;
  } else {
    v.lam_re = p.value_re;
    v.lam_im = complex_pair ? p.value_im : 0.0;
  }
  if (alphas) {
    if (alphas->a.size() != s.pairs.size())
      throw Error(errc::validation, "alpha weights do not match mode count");
    v.alpha_r = alphas->a[static_cast<std::size_t>(i)].first;
    v.alpha_i = complex_pair ? alphas->a[static_cast<std::size_t>(i)].second : 0.0;
  } else {
    v.alpha_r = 0.0;
    v.alpha_i = 0.0;
  }
  v.u_re = &p.left_re;
  v.u_im = complex_pair ? &p.left_im : nullptr;
  return v;
}

struct PairConstants {
  double a;
  double b;
  double c;
};

PairConstants pair_constants(const ModeView& mi, const ModeView& ml, double tau,
                             int k) {
  PairConstants pc;
  pc.a = 1.0 - (mi.lam_re + ml.lam_re - 2.0 * k) / (tau - 1.0);
  pc.b = (mi.lam_im - ml.lam_im) / (tau - 1.0);
  pc.c = (mi.lam_im + ml.lam_im) / (tau - 1.0);
  if (!(pc.a > 0.0))
    throw Error(errc::divergence,
                "projection averages diverge: spectral gap violated for the "
                "mode pair");
  return pc;
}

double b_limit_view(const ModeView& mi, const ModeView& ml, BKind kind,
                    double tau, int k) {
  const PairConstants pc = pair_constants(mi, ml, tau, k);
  const double prr = mi.alpha_r * ml.alpha_r;
  const double pcc = mi.alpha_i * ml.alpha_i;
  const double prc = mi.alpha_r * ml.alpha_i;
  const double pcr = mi.alpha_i * ml.alpha_r;
  const double d1 = 2.0 * (pc.a * pc.a + pc.c * pc.c);
  const double d2 = 2.0 * (pc.a * pc.a + pc.b * pc.b);
  switch (kind) {
    case BKind::RR:
      return (pc.a * (prr - pcc) + pc.c * (prc + pcr)) / d1 +
             (pc.a * (prr + pcc) - pc.b * (prc - pcr)) / d2;
    case BKind::CC:
      return (pc.a * (pcc - prr) - pc.c * (pcr + prc)) / d1 +
             (pc.a * (prr + pcc) - pc.b * (prc - pcr)) / d2;
    case BKind::RC:
      return (pc.a * (prc + pcr) - pc.c * (prr - pcc)) / d1 +
             (pc.a * (prc - pcr) + pc.b * (prr + pcc)) / d2;
  }
  throw Error(errc::validation, "unknown B kind");
}

double quad_form(const Eigen::VectorXd* x, const Eigen::MatrixXd& theta,
                 const Eigen::VectorXd* y) {
  if (!x || !y) return 0.0;
  return x->transpose() * theta * (*y);
}

}  // namespace

double b_limit(int i, int l, BKind kind, const AlphaWeights& alphas,
               const SpectralData& spectral, double tau, int k) {
  return b_limit_view(mode_view(i, &alphas, spectral, k),
                      mode_view(l, &alphas, spectral, k), kind, tau, k);
}

std::pair<double, double> beta_coefficient(double j, double n, int i,
                                           const AlphaWeights& alphas,
                                           const SpectralData& spectral,
                                           double tau, int k) {
  const ModeView m = mode_view(i, &alphas, spectral, k);
  // ratio (n+1)/(j+1): identical limit as n/(j+1) (the dropped remainder term)
  // and exact boundary value beta(n, n) = alpha
  const double log_ratio = std::log((n + 1.0) / (j + 1.0));
  const double scale = std::exp((m.lam_re - k) / (tau - 1.0) * log_ratio);
  const double phase = m.lam_im / (tau - 1.0) * log_ratio;
  const double cp = std::cos(phase), sp = std::sin(phase);
  return {scale * (m.alpha_r * cp + m.alpha_i * sp),
          scale * (m.alpha_i * cp - m.alpha_r * sp)};
}

double sigma_squared(const AlphaWeights& alphas, const Eigen::MatrixXd& theta,
                     const SpectralData& spectral, double tau, int k) {
  const int modes = static_cast<int>(spectral.pairs.size());
  double total = 0.0;
  for (int i = 0; i < modes; ++i) {
    const ModeView mi = mode_view(i, &alphas, spectral, k);
    if (mi.alpha_r == 0.0 && mi.alpha_i == 0.0) continue;
    for (int l = 0; l < modes; ++l) {
      const ModeView ml = mode_view(l, &alphas, spectral, k);
      if (ml.alpha_r == 0.0 && ml.alpha_i == 0.0) continue;
      total += b_limit_view(mi, ml, BKind::RR, tau, k) *
                   quad_form(mi.u_re, theta, ml.u_re) +
               b_limit_view(mi, ml, BKind::CC, tau, k) *
                   quad_form(mi.u_im, theta, ml.u_im) +
               b_limit_view(mi, ml, BKind::RC, tau, k) *
                   quad_form(mi.u_re, theta, ml.u_im) +
               b_limit_view(ml, mi, BKind::RC, tau, k) *
                   quad_form(mi.u_im, theta, ml.u_re);
    }
  }
  return total;
}

double projection_covariance(int i, Part part_i, int l, Part part_l,
                             const Eigen::MatrixXd& theta,
                             const SpectralData& spectral, double tau, int k) {
  if (part_i == Part::Im && part_l == Part::Re)
    return projection_covariance(l, Part::Re, i, Part::Im, theta, spectral, tau,
                                 k);
  const ModeView mi = mode_view(i, nullptr, spectral, k);
  const ModeView ml = mode_view(l, nullptr, spectral, k);
  const PairConstants lem = pair_constants(mi, ml, tau, k);
  // Corollary constants absorb one (tau - 1) factor
  const double a = (tau - 1.0) * lem.a;
  const double b = (tau - 1.0) * lem.b;
  const double c = (tau - 1.0) * lem.c;
  const double rr = quad_form(mi.u_re, theta, ml.u_re);
  const double cc = quad_form(mi.u_im, theta, ml.u_im);
  const double rc = quad_form(mi.u_re, theta, ml.u_im);
  const double cr = quad_form(mi.u_im, theta, ml.u_re);
  const double d1 = a * a + c * c;
  const double d2 = a * a + b * b;
  const double half = (tau - 1.0) / 2.0;
  if (part_i == Part::Re && part_l == Part::Re)
    return half * ((a * (rr - cc) + c * (rc + cr)) / d1 +
                   (a * (rr + cc) - b * (rc - cr)) / d2);
  if (part_i == Part::Im && part_l == Part::Im)
    return half * ((a * (cc - rr) - c * (rc + cr)) / d1 +
                   (a * (rr + cc) - b * (rc - cr)) / d2);
  // (Re, Im)
  return half * ((c * (cc - rr) + a * (rc + cr)) / d1 +
                 (b * (rr + cc) + a * (rc - cr)) / d2);
}

double projection_covariance_rows(int p, int q, const Eigen::MatrixXd& theta,
                                  const SpectralData& spectral, double tau,
                                  int k) {
  if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= spectral.rows.size() ||
      static_cast<std::size_t>(q) >= spectral.rows.size())
    throw Error(errc::validation, "row index out of range");
  const RowLabel& rp = spectral.rows[static_cast<std::size_t>(p)];
  const RowLabel& rq = spectral.rows[static_cast<std::size_t>(q)];
  return projection_covariance(rp.mode, rp.imag ? Part::Im : Part::Re, rq.mode,
                               rq.imag ? Part::Im : Part::Re, theta, spectral,
                               tau, k);
}

CovarianceReport build_sigma(const Eigen::MatrixXd& theta,
                             const SpectralData& spectral, double tau, int k) {
  if (!spectral.diagonalizable || spectral.U.rows() == 0)
    throw Error(errc::unsupported,
                "covariance requires a diagonalizable substitution matrix");
  const Eigen::Index n = spectral.U.rows();
  CovarianceReport rep;
  rep.sigma_prime.resize(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      rep.sigma_prime(p, q) = projection_covariance_rows(
          static_cast<int>(p), static_cast<int>(q), theta, spectral, tau, k);
  const Eigen::MatrixXd raw =
      spectral.U_inv * rep.sigma_prime * spectral.U_inv.transpose();
  const double skew = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (!(skew < 1e-10))
    throw Error(errc::validation,
                "covariance reconstruction is asymmetric beyond tolerance");
  rep.sigma = 0.5 * (raw + raw.transpose());
  return rep;
}

}  // namespace mutkit
