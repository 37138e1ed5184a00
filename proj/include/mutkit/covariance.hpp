#pragma once

#include "mutkit/spectral.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace mutkit {

enum class KernelKind { CosCos, CosSin, SinSin };

// Closed form of the moment integrals over [0,1] of
//   t^(-r) * trig_1(a*log(1/t)) * trig_2(b*log(1/t)),
// where (trig_1, trig_2) is (cos,cos), (cos,sin) or (sin,sin). Requires r < 1.
double integral_kernel(double r, double a, double b, KernelKind kind);

// Projection weights: one (alpha_r, alpha_i) per mode in SpectralData::pairs
// order; the imaginary weight is ignored (forced 0) for real modes and the
// leading mode.
struct AlphaWeights {
  std::vector<std::pair<double, double>> a;

  static AlphaWeights zeros(std::size_t modes) {
    AlphaWeights w;
    w.a.assign(modes, {0.0, 0.0});
    return w;
  }
};

enum class BKind { RR, CC, RC };

// Limit of the Cesaro averages (1/n) sum_j beta_i(j,n) * beta_l(j,n) of the
// projection coefficients, as a closed form in the eigenvalues and weights.
// The leading mode enters with effective eigenvalue (k, 0) and constant
// coefficient alpha_0. Throws divergence when the gap condition fails for the
// pair. B^{CR}(i,l) equals B^{RC}(l,i).
double b_limit(int i, int l, BKind kind, const AlphaWeights& alphas,
               const SpectralData& spectral, double tau, int k);

// Closed-form projection coefficients at step j out of n (boundary value at
// j = n is exactly (alpha_r, alpha_i)).
std::pair<double, double> beta_coefficient(double j, double n, int i,
                                           const AlphaWeights& alphas,
                                           const SpectralData& spectral,
                                           double tau, int k);

// Limiting variance of the alpha-weighted projection of the centered counts:
// full double sum of B-weighted quadratic forms u_i Theta u_l^T.
double sigma_squared(const AlphaWeights& alphas, const Eigen::MatrixXd& theta,
                     const SpectralData& spectral, double tau, int k);

enum class Part { Re, Im };

// Closed-form limiting covariance of two projection coordinates (modes i, l
// with the chosen real/imag parts). Equals the polarization of sigma_squared.
double projection_covariance(int i, Part part_i, int l, Part part_l,
                             const Eigen::MatrixXd& theta,
                             const SpectralData& spectral, double tau, int k);

// Row-indexed variant: p, q are U-row indices (mode/part per spectral.rows).
double projection_covariance_rows(int p, int q, const Eigen::MatrixXd& theta,
                                  const SpectralData& spectral, double tau,
                                  int k);

struct CovarianceReport {
  Eigen::MatrixXd sigma_prime;  // covariance of the U-projected coordinates
  Eigen::MatrixXd sigma;        // U_inv * sigma_prime * U_inv^T, symmetrized
};

CovarianceReport build_sigma(const Eigen::MatrixXd& theta,
                             const SpectralData& spectral, double tau, int k);

}  // namespace mutkit
