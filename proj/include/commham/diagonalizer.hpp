#pragma once

#include "commham/pauli.hpp"

namespace commham {

/// Rows and columns indexed by (X, Y, Z).
using MMatrix = RMat3;

struct LocalDiagonalization {
  CMat2 u = CMat2::Identity();
  Eigen::Vector4d eigs = Eigen::Vector4d::Zero();  ///< (a, b, c, d)
  RVec3 v = RVec3::Zero();
  double sign = 1.0;  ///< m ≈ sign · v vᵀ
  double a_coef = 0.0;  ///< r_I = a_coef · v
  double b_coef = 0.0;  ///< c_I = b_coef · v
  double residual = 0.0;
};

struct CanonicalParams {
  double a_prime = 0.0;
  double d_prime = 0.0;
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  bool symmetric = true;
  double b_raw = 0.0;
  double c_raw = 0.0;
  /// Rescale factor s with H_traceless = s · H′ (symmetric: b̄, asymmetric: b + c).
  double scale = 1.0;
  CMat2 u = CMat2::Identity();
};

struct ExtractedV {
  RVec3 v = RVec3::Zero();
  double sign = 1.0;
  double residual = 0.0;
};

MMatrix build_m_matrix(const PauliCoeffs& c);

/// Best rank-one fit m ≈ sign · v vᵀ. Throws RankTooHigh if the residual exceeds tol.
ExtractedV extract_v(const MMatrix& m, double tol);

/// SU(2) matrix whose columns are the +|v| and −|v| eigenvectors of v·σ.
CMat2 diagonalizing_unitary(const RVec3& v);

LocalDiagonalization local_diagonalize(const CMat4& h);

struct CanonicalizeOptions {
  double tol = 1e-8;
  /// Treat b = c inputs with the asymmetric rescale (a′ + d′ = −1).
  bool force_asymmetric = false;
};

CanonicalParams canonicalize(const LocalDiagonalization& ld, const CanonicalizeOptions& opts = {});

/// Builds symmetric-case parameters directly (a′ + d′ = −2) from a local unitary,
/// rescaled into SU(2).
CanonicalParams make_symmetric_params(double a_prime, const CMat2& u);
/// Builds asymmetric-case parameters directly (a′ + d′ = −1); b, c are the raw
/// traceless middle eigenvalues with b + c = 1.
CanonicalParams make_asymmetric_params(double a_prime, double b, const CMat2& u);

/// Haar-random element of U(2) from a seeded generator.
template <class Rng>
CMat2 random_unitary2(Rng& rng);

/// Reassembles (U⊗U) diag(eigs) (U⊗U)†.
CMat4 assemble(const CMat2& u, const Eigen::Vector4d& eigs);

}  // namespace commham

#include <random>

namespace commham {

template <class Rng>
CMat2 random_unitary2(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat2 z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat2> qr(z);
  CMat2 q = qr.householderQ();
  const CMat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace commham
