#include "commham/diagonalizer.hpp"

#include <algorithm>
#include <cmath>

namespace commham {

namespace {

constexpr double kTieTol = 1e-12;

void fix_column_phase(CMat2& u, int col) {
  int best = 0;
  if (std::abs(u(1, col)) > std::abs(u(0, col)) + kTieTol) best = 1;
  const cplx z = u(best, col);
  const double mag = std::abs(z);
  if (mag > 0) u.col(col) *= std::conj(z) / mag;
}

}  // namespace

MMatrix build_m_matrix(const PauliCoeffs& c) {
  MMatrix m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = c.alpha[a + 1][b + 1];
  return m;
}

ExtractedV extract_v(const MMatrix& m, double tol) {
  const MMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MMatrix> es(sym);
  const Eigen::Vector3d& w = es.eigenvalues();
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(w(i)) > std::abs(w(k))) k = i;

  ExtractedV out;
  if (std::abs(w(k)) <= tol) {
    out.residual = m.norm();
    if (out.residual > tol) throw Error(ErrorCode::RankTooHigh, "M is not rank one");
    return out;
  }
  out.sign = w(k) > 0 ? 1.0 : -1.0;
  out.v = std::sqrt(std::abs(w(k))) * es.eigenvectors().col(k);
  const double vn = out.v.norm();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(out.v(i)) > kTieTol * vn) {
      if (out.v(i) < 0) out.v = -out.v;
      break;
    }
  }
  out.residual = (m - out.sign * out.v * out.v.transpose()).norm();
  if (out.residual > tol) {
    throw Error(ErrorCode::RankTooHigh,
                "rank-one residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

CMat2 diagonalizing_unitary(const RVec3& v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n)) throw Error(ErrorCode::ZeroVector, "v must be nonzero");
  const RVec3 e = v / n;
  CMat2 s = e(0) * pauli_matrix(Pauli::X) + e(1) * pauli_matrix(Pauli::Y) +
            e(2) * pauli_matrix(Pauli::Z);
  Eigen::SelfAdjointEigenSolver<CMat2> es(s);
  CMat2 u;
  u.col(0) = es.eigenvectors().col(1);
  u.col(1) = es.eigenvectors().col(0);
  fix_column_phase(u, 0);
  fix_column_phase(u, 1);
  const cplx det = u.determinant();
  u.col(1) *= std::conj(det) / std::abs(det);
  return u;
}

CMat4 assemble(const CMat2& u, const Eigen::Vector4d& eigs) {
  const CMat4 uu = kron(u, u);
  return uu * eigs.cast<cplx>().asDiagonal() * uu.adjoint();
}

LocalDiagonalization local_diagonalize(const CMat4& h) {
  require_hermitian(h);
  if (!is_commuting(h)) throw Error(ErrorCode::NonCommuting, "commutator check failed");
  const double hn = std::max(1.0, frobenius(h));
  const PauliCoeffs coeffs = pauli_expand(h);

  LocalDiagonalization ld;
  ExtractedV ev;
  try {
    ev = extract_v(build_m_matrix(coeffs), 1e-6 * hn);
  } catch (const Error& e) {
    throw Error(ErrorCode::NonCommuting, e.what());
  }
  ld.v = ev.v;
  ld.sign = ev.sign;

  const RVec3 r_i = coeffs.row(Pauli::I);
  const RVec3 c_i = coeffs.column(Pauli::I);
  const double vn2 = ld.v.squaredNorm();
  const double small = 1e-12 * hn;
  if (vn2 > 0) {
    ld.u = diagonalizing_unitary(ld.v);
    ld.a_coef = r_i.dot(ld.v) / vn2;
    ld.b_coef = c_i.dot(ld.v) / vn2;
  } else if (r_i.norm() > small) {
    ld.u = diagonalizing_unitary(r_i);
  } else if (c_i.norm() > small) {
    ld.u = diagonalizing_unitary(c_i);
  }

  const CMat4 uu = kron(ld.u, ld.u);
  const CMat4 rotated = uu.adjoint() * h * uu;
  for (int i = 0; i < 4; ++i) ld.eigs(i) = rotated(i, i).real();
  ld.residual = frobenius(CMat4(h - assemble(ld.u, ld.eigs)));
  if (ld.residual > 1e-8 * hn) {
    throw Error(ErrorCode::NonCommuting,
                "local diagonalization residual " + std::to_string(ld.residual));
  }
  return ld;
}

CanonicalParams canonicalize(const LocalDiagonalization& ld, const CanonicalizeOptions& opts) {
  const Eigen::Vector4d e = ld.eigs.array() - ld.eigs.mean();
  const double sc = e.cwiseAbs().maxCoeff();
  const double a = e(0), b = e(1), c = e(2);
  if (!(sc > 0) || std::abs(b + c) <= opts.tol * sc) {
    throw Error(ErrorCode::Degenerate, "b + c vanishes after trace removal");
  }
  CanonicalParams p;
  p.u = ld.u;
  p.alpha = ld.u(0, 0);
  p.beta = ld.u(1, 0);
  p.b_raw = b;
  p.c_raw = c;
  if (!opts.force_asymmetric && std::abs(b - c) <= opts.tol * sc) {
    const double bbar = 0.5 * (b + c);
    p.symmetric = true;
    p.scale = bbar;
    p.a_prime = a / bbar;
    p.d_prime = -2.0 - p.a_prime;
  } else {
    const double s = b + c;
    p.symmetric = false;
    p.scale = s;
    p.a_prime = a / s;
    p.d_prime = -1.0 - p.a_prime;
  }
  return p;
}

CanonicalParams make_symmetric_params(double a_prime, const CMat2& u) {
  CanonicalParams p;
  p.u = u / std::sqrt(u.determinant());
  p.alpha = p.u(0, 0);
  p.beta = p.u(1, 0);
  p.symmetric = true;
  p.a_prime = a_prime;
  p.d_prime = -2.0 - a_prime;
  p.b_raw = 1.0;
  p.c_raw = 1.0;
  p.scale = 1.0;
  return p;
}

CanonicalParams make_asymmetric_params(double a_prime, double b, const CMat2& u) {
  CanonicalParams p;
  p.u = u / std::sqrt(u.determinant());
  p.alpha = p.u(0, 0);
  p.beta = p.u(1, 0);
  p.symmetric = false;
  p.a_prime = a_prime;
  p.d_prime = -1.0 - a_prime;
  p.b_raw = b;
  p.c_raw = 1.0 - b;
  p.scale = 1.0;
  return p;
}

}  // namespace commham
