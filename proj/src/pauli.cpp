#include "commham/pauli.hpp"

#include <algorithm>
#include <cmath>

namespace commham {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::SingularTime: return "SingularTime";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::UndefinedRatio: return "UndefinedRatio";
    case ErrorCode::InvalidAPrime: return "InvalidAPrime";
    case ErrorCode::ExceptionalCase: return "ExceptionalCase";
    case ErrorCode::SymmetricCase: return "SymmetricCase";
    case ErrorCode::AsymmetricCase: return "AsymmetricCase";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InvalidCircuit: return "InvalidCircuit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::array<CMat2, 4> make_paulis() {
  std::array<CMat2, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -kI, kI, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

CMat4 make_swap() {
  CMat4 t = CMat4::Zero();
  t(0, 0) = 1;
  t(1, 2) = 1;
  t(2, 1) = 1;
  t(3, 3) = 1;
  return t;
}

using CMat8 = Eigen::Matrix<cplx, 8, 8>;

CMat8 kron_left(const CMat4& h) {
  // h ⊗ I₂ on three qubits (h on qubits 0,1).
  CMat8 out = CMat8::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 2; ++k) out(2 * r + k, 2 * c + k) = h(r, c);
  return out;
}

CMat8 kron_right(const CMat4& h) {
  // I₂ ⊗ h on three qubits (h on qubits 1,2).
  CMat8 out = CMat8::Zero();
  for (int k = 0; k < 2; ++k) out.block<4, 4>(4 * k, 4 * k) = h;
  return out;
}

}  // namespace

const CMat2& pauli_matrix(Pauli p) { return pauli_matrix(static_cast<int>(p)); }

const CMat2& pauli_matrix(int index) {
  static const std::array<CMat2, 4> paulis = make_paulis();
  return paulis.at(static_cast<std::size_t>(index));
}

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const CMat4& swap_gate() {
  static const CMat4 t = make_swap();
  return t;
}

RVec3 PauliCoeffs::row(Pauli a) const {
  const auto& r = alpha[static_cast<int>(a)];
  return {r[1], r[2], r[3]};
}

RVec3 PauliCoeffs::column(Pauli b) const {
  const int j = static_cast<int>(b);
  return {alpha[1][j], alpha[2][j], alpha[3][j]};
}

double frobenius(const CMat4& m) { return m.norm(); }
double frobenius(const CMat2& m) { return m.norm(); }

double operator_norm(const CMat2& m) {
  const double f2 = m.squaredNorm();
  const double det = std::abs(m.determinant());
  const double disc = std::max(0.0, f2 * f2 - 4.0 * det * det);
  return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

double operator_norm(const CMat4& m) {
  Eigen::JacobiSVD<CMat4> svd(m);
  return svd.singularValues()(0);
}

bool is_hermitian(const CMat4& h, double tol) {
  if (!h.allFinite()) return false;
  return frobenius(CMat4(h - h.adjoint())) <= tol * std::max(1.0, frobenius(h));
}

void require_hermitian(const CMat4& h, double tol) {
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorCode::NonHermitian, "matrix is not Hermitian within tolerance");
  }
}

PauliCoeffs pauli_expand(const CMat4& h) {
  require_hermitian(h);
  PauliCoeffs c;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const CMat4 p = kron(pauli_matrix(a), pauli_matrix(b));
      c.alpha[a][b] = (p * h).trace().real() / 4.0;
    }
  return c;
}

CMat4 pauli_reconstruct(const PauliCoeffs& c) {
  CMat4 h = CMat4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (c.alpha[a][b] != 0.0) h += c.alpha[a][b] * kron(pauli_matrix(a), pauli_matrix(b));
  return h;
}

CommutatorNorms commutator_norms(const CMat4& h) {
  require_hermitian(h);
  const CMat4 h0 = h - (h.trace() / 4.0) * CMat4::Identity();
  const CMat4 tht = swap_gate() * h0 * swap_gate();

  const CMat8 left = kron_left(h0);
  const CMat8 right = kron_right(h0);
  const CMat8 right_swapped = kron_right(tht);

  CommutatorNorms n;
  n.self_overlap = (left * right - right * left).norm();
  n.swapped_overlap = (left * right_swapped - right_swapped * left).norm();
  n.swap_pair = (h0 * tht - tht * h0).norm();
  n.scale = std::max(1.0, h0.squaredNorm());
  return n;
}

bool is_commuting(const CMat4& h, double tol) {
  const CommutatorNorms n = commutator_norms(h);
  const double bound = tol * n.scale;
  return n.self_overlap <= bound && n.swapped_overlap <= bound && n.swap_pair <= bound;
}

CMat4 expm_hermitian(const CMat4& h, double t) {
  require_hermitian(h);
  const CMat4 hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat4> es(hs);
  const Eigen::Vector4d& w = es.eigenvalues();
  CVec4 phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::exp(kI * (w(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMat2 expm_hermitian(const CMat2& h, double t) {
  if (!h.allFinite() || (h - h.adjoint()).norm() > kStructuralTol * std::max(1.0, h.norm())) {
    throw Error(ErrorCode::NonHermitian, "2x2 matrix is not Hermitian within tolerance");
  }
  const CMat2 hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat2> es(hs);
  const Eigen::Vector2d& w = es.eigenvalues();
  CVec2 phases(std::exp(kI * (w(0) * t)), std::exp(kI * (w(1) * t)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace commham
