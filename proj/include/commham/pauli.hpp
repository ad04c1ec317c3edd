#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "commham/error.hpp"

namespace commham {

using cplx = std::complex<double>;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;
using CVec2 = Eigen::Vector2cd;
using CVec4 = Eigen::Vector4cd;
using RVec3 = Eigen::Vector3d;
using RMat3 = Eigen::Matrix3d;

inline constexpr cplx kI{0.0, 1.0};

/// Default relative tolerance for structural checks (Hermiticity, commuting).
inline constexpr double kStructuralTol = 1e-9;

enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

const CMat2& pauli_matrix(Pauli p);
const CMat2& pauli_matrix(int index);

/// A ⊗ B with A acting on the first (leftmost) qubit.
CMat4 kron(const CMat2& a, const CMat2& b);

/// The two-qubit SWAP gate.
const CMat4& swap_gate();

/// Coefficients of H = Σ alpha[A][B] · A⊗B over the Pauli basis (I, X, Y, Z).
struct PauliCoeffs {
  std::array<std::array<double, 4>, 4> alpha{};

  double operator()(Pauli a, Pauli b) const {
    return alpha[static_cast<int>(a)][static_cast<int>(b)];
  }
  double& operator()(Pauli a, Pauli b) {
    return alpha[static_cast<int>(a)][static_cast<int>(b)];
  }

  /// r_A = (alpha_AX, alpha_AY, alpha_AZ).
  RVec3 row(Pauli a) const;
  /// c_B = (alpha_XB, alpha_YB, alpha_ZB).
  RVec3 column(Pauli b) const;
};

double frobenius(const CMat4& m);
double frobenius(const CMat2& m);

/// Largest singular value of a 2×2 matrix, closed form.
double operator_norm(const CMat2& m);
/// Largest singular value, via SVD.
double operator_norm(const CMat4& m);

bool is_hermitian(const CMat4& h, double tol = kStructuralTol);
void require_hermitian(const CMat4& h, double tol = kStructuralTol);

PauliCoeffs pauli_expand(const CMat4& h);
CMat4 pauli_reconstruct(const PauliCoeffs& c);

/// Norms of the three commutators that make up the commuting property,
/// each computed on the traceless part of h.
struct CommutatorNorms {
  double self_overlap;     ///< ‖[H⊗I, I⊗H]‖ on 8×8
  double swapped_overlap;  ///< ‖[H⊗I, I⊗THT]‖ on 8×8
  double swap_pair;        ///< ‖[H, THT]‖ on 4×4
  double scale;            ///< max(1, ‖H₀‖²), H₀ the traceless part
};

CommutatorNorms commutator_norms(const CMat4& h);

bool is_commuting(const CMat4& h, double tol = kStructuralTol);

/// e^{i h t} for Hermitian h, via eigendecomposition.
CMat4 expm_hermitian(const CMat4& h, double t);

/// e^{i h t} for a Hermitian 2×2 h.
CMat2 expm_hermitian(const CMat2& h, double t);

}  // namespace commham
