#pragma once

// Independent oracles and generators shared by unit and acceptance tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "commham/commham.hpp"

namespace oracle {

using commham::cplx;
using commham::CMat2;
using commham::CMat4;
using commham::CVec2;

inline constexpr double pi = std::numbers::pi;
inline const cplx I{0.0, 1.0};

inline CMat4 tensor(const CMat2& a, const CMat2& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline CMat2 X() { CMat2 m; m << 0, 1, 1, 0; return m; }
inline CMat2 Y() { CMat2 m; m << 0, -I, I, 0; return m; }
inline CMat2 Z() { CMat2 m; m << 1, 0, 0, -1; return m; }
inline CMat2 Id() { return CMat2::Identity(); }

inline CMat2 hadamard() {
  CMat2 h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

inline CMat4 random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline CVec2 random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec2 v(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
  return v.normalized();
}

inline CMat2 random_unitary(std::mt19937_64& rng) { return commham::random_unitary2(rng); }

/// (U⊗U)·diag(eigs)·(U⊗U)†, built with Eigen's Kronecker product.
inline CMat4 conjugated_diag(const CMat2& u, const Eigen::Vector4d& eigs) {
  const CMat4 uu = tensor(u, u);
  return uu * eigs.cast<cplx>().asDiagonal() * uu.adjoint();
}

inline Eigen::Vector4d random_eigs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

/// Symmetric-case Hamiltonian (U⊗U)·diag(a′, 1, 1, −2−a′)·(U⊗U)†.
inline CMat4 symmetric_h(double a_prime, const CMat2& u) {
  return conjugated_diag(u, Eigen::Vector4d(a_prime, 1.0, 1.0, -2.0 - a_prime));
}

inline CMat4 commutator_norm_input(const CMat4& a, const CMat4& b) { return a * b - b * a; }

/// Two-qubit gadget action by explicit 4×4 algebra. Data on qubit 0, ancilla on
/// qubit 1 prepared in U|prep⟩; diagonal evolution `dphases` on |jk⟩; then U†
/// on the postselected qubit and projection on |post_bit⟩. Returns the 2×2 map
/// from data to the surviving qubit.
inline CMat2 two_qubit_gadget(const CMat2& u, const Eigen::Vector4cd& dphases, int prep,
                              bool postselect_data, int post_bit) {
  CMat2 res = CMat2::Zero();
  const CMat4 dmat = dphases.asDiagonal();
  for (int in = 0; in < 2; ++in) {
    Eigen::Vector2cd data = Eigen::Vector2cd::Zero();
    data(in) = 1.0;
    Eigen::Vector2cd anc = u.col(prep);
    Eigen::Vector4cd s = Eigen::kroneckerProduct(data, anc).eval();
    s = dmat * s;
    const CMat4 undo = postselect_data ? tensor(u.adjoint(), Id()) : tensor(Id(), u.adjoint());
    s = undo * s;
    Eigen::Vector2cd out;
    for (int k = 0; k < 2; ++k) {
      const int idx = postselect_data ? (2 * post_bit + k) : (2 * k + post_bit);
      out(k) = s(idx);
    }
    res.col(in) = out;
  }
  return res;
}

inline Eigen::Vector4cd d_phases(double a, double d, double t) {
  return {std::exp(I * (a * t)), std::exp(I * t), std::exp(I * t), std::exp(I * (d * t))};
}

inline Eigen::Vector4cd d2_phases(double a, double d, double t1, double t2) {
  const double tt = t1 + t2;
  return {std::exp(I * (a * tt)), std::exp(I * t1), std::exp(I * t2), std::exp(I * (d * tt))};
}

/// min over global phase of ‖â − e^{iφ} b̂‖_F for Frobenius-normalized a, b.
inline double projective_gap(const CMat2& a, const CMat2& b) {
  const CMat2 an = a / a.norm(), bn = b / b.norm();
  const cplx ov = (bn.adjoint() * an).trace();
  const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (an - ph * bn).norm();
}

inline double state_gap(const CVec2& a, const CVec2& b) {
  const CVec2 an = a.normalized(), bn = b.normalized();
  const cplx ov = bn.dot(an);
  const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (an - ph * bn).norm();
}

/// Largest singular value via a full SVD.
inline double opnorm(const CMat2& m) { return Eigen::JacobiSVD<CMat2>(m).singularValues()(0); }

/// Schmidt-rank entanglement oracle using expm through a generic eigen solver.
inline bool entangles(const CMat4& h, int samples, std::uint64_t seed) {
  Eigen::ComplexEigenSolver<CMat4> es(h);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int k = 0; k < samples; ++k) {
    const double t = k < samples / 2 ? -pi + 2.0 * pi * (k + 0.5) / (samples / 2) : u(rng);
    Eigen::Vector4cd ph;
    for (int i = 0; i < 4; ++i) ph(i) = std::exp(I * es.eigenvalues()(i) * t);
    const CMat4 v = es.eigenvectors();
    const CMat4 evo = v * ph.asDiagonal() * v.inverse();
    for (int b = 0; b < 4; ++b) {
      CMat2 m;
      m << evo(0, b), evo(1, b), evo(2, b), evo(3, b);
      if (Eigen::JacobiSVD<CMat2>(m).singularValues()(1) > 1e-8) return true;
    }
  }
  return false;
}

/// Central finite difference of L(t)·L(s)⁻¹ in t at s = t.
template <class F>
CMat2 fd_tangent(F&& normalized_at, double v, double h = 1e-6) {
  const CMat2 base_inv = normalized_at(v).inverse();
  return (normalized_at(v + h) - normalized_at(v - h)) / (2.0 * h) * base_inv;
}

}  // namespace oracle
