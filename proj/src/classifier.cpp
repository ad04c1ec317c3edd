#include "commham/classifier.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace commham {

std::string_view to_string(HamKind k) {
  switch (k) {
    case HamKind::NonCommuting: return "NonCommuting";
    case HamKind::Diagonal: return "Diagonal";
    case HamKind::NonEntangling: return "NonEntangling";
    case HamKind::Exceptional: return "Exceptional";
    case HamKind::HardSymmetric: return "HardSymmetric";
    case HamKind::HardAsymmetric: return "HardAsymmetric";
  }
  return "Unknown";
}

std::string_view to_string(Subcase s) {
  switch (s) {
    case Subcase::Generic: return "Generic";
    case Subcase::APlusOne: return "APlusOne";
    case Subcase::AMinusOne: return "AMinusOne";
    case Subcase::AMinusThree: return "AMinusThree";
  }
  return "Unknown";
}

Subcase subcase_for(double a_prime, double tol) {
  if (std::abs(a_prime + 1.0) <= tol) return Subcase::AMinusOne;
  if (std::abs(a_prime - 1.0) <= tol) return Subcase::APlusOne;
  if (std::abs(a_prime + 3.0) <= tol) return Subcase::AMinusThree;
  return Subcase::Generic;
}

HamClass classify(const CMat4& h, double tol) {
  HamClass out;
  LocalDiagonalization ld;
  try {
    ld = local_diagonalize(h);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonCommuting) return out;
    throw;
  }
  out.diag = ld;

  const cplx alpha = ld.u(0, 0);
  const cplx beta = ld.u(1, 0);
  Margins& mg = out.margins;
  mg.abs_alpha = std::abs(alpha);
  mg.abs_beta = std::abs(beta);
  mg.alpha_beta_gap = std::abs(mg.abs_alpha - mg.abs_beta);

  const Eigen::Vector4d e = ld.eigs.array() - ld.eigs.mean();
  const double sc = e.cwiseAbs().maxCoeff();
  if (sc > 0) {
    mg.b_plus_c = std::abs(e(1) + e(2)) / sc;
    mg.b_minus_c = std::abs(e(1) - e(2)) / sc;
  }

  if (mg.abs_alpha <= tol || mg.abs_beta <= tol) {
    out.kind = HamKind::Diagonal;
    return out;
  }
  if (!(sc > 0) || mg.b_plus_c <= tol) {
    out.kind = HamKind::NonEntangling;
    return out;
  }

  CanonicalizeOptions opts;
  opts.tol = tol;
  const CanonicalParams p = canonicalize(ld, opts);
  out.params = p;
  mg.a_plus_one = std::abs(p.a_prime + 1.0);
  mg.a_minus_one = std::abs(p.a_prime - 1.0);
  mg.a_plus_three = std::abs(p.a_prime + 3.0);

  if (p.symmetric && mg.a_plus_one <= tol && mg.alpha_beta_gap <= tol) {
    out.kind = HamKind::Exceptional;
    out.theta = std::arg(alpha / beta);
    return out;
  }
  if (p.symmetric) {
    out.kind = HamKind::HardSymmetric;
    out.subcase = subcase_for(p.a_prime, tol);
    return out;
  }
  out.kind = HamKind::HardAsymmetric;
  return out;
}

double second_schmidt(const CVec4& psi) {
  CMat2 m;
  m << psi(0), psi(1), psi(2), psi(3);
  return Eigen::JacobiSVD<CMat2>(m).singularValues()(1);
}

bool is_entangling_bruteforce(const CMat4& h, int samples, std::uint64_t seed) {
  require_hermitian(h);
  const CMat4 hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat4> es(hs);
  const CMat4& q = es.eigenvectors();
  const Eigen::Vector4d& w = es.eigenvalues();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-std::numbers::pi, std::numbers::pi);
  const int grid = std::max(1, samples / 2);
  for (int k = 0; k < samples; ++k) {
    double t;
    if (k < grid) {
      t = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 0.5) / grid;
    } else {
      t = unif(rng);
    }
    CVec4 ph;
    for (int i = 0; i < 4; ++i) ph(i) = std::exp(kI * (w(i) * t));
    const CMat4 evo = q * ph.asDiagonal() * q.adjoint();
    for (int basis = 0; basis < 4; ++basis) {
      if (second_schmidt(evo.col(basis)) > 1e-8) return true;
    }
  }
  return false;
}

}  // namespace commham
