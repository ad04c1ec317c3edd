#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("build_m_matrix") {
  using namespace oracle;
  const MMatrix mx = build_m_matrix(pauli_expand(tensor(X(), X())));
  CHECK((mx - RVec3::UnitX() * RVec3::UnitX().transpose()).norm() <= 1e-15);
  const MMatrix mz = build_m_matrix(pauli_expand(tensor(Z(), Z())));
  CHECK((mz - RVec3::UnitZ() * RVec3::UnitZ().transpose()).norm() <= 1e-15);
  const MMatrix mxy = build_m_matrix(pauli_expand(CMat4(tensor(X(), X()) + tensor(Y(), Y()))));
  CHECK((mxy - Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix()).norm() <= 1e-15);
}

TEST_CASE("extract_v") {
  MMatrix m = RVec3::UnitZ() * RVec3::UnitZ().transpose();
  CHECK((extract_v(m, 1e-9).v - RVec3::UnitZ()).norm() <= 1e-12);
  m = 4.0 * RVec3::UnitX() * RVec3::UnitX().transpose();
  CHECK((extract_v(m, 1e-9).v - RVec3(2, 0, 0)).norm() <= 1e-12);
  CHECK(extract_v(MMatrix::Zero(), 1e-9).v.norm() == 0.0);

  const RVec3 w(-0.3, 0.8, 0.1);
  const ExtractedV neg = extract_v(-w * w.transpose(), 1e-9);
  CHECK(neg.sign == -1.0);
  CHECK((neg.v + w).norm() <= 1e-12);

  try {
    extract_v(Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix(), 1e-6);
    FAIL("expected RankTooHigh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankTooHigh);
  }
}

TEST_CASE("diagonalizing_unitary") {
  CHECK((diagonalizing_unitary(RVec3::UnitZ()) - CMat2::Identity()).norm() <= 1e-15);
  const CMat2 ux = diagonalizing_unitary(RVec3::UnitX());
  CMat2 want;
  want << 1, -1, 1, 1;
  CHECK((ux - want / std::sqrt(2.0)).norm() <= 1e-12);
  CHECK(std::abs(ux.determinant() - 1.0) <= 1e-12);
  try {
    diagonalizing_unitary(RVec3::Zero());
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    const RVec3 v(g(rng), g(rng), g(rng));
    const CMat2 u = diagonalizing_unitary(v);
    const CMat2 vs = v(0) * oracle::X() + v(1) * oracle::Y() + v(2) * oracle::Z();
    CMat2 expect = CMat2::Zero();
    expect(0, 0) = v.norm();
    expect(1, 1) = -v.norm();
    CHECK((u.adjoint() * vs * u - expect).norm() <= 1e-12);
    CHECK((u.adjoint() * u - CMat2::Identity()).norm() <= 1e-12);
    CHECK(std::abs(u(0, 0) - std::conj(u(1, 1))) <= 1e-12);
    CHECK(std::abs(u(0, 1) + std::conj(u(1, 0))) <= 1e-12);
  }
}

TEST_CASE("local_diagonalize examples") {
  using namespace oracle;
  const LocalDiagonalization zz = local_diagonalize(tensor(Z(), Z()));
  CHECK((zz.u - CMat2::Identity()).norm() <= 1e-15);
  CHECK((zz.eigs - Eigen::Vector4d(1, -1, -1, 1)).norm() <= 1e-12);
  CHECK(zz.residual <= 1e-12);

  const LocalDiagonalization xx = local_diagonalize(tensor(X(), X()));
  CHECK(xx.residual <= 1e-10);
  CHECK(std::abs(std::abs(xx.u(0, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(std::abs(xx.u(1, 0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);

  std::mt19937_64 rng(17);
  const Eigen::Vector4d eigs(0.3, 1.0, 1.0, -2.3);
  const CMat2 u0 = random_unitary(rng);
  const LocalDiagonalization ld = local_diagonalize(conjugated_diag(u0, eigs));
  CHECK(ld.residual <= 1e-9);
  CHECK((ld.eigs - eigs).norm() <= 1e-9);

  const LocalDiagonalization single = local_diagonalize(CMat4(tensor(X(), Id()) + tensor(Id(), X())));
  CHECK(single.residual <= 1e-12);
  CHECK(single.v.norm() == 0.0);
}

TEST_CASE("local_diagonalize on random commuting Hamiltonians") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 200; ++k) {
    const CMat2 u0 = oracle::random_unitary(rng);
    const CMat4 h = oracle::conjugated_diag(u0, oracle::random_eigs(rng));
    const LocalDiagonalization ld = local_diagonalize(h);
    CHECK(ld.residual <= 1e-8 * std::max(1.0, h.norm()));
    CHECK((ld.u.adjoint() * ld.u - CMat2::Identity()).norm() <= 1e-12);
    const LocalDiagonalization scaled = local_diagonalize(CMat4(3.5 * h));
    CHECK((scaled.u - ld.u).norm() <= 1e-9);
    CHECK((scaled.eigs - 3.5 * ld.eigs).norm() <= 1e-8);
  }
}

TEST_CASE("local_diagonalize rejects non-commuting input") {
  using namespace oracle;
  try {
    local_diagonalize(CMat4(tensor(X(), X()) + tensor(Y(), Y())));
    FAIL("expected NonCommuting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCommuting);
  }
}

TEST_CASE("canonicalize") {
  LocalDiagonalization ld;
  ld.eigs = Eigen::Vector4d(0.5, 1.0, 1.0, -2.5);
  CanonicalParams p = canonicalize(ld);
  CHECK(p.symmetric);
  CHECK(p.a_prime == doctest::Approx(0.5));
  CHECK(p.d_prime == doctest::Approx(-2.5));
  CHECK(std::abs(p.a_prime + p.d_prime + 2.0) <= 1e-10);

  ld.eigs = Eigen::Vector4d(2, 2, 2, 2);
  try {
    canonicalize(ld);
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Degenerate);
  }

  ld.eigs = Eigen::Vector4d(0.2, 0.9, 0.3, -1.4);
  p = canonicalize(ld);
  CHECK_FALSE(p.symmetric);
  CHECK(std::abs(p.a_prime + p.d_prime + 1.0) <= 1e-12);
  CHECK((p.b_raw + p.c_raw) / p.scale == doctest::Approx(1.0));

  ld.eigs = Eigen::Vector4d(0.5, 1.0, 1.0, -2.5);
  CanonicalizeOptions opts;
  opts.force_asymmetric = true;
  const CanonicalParams q = canonicalize(ld, opts);
  CHECK_FALSE(q.symmetric);
  CHECK(q.a_prime == doctest::Approx(0.25));

  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const LocalDiagonalization r =
        local_diagonalize(oracle::conjugated_diag(oracle::random_unitary(rng), oracle::random_eigs(rng)));
    const CanonicalParams c = canonicalize(r);
    CHECK(std::abs(std::norm(c.alpha) + std::norm(c.beta) - 1.0) <= 1e-12);
  }
}
