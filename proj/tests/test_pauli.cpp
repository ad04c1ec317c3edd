#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("pauli_expand picks single coefficients") {
  const PauliCoeffs zz = pauli_expand(oracle::tensor(oracle::Z(), oracle::Z()));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(zz.alpha[a][b] == doctest::Approx(a == 3 && b == 3 ? 1.0 : 0.0));

  const PauliCoeffs ii = pauli_expand(CMat4::Identity());
  CHECK(ii(Pauli::I, Pauli::I) == doctest::Approx(1.0));
  CHECK(ii(Pauli::X, Pauli::X) == doctest::Approx(0.0));
}

TEST_CASE("pauli round trip on random Hermitians") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const CMat4 h = oracle::random_hermitian(rng);
    const CMat4 back = pauli_reconstruct(pauli_expand(h));
    CHECK((back - h).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("pauli_reconstruct basics") {
  PauliCoeffs c;
  CHECK(pauli_reconstruct(c).norm() == 0.0);
  c(Pauli::X, Pauli::X) = 1.0;
  CHECK((pauli_reconstruct(c) - oracle::tensor(oracle::X(), oracle::X())).norm() <= 1e-15);
  PauliCoeffs z;
  z(Pauli::Z, Pauli::Z) = 1.0;
  const CMat4 d = pauli_reconstruct(z);
  CHECK(d(0, 0).real() == 1.0);
  CHECK(d(1, 1).real() == -1.0);
  CHECK(d(2, 2).real() == -1.0);
  CHECK(d(3, 3).real() == 1.0);
}

TEST_CASE("pauli_expand rejects non-Hermitian input") {
  CMat4 a = CMat4::Zero();
  a(0, 1) = 1.0;
  try {
    pauli_expand(a);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
}

TEST_CASE("commuting check") {
  using namespace oracle;
  CHECK(is_commuting(tensor(Z(), Z())));
  const CMat4 xy = tensor(X(), X()) + tensor(Y(), Y());
  CHECK_FALSE(is_commuting(xy));
  const CommutatorNorms n = commutator_norms(xy);
  CHECK(std::max({n.self_overlap, n.swapped_overlap, n.swap_pair}) > 1.0);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const CMat4 h = conjugated_diag(random_unitary(rng), random_eigs(rng));
    CHECK(is_commuting(h));
    CHECK(is_commuting(CMat4(h + 3.7 * CMat4::Identity())));
    CHECK(is_commuting(CMat4(-0.01 * h)));
    CHECK(is_commuting(CMat4(250.0 * h)));
  }
  for (int k = 0; k < 20; ++k) {
    const CMat4 h = random_hermitian(rng);
    CHECK(is_commuting(h) == is_commuting(CMat4(h + 5.0 * CMat4::Identity())));
    CHECK(is_commuting(h) == is_commuting(CMat4(7.0 * h)));
  }
}

TEST_CASE("commutator norms match a direct 8x8 computation") {
  std::mt19937_64 rng(8);
  const CMat4 h = oracle::random_hermitian(rng);
  const CMat4 h0 = h - (h.trace() / 4.0) * CMat4::Identity();
  using M8 = Eigen::Matrix<cplx, 8, 8>;
  const M8 left = Eigen::kroneckerProduct(h0, oracle::Id()).eval();
  const M8 right = Eigen::kroneckerProduct(oracle::Id(), h0).eval();
  const CommutatorNorms n = commutator_norms(h);
  CHECK(n.self_overlap == doctest::Approx((left * right - right * left).norm()).epsilon(1e-12));
}

TEST_CASE("expm_hermitian") {
  using namespace oracle;
  const CMat4 e = expm_hermitian(tensor(Z(), Z()), pi);
  CHECK((e + CMat4::Identity()).norm() <= 1e-12);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const CMat4 h = conjugated_diag(random_unitary(rng), random_eigs(rng));
    CHECK((expm_hermitian(h, 0.0) - CMat4::Identity()).norm() <= 1e-12);
    const double s = 0.37 * k, t = -1.1 + 0.2 * k;
    const CMat4 a = expm_hermitian(h, t);
    CHECK((a * expm_hermitian(h, -t) - CMat4::Identity()).norm() <= 1e-12);
    CHECK((a.adjoint() * a - CMat4::Identity()).norm() <= 1e-10);
    CHECK((expm_hermitian(h, s) * a - expm_hermitian(h, s + t)).norm() <= 1e-10);
  }
}

TEST_CASE("operator norm closed form matches SVD") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    CMat2 m;
    m << cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
    CHECK(operator_norm(m) == doctest::Approx(oracle::opnorm(m)).epsilon(1e-12));
  }
}
