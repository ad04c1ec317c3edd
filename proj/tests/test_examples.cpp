#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("gadget examples") {
  using oracle::I;
  const CanonicalParams one = make_symmetric_params(1.0, oracle::hadamard());
  const CMat2 p = *p_matrix(oracle::pi / 4.0, one).normalized;
  CHECK(oracle::projective_gap(p, CMat2(Eigen::Vector2cd(I, -I).asDiagonal())) <= 1e-12);
  CHECK(oracle::projective_gap(*p_matrix(0.0, one).normalized, CMat2::Identity()) <= 1e-12);

  const GadgetMatrix n = n_matrix(oracle::pi / 4.0, one);
  CHECK(n.projective);
  CHECK(std::abs(n.raw(0, 0)) <= 1e-12);
  CHECK(std::abs(n.raw(1, 1)) > 0.1);

  const CanonicalParams zero = make_symmetric_params(0.0, oracle::hadamard());
  const cplx f = ratio_r(0.3, 0.0) * ratio_r(-0.3, 0.0);
  CHECK(std::abs(f.imag()) <= 1e-12);
  CHECK(f.real() > 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    double t = u(rng);
    if (std::abs(std::sin(2.0 * t)) < 1e-3) continue;
    CHECK(std::abs(l_matrix(t, zero).normalized->determinant() - 1.0) <= 1e-10);
  }

  const CanonicalParams asym = make_asymmetric_params(0.0, 0.8, oracle::hadamard());
  CHECK(std::abs(ratio_r2(0.4, -0.4, asym) - std::exp(I * 0.4)) <= 1e-12);
  for (int k = 0; k < 50; ++k) {
    const double t1 = u(rng), t2 = u(rng);
    if (std::abs(std::sin(t1 + t2)) < 1e-3) continue;
    CHECK(std::abs(l2_matrix(t1, t2, asym).normalized->determinant() - 1.0) <= 1e-10);
  }
}

TEST_CASE("case 1 inverse is the M gadget") {
  std::mt19937_64 rng(8);
  const CanonicalParams p = make_symmetric_params(-1.0, oracle::random_unitary(rng));
  const CMat2 l = *l_matrix(0.7, p).normalized, m = *m_matrix(0.7, p).normalized;
  CHECK(std::min((l * m - CMat2::Identity()).norm(), (l * m + CMat2::Identity()).norm()) <= 1e-12);
}

TEST_CASE("lie examples") {
  std::mt19937_64 rng(9);
  const CanonicalParams m1 = make_symmetric_params(-1.0, oracle::random_unitary(rng));
  const double v = 0.6;
  CMat2 want;
  want << 0, m1.alpha / m1.beta, m1.beta / m1.alpha, 0;
  want *= -1.0 / std::sin(2.0 * v);
  CHECK((tangent_g_sym(v, m1).m - want).norm() <= 1e-12);

  const CanonicalParams p1 = make_symmetric_params(1.0, oracle::random_unitary(rng));
  const CMat2 g = tangent_g_sym(v, p1).m;
  CHECK(std::abs(g(0, 1)) <= 1e-12);
  CHECK(std::abs(g(1, 0) / g(0, 0) - 2.0 * p1.beta / p1.alpha) <= 1e-12);
}

TEST_CASE("roots examples") {
  const std::vector<double> ts = solve_phase_sequence(oracle::pi, 0.0);
  cplx prod = 1.0;
  for (double t : ts) prod *= ratio_r(t, 0.0);
  CHECK(std::abs(std::remainder(std::arg(prod) - oracle::pi, 2.0 * oracle::pi)) <= 1e-10);
  CHECK(f_norm(1e-4, 0.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-3));
  RootLog log;
  const double s = solve_f(2.0, 0.0, &log);
  CHECK(std::abs(f_norm(s, 0.0) - 2.0) <= 1e-12);
  CHECK(log.bisection_steps > 0);
}
