#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("hand-built classes") {
  using namespace oracle;
  CHECK(classify(tensor(Z(), Z())).kind == HamKind::Diagonal);
  const HamClass xx = classify(tensor(X(), X()));
  CHECK(xx.kind == HamKind::Exceptional);
  CHECK(std::abs(xx.theta) <= 1e-10);
  CHECK(classify(CMat4(tensor(X(), X()) + tensor(Y(), Y()))).kind == HamKind::NonCommuting);
  CHECK(classify(CMat4(tensor(X(), Id()) + tensor(Id(), X()))).kind == HamKind::NonEntangling);
  // Local Z fields are already diagonal, so the Diagonal test fires first.
  CHECK(classify(CMat4(tensor(Z(), Id()) + tensor(Id(), Z()))).kind == HamKind::Diagonal);

  const HamClass hard = classify(symmetric_h(0.0, hadamard()));
  CHECK(hard.kind == HamKind::HardSymmetric);
  REQUIRE(hard.params.has_value());
  CHECK(hard.params->a_prime == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(hard.subcase == Subcase::Generic);
}

TEST_CASE("subcases") {
  using namespace oracle;
  CHECK(classify(symmetric_h(1.0, hadamard())).subcase == Subcase::APlusOne);
  CHECK(classify(symmetric_h(-3.0, hadamard())).subcase == Subcase::AMinusThree);
  std::mt19937_64 rng(1);
  const HamClass m1 = classify(symmetric_h(-1.0, random_unitary(rng)));
  CHECK(m1.kind == HamKind::HardSymmetric);
  CHECK(m1.subcase == Subcase::AMinusOne);
  CHECK(subcase_for(0.4) == Subcase::Generic);
}

TEST_CASE("exceptional angle") {
  using namespace oracle;
  for (double th : {0.5, -1.2, 2.8}) {
    CMat2 xt;
    xt << 0, std::exp(I * (th / 2.0)), std::exp(I * (-th / 2.0)), 0;
    const HamClass c = classify(tensor(xt, xt));
    REQUIRE(c.kind == HamKind::Exceptional);
    REQUIRE(c.params.has_value());
    CHECK(std::abs(std::arg(c.params->alpha / c.params->beta) - c.theta) <= 1e-10);
  }
}

TEST_CASE("asymmetric class") {
  std::mt19937_64 rng(4);
  const HamClass c = classify(oracle::conjugated_diag(oracle::random_unitary(rng), Eigen::Vector4d(0.2, 0.9, 0.3, -1.4)));
  CHECK(c.kind == HamKind::HardAsymmetric);
  CHECK(c.margins.b_minus_c > 0.1);
}

TEST_CASE("classification agrees with a brute-force entanglement oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, 5);
  int disagreements = 0;
  for (int k = 0; k < 200; ++k) {
    const CMat2 u = pick(rng) == 0 ? CMat2::Identity() : oracle::random_unitary(rng);
    Eigen::Vector4d e = oracle::random_eigs(rng);
    switch (pick(rng)) {
      case 0: e(2) = e(1); break;
      case 1: e = Eigen::Vector4d(2.0, 0.0, 0.0, -2.0) * e(0) + Eigen::Vector4d::Constant(e(3)); break;
      case 2: e = Eigen::Vector4d(-1.0, 1.0, 1.0, -1.0) * e(0); break;
      default: break;
    }
    const CMat4 h = oracle::conjugated_diag(u, e);
    const HamClass c = classify(h);
    const bool easy = c.kind == HamKind::Diagonal || c.kind == HamKind::NonEntangling;
    if (easy == oracle::entangles(h, 64, 7 + static_cast<std::uint64_t>(k))) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("library oracle matches the test oracle") {
  using namespace oracle;
  CHECK_FALSE(is_entangling_bruteforce(tensor(Z(), Z()), 64, 1));
  CHECK(is_entangling_bruteforce(tensor(X(), X()), 64, 1));
  CHECK_FALSE(is_entangling_bruteforce(CMat4(tensor(Z(), Id()) + tensor(Id(), Z())), 64, 1));
  CVec4 bell(1, 0, 0, 1);
  CHECK(second_schmidt(bell / std::sqrt(2.0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("scale invariance and determinism") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 30; ++k) {
    const CMat4 h = oracle::conjugated_diag(oracle::random_unitary(rng), oracle::random_eigs(rng));
    const HamClass a = classify(h), b = classify(CMat4(3.3 * h)), c = classify(h);
    CHECK(a.kind == b.kind);
    CHECK(a.subcase == b.subcase);
    CHECK(a.kind == c.kind);
    if (a.params && c.params) CHECK(a.params->a_prime == c.params->a_prime);
  }
}
