#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("identity target needs no factors") {
  const CanonicalParams p = make_symmetric_params(0.0, oracle::hadamard());
  const SynthesisResult r = synthesize(CMat2::Identity(), p, 1e-2, 1000, 1);
  CHECK(r.success);
  CHECK(r.sequence.empty());
  CHECK(r.achieved_error <= 1e-12);
}

TEST_CASE("phase targets use the phase gadget when available") {
  std::mt19937_64 rng(3);
  const CanonicalParams p = make_symmetric_params(1.0, oracle::random_unitary(rng));
  for (double phi : {0.4, -1.1, 2.9}) {
    CMat2 target = CMat2::Zero();
    target(0, 0) = std::exp(oracle::I * (phi / 2.0));
    target(1, 1) = std::exp(oracle::I * (-phi / 2.0));
    const SynthesisResult r = synthesize(target, p, 1e-4, 1000, 2);
    CHECK(r.success);
    CHECK(r.achieved_error <= 1e-12);
    REQUIRE(r.sequence.size() == 1);
    CHECK(r.sequence[0].kind == SynthKind::P);
  }
}

TEST_CASE("random targets, replay and determinism") {
  std::mt19937_64 rng(10);
  const CanonicalParams p = make_symmetric_params(0.0, oracle::random_unitary(rng));
  int ok = 0;
  for (int k = 0; k < 4; ++k) {
    CMat2 target = oracle::random_unitary(rng);
    target /= std::sqrt(target.determinant());
    const SynthesisResult r = synthesize(target, p, 1e-2, 100000, 100 + static_cast<std::uint64_t>(k));
    if (r.success) ++ok;
    CHECK(r.evaluations <= 100000);
    CHECK(projective_distance(evaluate_sequence(r.sequence, p), target) == doctest::Approx(r.achieved_error).epsilon(1e-12));
    if (k == 0) {
      const SynthesisResult again = synthesize(target, p, 1e-2, 100000, 100);
      CHECK(again.achieved_error == r.achieved_error);
      CHECK(again.sequence.size() == r.sequence.size());
    }
  }
  CHECK(ok >= 3);
}

TEST_CASE("asymmetric synthesis") {
  std::mt19937_64 rng(12);
  const CanonicalParams p = make_asymmetric_params(0.3, 0.8, oracle::random_unitary(rng));
  CMat2 target = oracle::random_unitary(rng);
  const SynthesisResult r = synthesize(target, p, 1e-2, 100000, 5);
  CHECK(r.success);
  for (const SynthStep& s : r.sequence) CHECK(s.kind == SynthKind::L2);
}

TEST_CASE("synthesis preconditions") {
  const CanonicalParams ex = make_symmetric_params(-1.0, oracle::hadamard());
  try {
    synthesize(CMat2::Identity(), ex, 1e-2, 100, 1);
    FAIL("expected ExceptionalCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExceptionalCase);
  }
  const CanonicalParams p = make_symmetric_params(0.0, oracle::hadamard());
  CHECK_THROWS_AS(synthesize(CMat2::Identity(), p, 1e-6, 100, 1), Error);
  CHECK_THROWS_AS(net_coverage(ex, 2, 10, 1), Error);
}

TEST_CASE("coverage is non-increasing in length") {
  const CanonicalParams p = make_symmetric_params(0.0, oracle::hadamard());
  double prev = 1e9;
  for (int len : {0, 2, 4, 6}) {
    const CoverageReport r = net_coverage(p, len, 50, 9, 300);
    CHECK(r.max_distance <= prev + 1e-15);
    int total = 0;
    for (int h : r.histogram) total += h;
    CHECK(total == 50);
    prev = r.max_distance;
  }
}

TEST_CASE("time grid avoids singular points") {
  for (double t : time_grid(64)) CHECK(std::abs(std::sin(2.0 * t)) > 0.02);
}
