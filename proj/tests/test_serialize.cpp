#include "doctest.h"
#include "support.hpp"

using namespace commham;

TEST_CASE("complex and matrix encoding") {
  CHECK(to_json(cplx(1.5, -2.0)).dump() == "[1.5,-2.0]");
  const CMat2 h = oracle::hadamard();
  CHECK((cmat2_from_json(to_json(h)) - h).norm() == 0.0);
  CHECK_THROWS_AS(cmat2_from_json(json::parse("[[1,2],[3]]")), Error);
  CHECK_THROWS_AS(complex_from_json(json::parse("[1]")), Error);
}

TEST_CASE("Hamiltonian files") {
  std::mt19937_64 rng(1);
  const CMat4 h = oracle::random_hermitian(rng);
  const json j = hamiltonian_to_json(h, "rand");
  CHECK(j["schema"] == 1);
  CHECK((hamiltonian_from_json(j) - h).norm() == 0.0);
  CHECK((hamiltonian_from_json(json::parse(j.dump())) - h).norm() == 0.0);
  try {
    hamiltonian_from_json(json::parse(R"({"schema": 2, "matrix": []})"));
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
  CHECK_THROWS_AS(hamiltonian_from_json(json::parse(R"({"label": "x"})")), Error);
}

TEST_CASE("circuit round trip re-simulates identically") {
  std::mt19937_64 rng(2);
  const CanonicalParams p = make_symmetric_params(0.37, oracle::random_unitary(rng));
  const GateModel m = GateModel::from_params(p);
  const InversionPlan plan = invert_l(0.5, p);
  const LoweredCircuit lc = lower(plan.circuit, true, true);
  const json j = circuit_to_json(lc.spec, m);
  const CircuitFile back = circuit_from_json(json::parse(j.dump()));
  CHECK(circuit_to_json(back.spec, back.model).dump() == j.dump());
  const RunResult a = run_circuit(lc.spec, m), b = run_circuit(back.spec, back.model);
  CHECK(a.state.amplitudes() == b.state.amplitudes());
  CHECK(a.survivals == b.survivals);
}

TEST_CASE("circuit parse errors") {
  const std::string base =
      R"({"schema":1,"n":1,"params":{"u":[[[1,0],[0,0]],[[0,0],[1,0]]],"d":[0,1,1,-2]},"ops":OPS})";
  auto with = [&](const std::string& ops) {
    std::string s = base;
    s.replace(s.find("OPS"), 3, ops);
    return json::parse(s);
  };
  CHECK_NOTHROW(circuit_from_json(with(R"([{"op":"u","q":0}])")));
  try {
    circuit_from_json(with(R"([{"op":"teleport","q":0}])"));
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
  try {
    circuit_from_json(with(R"([{"op":"u","q":3}])"));
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
  CHECK_THROWS_AS(circuit_from_json(with(R"([{"op":"d","pair":[0],"t":1}])")), Error);
}

TEST_CASE("report payloads carry stable fields") {
  const HamClass c = classify(oracle::symmetric_h(0.37, oracle::hadamard()));
  const json j = to_json(c);
  CHECK(j["kind"] == "HardSymmetric");
  CHECK(j.contains("params"));
  CHECK(j.contains("margins"));
  const json plan = to_json(invert_l(0.5, *c.params));
  CHECK(plan["case"] == "Case3_Sequences");
  CHECK(plan.contains("residual"));
}
