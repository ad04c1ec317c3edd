#include "commham/serialize.hpp"

#include <fstream>
#include <sstream>

namespace commham {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

json vec4(const Eigen::Vector4d& v) { return json::array({v(0), v(1), v(2), v(3)}); }

Eigen::Vector4d vec4_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) parse_error(std::string(what) + " must have 4 entries");
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v(i) = number(j[static_cast<std::size_t>(i)], what);
  return v;
}

template <class M>
json matrix_json(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <class M>
M matrix_from(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    parse_error("matrix must have " + std::to_string(dim) + " rows");
  }
  M m;
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      parse_error("matrix row must have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::string bits_string(const std::vector<int>& bits) {
  std::string s;
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

json gadget_use(const GadgetUse& u) {
  json j = {{"gadget", u.name}, {"t1", u.t1}};
  if (u.name.size() == 2) j["t2"] = u.t2;
  return j;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }
json to_json(const CMat2& m) { return matrix_json(m); }
json to_json(const CMat4& m) { return matrix_json(m); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_error("complex entries are [re, im] pairs");
  return {number(j[0], "re"), number(j[1], "im")};
}

CMat2 cmat2_from_json(const json& j) { return matrix_from<CMat2>(j, 2); }
CMat4 cmat4_from_json(const json& j) { return matrix_from<CMat4>(j, 4); }

json hamiltonian_to_json(const CMat4& h, const std::string& label) {
  json j = {{"schema", kSchemaVersion}};
  if (!label.empty()) j["label"] = label;
  j["matrix"] = to_json(h);
  return j;
}

CMat4 hamiltonian_from_json(const json& j) {
  if (!j.is_object()) parse_error("Hamiltonian file must be a JSON object");
  if (j.contains("schema") && integer(j["schema"], "schema") != kSchemaVersion) {
    parse_error("unsupported schema version");
  }
  if (!j.contains("matrix")) parse_error("missing \"matrix\"");
  return cmat4_from_json(j["matrix"]);
}

json circuit_to_json(const CircuitSpec& spec, const GateModel& model) {
  json j = {{"schema", kSchemaVersion}, {"n", spec.n}, {"initial", bits_string(spec.initial)},
            {"framed", spec.framed}};
  if (spec.output_qubit) j["output_qubit"] = *spec.output_qubit;
  json params = {{"u", to_json(model.u)}, {"d", vec4(model.d)}};
  if (model.h1 && model.h2) params["d2"] = {{"h1", vec4(*model.h1)}, {"h2", vec4(*model.h2)}};
  j["params"] = params;
  json ops = json::array();
  for (const Op& op : spec.ops) {
    json o = {{"op", std::string(to_string(op.kind))}};
    switch (op.kind) {
      case OpKind::ApplyD:
        o["pair"] = {op.q0, op.q1};
        o["t"] = op.t1;
        break;
      case OpKind::ApplyD2:
        o["pair"] = {op.q0, op.q1};
        o["t1"] = op.t1;
        o["t2"] = op.t2;
        break;
      case OpKind::Postselect:
      case OpKind::Reset:
        o["q"] = op.q0;
        o["bit"] = op.bit;
        break;
      default:
        o["q"] = op.q0;
        break;
    }
    ops.push_back(o);
  }
  j["ops"] = ops;
  return j;
}

CircuitFile circuit_from_json(const json& j) {
  if (!j.is_object()) parse_error("circuit file must be a JSON object");
  if (j.contains("schema") && integer(j["schema"], "schema") != kSchemaVersion) {
    parse_error("unsupported schema version");
  }
  CircuitFile cf;
  if (!j.contains("n")) parse_error("missing \"n\"");
  cf.spec.n = integer(j["n"], "n");
  if (cf.spec.n < 1 || cf.spec.n > kMaxQubits) throw Error(ErrorCode::TooLarge, "qubit count out of range");
  if (j.contains("initial")) {
    if (!j["initial"].is_string()) parse_error("\"initial\" must be a bitstring");
    for (char ch : j["initial"].get<std::string>()) {
      if (ch != '0' && ch != '1') parse_error("\"initial\" must contain only 0 and 1");
      cf.spec.initial.push_back(ch - '0');
    }
  } else {
    cf.spec.initial.assign(static_cast<std::size_t>(cf.spec.n), 0);
  }
  if (j.contains("framed")) {
    if (!j["framed"].is_boolean()) parse_error("\"framed\" must be boolean");
    cf.spec.framed = j["framed"].get<bool>();
  }
  if (j.contains("output_qubit")) cf.spec.output_qubit = integer(j["output_qubit"], "output_qubit");

  if (!j.contains("params") || !j["params"].is_object()) parse_error("missing \"params\"");
  const json& params = j["params"];
  if (!params.contains("u") || !params.contains("d")) parse_error("params need \"u\" and \"d\"");
  cf.model.u = cmat2_from_json(params["u"]);
  cf.model.d = vec4_from(params["d"], "d");
  if (params.contains("d2")) {
    const json& d2 = params["d2"];
    if (!d2.is_object() || !d2.contains("h1") || !d2.contains("h2")) parse_error("d2 needs h1 and h2");
    cf.model.h1 = vec4_from(d2["h1"], "h1");
    cf.model.h2 = vec4_from(d2["h2"], "h2");
  }
  if ((cf.model.u.adjoint() * cf.model.u - CMat2::Identity()).norm() > 1e-8) {
    throw Error(ErrorCode::InvalidCircuit, "params.u is not unitary");
  }

  if (!j.contains("ops") || !j["ops"].is_array()) parse_error("missing \"ops\" array");
  for (const json& o : j["ops"]) {
    if (!o.is_object() || !o.contains("op") || !o["op"].is_string()) parse_error("op needs a name");
    const std::string name = o["op"].get<std::string>();
    auto q = [&]() {
      if (!o.contains("q")) parse_error(name + " needs \"q\"");
      return integer(o["q"], "q");
    };
    auto bit = [&]() {
      if (!o.contains("bit")) parse_error(name + " needs \"bit\"");
      return integer(o["bit"], "bit");
    };
    auto pair = [&]() {
      if (!o.contains("pair") || !o["pair"].is_array() || o["pair"].size() != 2) {
        parse_error(name + " needs a two-element \"pair\"");
      }
      return std::pair<int, int>(integer(o["pair"][0], "pair"), integer(o["pair"][1], "pair"));
    };
    auto num = [&](const char* key) {
      if (!o.contains(key)) parse_error(name + " needs \"" + key + "\"");
      return number(o[key], key);
    };
    if (name == "u") {
      cf.spec.ops.push_back(Op::u(q()));
    } else if (name == "udag") {
      cf.spec.ops.push_back(Op::udag(q()));
    } else if (name == "d") {
      const auto [a, b] = pair();
      cf.spec.ops.push_back(Op::d(a, b, num("t")));
    } else if (name == "d2") {
      const auto [a, b] = pair();
      cf.spec.ops.push_back(Op::d2(a, b, num("t1"), num("t2")));
    } else if (name == "postselect") {
      cf.spec.ops.push_back(Op::postselect(q(), bit()));
    } else if (name == "measure") {
      cf.spec.ops.push_back(Op::measure(q()));
    } else if (name == "reset") {
      cf.spec.ops.push_back(Op::reset(q(), bit()));
    } else {
      parse_error("unknown op \"" + name + "\"");
    }
  }
  validate(cf.spec);
  return cf;
}

json to_json(const LocalDiagonalization& ld) {
  return {{"u", to_json(ld.u)},
          {"eigs", vec4(ld.eigs)},
          {"v", json::array({ld.v(0), ld.v(1), ld.v(2)})},
          {"m_sign", ld.sign},
          {"a_coef", ld.a_coef},
          {"b_coef", ld.b_coef},
          {"residual", ld.residual}};
}

json to_json(const CanonicalParams& p) {
  return {{"symmetric", p.symmetric}, {"a_prime", p.a_prime}, {"d_prime", p.d_prime},
          {"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}, {"b_raw", p.b_raw},
          {"c_raw", p.c_raw},          {"scale", p.scale}};
}

json to_json(const Margins& m) {
  return {{"abs_alpha", m.abs_alpha},       {"abs_beta", m.abs_beta},
          {"b_plus_c", m.b_plus_c},         {"b_minus_c", m.b_minus_c},
          {"a_plus_one", m.a_plus_one},     {"a_minus_one", m.a_minus_one},
          {"a_plus_three", m.a_plus_three}, {"alpha_beta_gap", m.alpha_beta_gap}};
}

json to_json(const HamClass& c) {
  json j = {{"kind", std::string(to_string(c.kind))}};
  if (c.kind == HamKind::Exceptional) j["theta"] = c.theta;
  if (c.kind == HamKind::HardSymmetric) j["subcase"] = std::string(to_string(c.subcase));
  if (c.params) j["params"] = to_json(*c.params);
  if (c.diag) j["diagonalization"] = to_json(*c.diag);
  j["margins"] = to_json(c.margins);
  return j;
}

json to_json(const GadgetMatrix& g) {
  json j = {{"raw", to_json(g.raw)}, {"projective", g.projective}};
  if (g.normalized) j["normalized"] = to_json(*g.normalized);
  if (!g.domain_note.empty()) j["domain"] = g.domain_note;
  return j;
}

json to_json(const InversionPlan& plan) {
  json uses = json::array();
  for (const auto& u : plan.circuit.uses) uses.push_back(gadget_use(u));
  return {{"case", std::string(to_string(plan.case_tag))},
          {"phase_times", plan.phase_times},
          {"norm_times", plan.norm_times},
          {"gadgets", uses},
          {"gadget_count", plan.gadget_count()},
          {"residual", plan.residual},
          {"inverse", to_json(plan.circuit.claimed)}};
}

json to_json(const LieSpanReport& r) {
  json basis = json::array();
  for (const auto& t : r.basis) {
    basis.push_back({{"provenance", std::string(to_string(t.provenance))}, {"matrix", to_json(t.m)}});
  }
  json ops = json::array();
  if (r.used_span) ops.push_back("span");
  if (r.used_commutator) ops.push_back("commutator");
  if (r.used_conjugation) ops.push_back("conjugation");
  return {{"dimension", r.dimension}, {"iterations", r.iterations}, {"closure_ops_used", ops},
          {"dimension_trace", r.dimension_trace}, {"basis", basis}};
}

json to_json(const SynthesisResult& r) {
  json seq = json::array();
  for (const auto& s : r.sequence) {
    json e = {{"gadget", std::string(to_string(s.kind))}, {"t", s.t1}};
    if (s.kind == SynthKind::L2) e["t2"] = s.t2;
    e["exponent"] = s.exponent;
    seq.push_back(e);
  }
  return {{"success", r.success}, {"achieved_error", r.achieved_error},
          {"evaluations", r.evaluations}, {"seed", r.seed}, {"sequence", seq}};
}

json to_json(const CoverageReport& r) {
  return {{"sequence_length", r.sequence_length}, {"samples", r.samples},
          {"products", r.products},               {"max_distance", r.max_distance},
          {"mean_distance", r.mean_distance},     {"bin_edges", r.bin_edges},
          {"histogram", r.histogram}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace commham
