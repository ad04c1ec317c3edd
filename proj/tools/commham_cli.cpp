// commham: command-line front end for classification, inversion, simulation,
// synthesis and verification of two-qubit commuting Hamiltonians.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "commham/commham.hpp"

using namespace commham;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kStructure = 3, kDomain = 4, kResource = 5 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return kParse;
    case ErrorCode::NonHermitian:
    case ErrorCode::InvalidCircuit:
    case ErrorCode::IndexOutOfRange: return kStructure;
    case ErrorCode::TooLarge:
    case ErrorCode::BudgetExhausted: return kResource;
    default: return kDomain;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

struct Common {
  std::string input;
  std::string out;
  bool timing = false;
  std::uint64_t seed = 0;
};

struct Report {
  json result = json::object();
  json margins = json::object();
  json residuals = json::object();
  json parameters = json::object();
  int exit = kOk;
};

GateModel model_for(const HamClass& c) { return GateModel::from_params(*c.params); }

const HamClass& require_hard(const HamClass& c) {
  if (c.kind == HamKind::Exceptional) throw Error(ErrorCode::ExceptionalCase, "no inverse gadget for this class");
  if (c.kind != HamKind::HardSymmetric && c.kind != HamKind::HardAsymmetric) {
    throw Error(ErrorCode::WrongKind, std::string("needs a hard class, got ") + std::string(to_string(c.kind)));
  }
  return c;
}

/// Worst state gap between a lowered circuit run on |0⟩, |1⟩ and the columns of want.
double lowered_gap(const LoweredCircuit& lc, const GateModel& m, const CMat2& want) {
  double worst = 0.0;
  for (int in = 0; in < 2; ++in) {
    CircuitSpec spec = lc.spec;
    spec.initial[static_cast<std::size_t>(lc.input_qubit)] = in;
    const RunResult r = run_circuit(spec, m);
    const CVec2 got = extract_qubit(r.state, lc.output_qubit);
    worst = std::max(worst, projective_distance(got, CVec2(want.col(in))));
  }
  return worst;
}

CMat4 load_hamiltonian(const std::string& text, const std::string& path) {
  return hamiltonian_from_json(parse_text(text, path));
}

Report cmd_classify(const std::string& text, const Common& co, double tol) {
  Report r;
  const HamClass c = classify(load_hamiltonian(text, co.input), tol);
  r.parameters = {{"tol", tol}};
  r.result = to_json(c);
  r.result.erase("margins");
  r.margins = to_json(c.margins);
  if (c.diag) r.residuals["diagonalization"] = c.diag->residual;
  return r;
}

Report cmd_diagonalize(const std::string& text, const Common& co) {
  Report r;
  const CMat4 h = load_hamiltonian(text, co.input);
  const LocalDiagonalization ld = local_diagonalize(h);
  r.result["diagonalization"] = to_json(ld);
  try {
    r.result["params"] = to_json(canonicalize(ld));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Degenerate) throw;
    r.result["params"] = nullptr;
  }
  r.residuals["reconstruction"] = frobenius(CMat4(assemble(ld.u, ld.eigs) - h));
  return r;
}

Report cmd_invert(const std::string& text, const Common& co, double t, std::optional<double> t2,
                  bool reuse, const std::string& circuit_out) {
  Report r;
  const HamClass c = require_hard(classify(load_hamiltonian(text, co.input)));
  const CanonicalParams& p = *c.params;
  r.parameters = {{"t", t}};
  InversionPlan plan;
  CMat2 l;
  if (p.symmetric) {
    plan = invert_l(t, p);
    l = l_matrix(t, p).raw;
  } else {
    if (!t2) throw Error(ErrorCode::InvalidArgument, "asymmetric class needs --t2");
    r.parameters["t2"] = *t2;
    plan = invert_l2(t, *t2, p);
    l = l2_matrix(t, *t2, p).raw;
  }
  r.parameters["reuse_qubits"] = reuse;
  const GateModel m = model_for(c);
  const LoweredCircuit lc = lower(plan.circuit, reuse, true);
  r.result["kind"] = std::string(to_string(c.kind));
  r.result["params"] = to_json(p);
  r.result["plan"] = to_json(plan);
  r.result["forward"] = to_json(l);
  r.result["circuit"] = circuit_to_json(lc.spec, m);
  r.result["input_qubit"] = lc.input_qubit;
  r.result["output_qubit"] = lc.output_qubit;
  r.residuals["inverse"] = plan.residual;
  r.residuals["simulated"] = lowered_gap(lc, m, CMat2(p.u.adjoint() * plan.circuit.claimed.raw * p.u));
  r.margins = to_json(c.margins);
  if (!circuit_out.empty()) {
    std::ofstream os(circuit_out);
    if (!os) throw Error(ErrorCode::Parse, "cannot write " + circuit_out);
    os << r.result["circuit"].dump(2) << "\n";
  }
  return r;
}

Report cmd_simulate(const std::string& text, const Common& co, int shots, bool exact) {
  Report r;
  const CircuitFile cf = circuit_from_json(parse_text(text, co.input));
  r.parameters = {{"shots", shots}, {"exact", exact}, {"seed", co.seed}};
  const RunResult run = run_circuit(cf.spec, cf.model);
  r.result["n"] = cf.spec.n;
  r.result["survivals"] = run.survivals;
  r.result["norm_tracked"] = run.norm_tracked;
  if (cf.spec.output_qubit) {
    double res = 0.0;
    const CVec2 out = extract_qubit(run.state, *cf.spec.output_qubit, &res);
    r.result["output_state"] = json::array({to_json(out(0)), to_json(out(1))});
    r.residuals["output_product"] = res;
  }
  if (exact) {
    const Eigen::VectorXd dist = output_distribution(cf.spec, cf.model);
    json d = json::object();
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
      if (dist(i) > 1e-15) d[bitstring(static_cast<std::uint64_t>(i), cf.spec.n)] = dist(i);
    }
    r.result["distribution"] = d;
    r.residuals["distribution_sum"] = std::abs(dist.sum() - 1.0);
  }
  if (shots > 0) {
    std::map<std::string, int> counts;
    for (const auto& s : sample(cf.spec, cf.model, shots, co.seed)) ++counts[s];
    json cj = json::object();
    for (const auto& [k, v] : counts) cj[k] = v;
    r.result["counts"] = cj;
  }
  return r;
}

CMat2 random_su2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMat2 u = random_unitary2(rng);
  return u / std::sqrt(u.determinant());
}

Report cmd_synthesize(const std::string& text, const Common& co, const std::string& target_path,
                      double eps, long budget) {
  Report r;
  const HamClass c = classify(load_hamiltonian(text, co.input));
  if (c.kind == HamKind::Exceptional) throw Error(ErrorCode::ExceptionalCase, "gadget products are not dense here");
  require_hard(c);
  CMat2 target;
  if (target_path.empty()) {
    target = random_su2(co.seed);
    r.parameters["target"] = "haar";
  } else {
    const json tj = parse_text(slurp(target_path), target_path);
    if (!tj.is_object() || !tj.contains("matrix")) throw Error(ErrorCode::Parse, "target needs \"matrix\"");
    target = cmat2_from_json(tj["matrix"]);
    r.parameters["target"] = target_path;
  }
  r.parameters["epsilon"] = eps;
  r.parameters["budget"] = budget;
  r.parameters["seed"] = co.seed;
  const SynthesisResult s = synthesize(target, *c.params, eps, budget, co.seed);
  r.result = to_json(s);
  r.result["target"] = to_json(target);
  r.residuals["replay"] = std::abs(projective_distance(evaluate_sequence(s.sequence, *c.params), target) -
                                   s.achieved_error);
  if (!s.success) r.exit = kResource;
  return r;
}

struct Check {
  std::string name;
  double value;
  double threshold;
  bool upper;  ///< pass when value ≤ threshold (else value ≥ threshold)
  bool pass() const { return upper ? value <= threshold : value >= threshold; }
};

CMat2 sl(const CMat2& m) { return m / std::sqrt(m.determinant()); }

CMat2 fd(const std::function<CMat2(double)>& f, double v) {
  const double h = 1e-6;
  return (f(v + h) - f(v - h)) / (2.0 * h) * f(v).inverse();
}

void lie_checks(const HamClass& c, std::uint64_t seed, std::vector<Check>& out, json& result) {
  const LieSpanReport rep = verify_density(c, seed);
  result["lie"] = to_json(rep);
  const CanonicalParams& p = *c.params;
  if (c.kind == HamKind::Exceptional) {
    out.push_back({"lie.dimension_below_full", static_cast<double>(rep.dimension), 5.0, true});
    CMat2 k = CMat2::Zero();
    k(0, 1) = p.alpha / p.beta;
    k(1, 0) = p.beta / p.alpha;
    double worst = 0.0;
    for (const auto& b : rep.basis) worst = std::max(worst, span_residual(b.m, {k, CMat2(kI * k)}));
    out.push_back({"lie.basis_offdiagonal_form", worst, 1e-9, true});
  } else {
    out.push_back({"lie.dimension", static_cast<double>(rep.dimension), 6.0, false});
  }
  double worst = 0.0;
  for (double v : {0.3, 0.7, 1.1, 2.0}) {
    if (p.symmetric) {
      const CMat2 g = tangent_g_sym(v, p).m;
      worst = std::max(worst, frobenius(CMat2(fd([&](double x) { return sl(l_matrix(x, p).raw); }, v) - g)));
    } else {
      const double v2 = 1.57 - 0.5 * v;
      const auto [g, h] = tangent_gh_asym(v, v2, p);
      worst = std::max(worst, frobenius(CMat2(fd([&](double x) { return sl(l2_matrix(x, v2, p).raw); }, v) - g.m)));
      worst = std::max(worst, frobenius(CMat2(fd([&](double x) { return sl(l2_matrix(v, x, p).raw); }, v2) - h.m)));
    }
  }
  out.push_back({"lie.tangent_finite_difference", worst, 1e-5, true});
}

void gadget_checks(const HamClass& c, std::vector<Check>& out, json& result) {
  const CanonicalParams& p = *c.params;
  const GateModel m = model_for(c);
  const std::vector<CVec2> inputs = {CVec2(1, 0), CVec2(0, 1), CVec2(1, 1) / std::sqrt(2.0),
                                     CVec2(1, kI) / std::sqrt(2.0)};
  double sim = 0.0, inv = 0.0;
  std::vector<GadgetCircuit> circuits;
  const double times[] = {0.3, 0.9, 1.4};
  for (double t : times) {
    if (p.symmetric) {
      circuits.push_back(l_gadget(t, p));
      circuits.push_back(m_gadget(t, p));
      circuits.push_back(n_gadget(t, p));
      if (c.subcase == Subcase::APlusOne || c.subcase == Subcase::AMinusThree) circuits.push_back(p_gadget(t, p));
    } else {
      circuits.push_back(l2_gadget(t, 0.5 * t + 0.2, p));
      circuits.push_back(m2_gadget(t, 0.5 * t + 0.2, p));
      circuits.push_back(n2_gadget(t, 0.5 * t + 0.2, p));
    }
    if (c.kind != HamKind::Exceptional) {
      const InversionPlan plan = p.symmetric ? invert_l(t, p) : invert_l2(t, 0.5 * t + 0.2, p);
      inv = std::max(inv, plan.residual);
      circuits.push_back(plan.circuit);
    }
  }
  for (const GadgetCircuit& g : circuits) {
    for (const CVec2& psi : inputs) {
      const CVec2 want = g.claimed.raw * psi;
      if (want.norm() < 1e-9) continue;
      const GadgetRun run = simulate_gadget(g, m, psi, true);
      sim = std::max(sim, projective_distance(run.output, want));
    }
  }
  result["gadgets"] = {{"circuits_checked", circuits.size()}};
  out.push_back({"gadgets.simulated_action", sim, 1e-8, true});
  if (c.kind != HamKind::Exceptional) out.push_back({"gadgets.inverse_residual", inv, 1e-8, true});
}

Report cmd_verify(const std::string& text, const Common& co, const std::string& suite) {
  Report r;
  const HamClass c = classify(load_hamiltonian(text, co.input));
  r.parameters = {{"suite", suite}, {"seed", co.seed}};
  r.result["kind"] = std::string(to_string(c.kind));
  r.margins = to_json(c.margins);
  const bool hard = c.kind == HamKind::HardSymmetric || c.kind == HamKind::HardAsymmetric ||
                    c.kind == HamKind::Exceptional;
  if (!hard) {
    r.result["skipped"] = true;
    r.result["notice"] = "no suite applies to class " + std::string(to_string(c.kind));
    std::cerr << "notice: verification skipped for class " << to_string(c.kind) << "\n";
    return r;
  }
  std::vector<Check> checks;
  if (suite == "lie" || suite == "all") lie_checks(c, co.seed, checks, r.result);
  if (suite == "gadgets" || suite == "all") gadget_checks(c, checks, r.result);
  json cj = json::array();
  bool ok = true;
  for (const Check& ch : checks) {
    cj.push_back({{"name", ch.name}, {"value", ch.value}, {"threshold", ch.threshold},
                  {"pass", ch.pass()}});
    r.residuals[ch.name] = ch.value;
    if (!ch.pass()) {
      ok = false;
      std::cerr << "verification failed: " << ch.name << " = " << ch.value << "\n";
    }
  }
  r.result["checks"] = cj;
  r.result["passed"] = ok;
  if (!ok) r.exit = kVerifyFailed;
  return r;
}

void emit(const json& j, const std::string& out) {
  const std::string s = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << s;
  } else {
    std::ofstream os(out);
    if (!os) throw Error(ErrorCode::Parse, "cannot write " + out);
    os << s;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify, invert, simulate and synthesize with two-qubit commuting Hamiltonians"};
  app.require_subcommand(1);
  Common co;
  if (const char* env = std::getenv("COMMHAM_SEED")) {
    try {
      co.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: COMMHAM_SEED must be a non-negative integer\n";
      return kParse;
    }
  }
  auto add_common = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", co.input, what)->required();
    sub->add_option("-o,--out", co.out, "Write the report here instead of stdout");
    sub->add_flag("--timing", co.timing, "Include runtime in the report");
    sub->add_option("--seed", co.seed, "Random seed (default: COMMHAM_SEED or 0)");
  };

  double tol = kClassTol;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a Hamiltonian");
  add_common(classify_cmd, "Hamiltonian JSON file");
  classify_cmd->add_option("--tol", tol, "Pattern-match tolerance");

  auto* diag_cmd = app.add_subcommand("diagonalize", "Local diagonalization and canonical parameters");
  add_common(diag_cmd, "Hamiltonian JSON file");

  double t = 0.0;
  std::optional<double> t2;
  bool reuse = false;
  std::string circuit_out;
  auto* invert_cmd = app.add_subcommand("invert", "Build the inverse gadget circuit for L(t)");
  add_common(invert_cmd, "Hamiltonian JSON file");
  invert_cmd->add_option("--t", t, "Gadget time")->required();
  invert_cmd->add_option("--t2", t2, "Second time (asymmetric class)");
  invert_cmd->add_flag("--reuse", reuse, "Recycle postselected ancillas");
  invert_cmd->add_option("--circuit-out", circuit_out, "Also write the circuit JSON here");

  int shots = 0;
  bool exact = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a circuit file");
  add_common(sim_cmd, "Circuit JSON file");
  sim_cmd->add_option("--shots", shots, "Number of samples")->check(CLI::NonNegativeNumber);
  sim_cmd->add_flag("--exact", exact, "Report the exact output distribution");

  std::string target;
  double eps = 1e-2;
  long budget = 100000;
  auto* synth_cmd = app.add_subcommand("synthesize", "Approximate a 2x2 target by gadget products");
  add_common(synth_cmd, "Hamiltonian JSON file");
  synth_cmd->add_option("--target", target, "Target JSON with a 2x2 \"matrix\" (default: Haar-random from the seed)");
  synth_cmd->add_option("--eps", eps, "Projective error goal");
  synth_cmd->add_option("--budget", budget, "Evaluation budget");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites for a Hamiltonian");
  add_common(verify_cmd, "Hamiltonian JSON file");
  verify_cmd->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember({"lie", "gadgets", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  json report = {{"schema", kSchemaVersion}, {"command", command}};
  try {
    const std::string text = slurp(co.input);
    report["inputs_digest"] = "sha256:" + sha256_hex(text);
    Report r;
    if (sub == classify_cmd) r = cmd_classify(text, co, tol);
    else if (sub == diag_cmd) r = cmd_diagonalize(text, co);
    else if (sub == invert_cmd) r = cmd_invert(text, co, t, t2, reuse, circuit_out);
    else if (sub == sim_cmd) r = cmd_simulate(text, co, shots, exact);
    else if (sub == synth_cmd) r = cmd_synthesize(text, co, target, eps, budget);
    else r = cmd_verify(text, co, suite);
    report["parameters"] = r.parameters;
    report["result"] = r.result;
    report["margins"] = r.margins;
    report["residuals"] = r.residuals;
    if (co.timing) {
      report["runtime_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    emit(report, co.out);
    return r.exit;
  } catch (const Error& e) {
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    std::cerr << "error: " << e.what() << "\n";
    try {
      emit(report, co.out);
    } catch (const Error&) {
    }
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
}
