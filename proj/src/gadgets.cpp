#include "commham/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "commham/roots.hpp"

namespace commham {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularTol = 1e-12;
constexpr double kCaseTol = 1e-8;

void require_symmetric(const CanonicalParams& p) {
  if (!p.symmetric) throw Error(ErrorCode::AsymmetricCase, "gadget needs the b = c case");
}

void require_asymmetric(const CanonicalParams& p) {
  if (p.symmetric) throw Error(ErrorCode::SymmetricCase, "gadget needs the b != c case");
}

cplx e(double x) { return std::exp(kI * x); }

bool near(double x, double y) { return std::abs(x - y) <= kCaseTol; }

bool is_exceptional(const CanonicalParams& p) {
  return p.symmetric && near(p.a_prime, -1.0) &&
         std::abs(std::abs(p.alpha) - std::abs(p.beta)) <= kCaseTol;
}

Step fresh(int w, int bit) { return {StepKind::FreshAncilla, w, 0, 0.0, 0.0, bit}; }
Step su(int w) { return {StepKind::ApplyU, w, 0, 0.0, 0.0, 0}; }
Step sudag(int w) { return {StepKind::ApplyUdag, w, 0, 0.0, 0.0, 0}; }
Step sd(int a, int b, double t) { return {StepKind::ApplyD, a, b, t, 0.0, 0}; }
Step sd2(int a, int b, double t1, double t2) { return {StepKind::ApplyD2, a, b, t1, t2, 0}; }
Step spost(int w, int bit) { return {StepKind::Postselect, w, 0, 0.0, 0.0, bit}; }
Step smeas(int w) { return {StepKind::Measure, w, 0, 0.0, 0.0, 0}; }

/// Two-wire gadget: ancilla in |prep⟩ through U, one evolution with the data
/// wire, U† and postselection on `post_wire` with `post_bit`.
GadgetCircuit two_wire(Step evolution, int prep, int post_wire, int post_bit, int output_wire,
                       GadgetMatrix claimed, GadgetUse use) {
  GadgetCircuit c;
  c.wires = 2;
  c.input_wire = 0;
  c.output_wire = output_wire;
  c.steps = {fresh(1, prep), su(1), evolution, sudag(post_wire), spost(post_wire, post_bit)};
  c.claimed = std::move(claimed);
  c.uses = {std::move(use)};
  return c;
}

}  // namespace

GadgetMatrix GadgetMatrix::from_raw(const CMat2& raw, std::string note) {
  GadgetMatrix g;
  g.raw = raw;
  g.domain_note = std::move(note);
  const cplx det = raw.determinant();
  if (std::abs(det) <= 1e-12 * std::max(1e-300, raw.squaredNorm())) {
    g.projective = true;
  } else {
    g.normalized = raw / std::sqrt(det);
  }
  return g;
}

std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Case1_MEqualsInverse: return "Case1_MEqualsInverse";
    case CaseTag::Case2_PhaseGate: return "Case2_PhaseGate";
    case CaseTag::Case3_Sequences: return "Case3_Sequences";
    case CaseTag::Asym_NMN: return "Asym_NMN";
    case CaseTag::Asym_MOnly: return "Asym_MOnly";
  }
  return "Unknown";
}

GadgetMatrix l_matrix(double t, const CanonicalParams& p) {
  require_symmetric(p);
  if (std::abs(std::sin(2.0 * t)) < kSingularTol) throw Error(ErrorCode::SingularTime, "sin 2t = 0");
  const cplx a = p.alpha, b = p.beta;
  CMat2 raw;
  raw << std::norm(a) * e(p.a_prime * t), a * std::conj(b) * e(t),
      std::conj(a) * b * e(t), std::norm(b) * e(p.d_prime * t);
  return GadgetMatrix::from_raw(raw, "sin 2t != 0");
}

GadgetMatrix m_matrix(double t, const CanonicalParams& p) {
  require_symmetric(p);
  if (std::abs(std::sin(2.0 * t)) < kSingularTol) throw Error(ErrorCode::SingularTime, "sin 2t = 0");
  const cplx a = p.alpha, b = p.beta;
  CMat2 raw;
  raw << std::norm(b) * e(p.a_prime * t), -a * std::conj(b) * e(t),
      -std::conj(a) * b * e(t), std::norm(a) * e(p.d_prime * t);
  return GadgetMatrix::from_raw(raw, "sin 2t != 0");
}

GadgetMatrix n_matrix(double t, const CanonicalParams& p) {
  require_symmetric(p);
  const cplx ab = p.alpha * p.beta;
  const cplx x = e(t) - e(p.a_prime * t);
  const cplx y = e(p.d_prime * t) - e(t);
  if (std::abs(x) < kSingularTol && std::abs(y) < kSingularTol) {
    throw Error(ErrorCode::UndefinedRatio, "both diagonal entries vanish");
  }
  CMat2 raw = CMat2::Zero();
  raw(0, 0) = ab * x;
  raw(1, 1) = ab * y;
  return GadgetMatrix::from_raw(raw, "not both entries zero");
}

GadgetMatrix p_matrix(double t, const CanonicalParams& p) {
  require_symmetric(p);
  const double s = kPi / 4.0;
  const cplx a = p.alpha, b = p.beta;
  CMat2 raw = CMat2::Zero();
  if (near(p.a_prime, 1.0)) {
    const cplx n11 = a * b * (e(p.d_prime * s) - e(s));
    raw(0, 0) = b * n11 * e(t);
    raw(1, 1) = b * n11 * e(p.d_prime * t);
  } else if (near(p.a_prime, -3.0)) {
    const cplx n00 = a * b * (e(s) - e(p.a_prime * s));
    raw(0, 0) = a * n00 * e(-p.a_prime * t);
    raw(1, 1) = a * n00 * e(-t);
  } else {
    throw Error(ErrorCode::InvalidAPrime, "phase gadget needs a' = 1 or a' = -3");
  }
  return GadgetMatrix::from_raw(raw, "all t");
}

GadgetCircuit l_gadget(double t, const CanonicalParams& p) {
  return two_wire(sd(0, 1, t), 0, 0, 0, 1, l_matrix(t, p), {"L", t, 0.0});
}

GadgetCircuit m_gadget(double t, const CanonicalParams& p) {
  return two_wire(sd(0, 1, t), 1, 0, 1, 1, m_matrix(t, p), {"M", t, 0.0});
}

GadgetCircuit n_gadget(double t, const CanonicalParams& p) {
  return two_wire(sd(0, 1, t), 0, 1, 1, 0, n_matrix(t, p), {"N", t, 0.0});
}

GadgetCircuit p_gadget(double t, const CanonicalParams& p) {
  GadgetCircuit c;
  c.claimed = p_matrix(t, p);
  const double td = near(p.a_prime, 1.0) ? t : -t;
  c.wires = 3;
  c.input_wire = 0;
  c.output_wire = 0;
  c.steps = {fresh(1, 0), su(1),         fresh(2, 0),
             su(2),       sd(0, 1, td),  sd(1, 2, kPi / 4.0),
             sudag(2),    spost(2, 1),   sudag(1),
             smeas(1)};
  c.uses = {{"P", t, 0.0}};
  return c;
}

GadgetMatrix l2_matrix(double t1, double t2, const CanonicalParams& p) {
  require_asymmetric(p);
  const double tt = t1 + t2;
  if (std::abs(std::sin(tt)) < kSingularTol) throw Error(ErrorCode::SingularTime, "sin(t1+t2) = 0");
  const cplx a = p.alpha, b = p.beta;
  CMat2 raw;
  raw << std::norm(a) * e(p.a_prime * tt), a * std::conj(b) * e(t2),
      std::conj(a) * b * e(t1), std::norm(b) * e(p.d_prime * tt);
  return GadgetMatrix::from_raw(raw, "sin(t1+t2) != 0");
}

GadgetMatrix m2_matrix(double t1, double t2, const CanonicalParams& p) {
  require_asymmetric(p);
  const double tt = t1 + t2;
  if (std::abs(std::sin(tt)) < kSingularTol) throw Error(ErrorCode::SingularTime, "sin(t1+t2) = 0");
  const cplx a = p.alpha, b = p.beta;
  CMat2 raw;
  raw << std::norm(b) * e(p.a_prime * tt), -a * std::conj(b) * e(t2),
      -std::conj(a) * b * e(t1), std::norm(a) * e(p.d_prime * tt);
  return GadgetMatrix::from_raw(raw, "sin(t1+t2) != 0");
}

GadgetMatrix n2_matrix(double t1, double t2, const CanonicalParams& p) {
  require_asymmetric(p);
  const double tt = t1 + t2;
  const cplx ab = p.alpha * p.beta;
  const cplx x = e(t1) - e(p.a_prime * tt);
  const cplx y = e(p.d_prime * tt) - e(t2);
  if (std::abs(x) < kSingularTol && std::abs(y) < kSingularTol) {
    throw Error(ErrorCode::UndefinedRatio, "both diagonal entries vanish");
  }
  CMat2 raw = CMat2::Zero();
  raw(0, 0) = ab * x;
  raw(1, 1) = ab * y;
  return GadgetMatrix::from_raw(raw, "not both entries zero");
}

cplx ratio_r2(double t1, double t2, const CanonicalParams& p) {
  const GadgetMatrix n = n2_matrix(t1, t2, p);
  if (std::abs(n.raw(1, 1)) < kSingularTol) throw Error(ErrorCode::UndefinedRatio, "denominator vanishes");
  return n.raw(0, 0) / n.raw(1, 1);
}

GadgetCircuit l2_gadget(double t1, double t2, const CanonicalParams& p) {
  return two_wire(sd2(0, 1, t1, t2), 0, 0, 0, 1, l2_matrix(t1, t2, p), {"L2", t1, t2});
}

GadgetCircuit m2_gadget(double t1, double t2, const CanonicalParams& p) {
  return two_wire(sd2(0, 1, t1, t2), 1, 0, 1, 1, m2_matrix(t1, t2, p), {"M2", t1, t2});
}

GadgetCircuit n2_gadget(double t1, double t2, const CanonicalParams& p) {
  return two_wire(sd2(0, 1, t1, t2), 0, 1, 1, 0, n2_matrix(t1, t2, p), {"N2", t1, t2});
}

GadgetCircuit chain(const std::vector<GadgetCircuit>& in_order) {
  GadgetCircuit out;
  if (in_order.empty()) return out;
  out = in_order.front();
  for (std::size_t k = 1; k < in_order.size(); ++k) {
    const GadgetCircuit& c = in_order[k];
    std::vector<int> map(static_cast<std::size_t>(c.wires), -1);
    map[static_cast<std::size_t>(c.input_wire)] = out.output_wire;
    for (int w = 0; w < c.wires; ++w) {
      if (w != c.input_wire) map[static_cast<std::size_t>(w)] = out.wires++;
    }
    for (Step s : c.steps) {
      s.w0 = map[static_cast<std::size_t>(s.w0)];
      if (s.kind == StepKind::ApplyD || s.kind == StepKind::ApplyD2) {
        s.w1 = map[static_cast<std::size_t>(s.w1)];
      }
      out.steps.push_back(s);
    }
    out.output_wire = map[static_cast<std::size_t>(c.output_wire)];
    out.claimed = GadgetMatrix::from_raw(CMat2(c.claimed.raw * out.claimed.raw));
    out.uses.insert(out.uses.end(), c.uses.begin(), c.uses.end());
  }
  return out;
}

LoweredCircuit lower(const GadgetCircuit& c, bool reuse_qubits, bool framed) {
  LoweredCircuit lc;
  std::vector<int> phys(static_cast<std::size_t>(c.wires), -1);
  std::vector<int> last(static_cast<std::size_t>(c.wires), -1);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const Step& s = c.steps[i];
    last[static_cast<std::size_t>(s.w0)] = static_cast<int>(i);
    if (s.kind == StepKind::ApplyD || s.kind == StepKind::ApplyD2) {
      last[static_cast<std::size_t>(s.w1)] = static_cast<int>(i);
    }
  }
  std::vector<int> initial;
  std::vector<int> free_list;
  auto allocate = [&](int bit) {
    initial.push_back(bit);
    return static_cast<int>(initial.size()) - 1;
  };
  phys[static_cast<std::size_t>(c.input_wire)] = allocate(0);

  std::vector<Op> ops;
  if (framed) ops.push_back(Op::u(phys[static_cast<std::size_t>(c.input_wire)]));
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const Step& s = c.steps[i];
    if (s.kind == StepKind::FreshAncilla) {
      int q;
      if (reuse_qubits && !free_list.empty()) {
        std::sort(free_list.begin(), free_list.end());
        q = free_list.front();
        free_list.erase(free_list.begin());
        ops.push_back(Op::reset(q, s.bit));
      } else {
        q = allocate(s.bit);
      }
      phys[static_cast<std::size_t>(s.w0)] = q;
      continue;
    }
    const int q0 = phys[static_cast<std::size_t>(s.w0)];
    if (q0 < 0) throw Error(ErrorCode::InvalidCircuit, "wire used before it was introduced");
    switch (s.kind) {
      case StepKind::ApplyU: ops.push_back(Op::u(q0)); break;
      case StepKind::ApplyUdag: ops.push_back(Op::udag(q0)); break;
      case StepKind::ApplyD: ops.push_back(Op::d(q0, phys[static_cast<std::size_t>(s.w1)], s.t1)); break;
      case StepKind::ApplyD2:
        ops.push_back(Op::d2(q0, phys[static_cast<std::size_t>(s.w1)], s.t1, s.t2));
        break;
      case StepKind::Postselect: ops.push_back(Op::postselect(q0, s.bit)); break;
      case StepKind::Measure: ops.push_back(Op::measure(q0)); break;
      case StepKind::FreshAncilla: break;
    }
    const bool readout = s.kind == StepKind::Postselect || s.kind == StepKind::Measure;
    if (reuse_qubits && readout && s.w0 != c.output_wire &&
        last[static_cast<std::size_t>(s.w0)] == static_cast<int>(i)) {
      free_list.push_back(q0);
    }
  }
  if (framed) {
    ops.push_back(Op::udag(phys[static_cast<std::size_t>(c.output_wire)]));
    lc.spec.framed = true;
  }
  lc.spec.n = static_cast<int>(initial.size());
  lc.spec.initial = std::move(initial);
  lc.spec.ops = std::move(ops);
  lc.input_qubit = phys[static_cast<std::size_t>(c.input_wire)];
  lc.output_qubit = phys[static_cast<std::size_t>(c.output_wire)];
  lc.spec.output_qubit = lc.output_qubit;
  return lc;
}

double inverse_residual(const CMat2& a, const CMat2& b) {
  const CMat2 an = a / std::sqrt(a.determinant());
  const CMat2 bn = b / std::sqrt(b.determinant());
  const CMat2 prod = an * bn;
  const CMat2 id = CMat2::Identity();
  return std::min(operator_norm(CMat2(prod - id)), operator_norm(CMat2(prod + id)));
}

double projective_distance(const CMat2& a, const CMat2& b) {
  const CMat2 an = a / a.norm();
  const CMat2 bn = b / b.norm();
  auto dist = [&](double phi) { return operator_norm(CMat2(an - e(phi) * bn)); };
  double best_phi = std::arg((bn.adjoint() * an).trace());
  double best = dist(best_phi);
  for (int k = 0; k < 16; ++k) {
    const double phi = -kPi + 2.0 * kPi * k / 16.0;
    const double d = dist(phi);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_phi - kPi / 8.0, hi = best_phi + kPi / 8.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

double projective_distance(const CVec2& a, const CVec2& b) {
  const CVec2 an = a.normalized(), bn = b.normalized();
  const cplx ov = bn.dot(an);
  const cplx ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
  return (an - ph * bn).norm();
}

GadgetRun simulate_gadget(const GadgetCircuit& c, const GateModel& model, const CVec2& psi,
                          bool reuse_qubits) {
  const LoweredCircuit lc = lower(c, reuse_qubits);
  const int n = lc.spec.n;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  std::size_t base = 0;
  for (int q = 0; q < n; ++q) {
    if (q != lc.input_qubit && lc.spec.initial[static_cast<std::size_t>(q)]) {
      base |= std::size_t{1} << (n - 1 - q);
    }
  }
  const std::size_t m = std::size_t{1} << (n - 1 - lc.input_qubit);
  const double nrm = psi.norm();
  amps(static_cast<Eigen::Index>(base)) = psi(0) / nrm;
  amps(static_cast<Eigen::Index>(base | m)) = psi(1) / nrm;
  RunResult r = run_from(lc.spec, model, StateVector(n, std::move(amps)));
  GadgetRun out;
  out.survival = r.norm_tracked;
  out.output = extract_qubit(r.state, lc.output_qubit, &out.product_residual);
  return out;
}

InversionPlan invert_l(double t, const CanonicalParams& p) {
  require_symmetric(p);
  if (is_exceptional(p)) throw Error(ErrorCode::ExceptionalCase, "no inverse gadget for this class");
  const GadgetMatrix l = l_matrix(t, p);
  InversionPlan plan;
  const double theta = (p.d_prime - p.a_prime) * t;
  if (near(p.a_prime, -1.0)) {
    plan.case_tag = CaseTag::Case1_MEqualsInverse;
    plan.circuit = m_gadget(t, p);
  } else if (near(p.a_prime, 1.0) || near(p.a_prime, -3.0)) {
    plan.case_tag = CaseTag::Case2_PhaseGate;
    const double tau = theta / 4.0;
    plan.circuit = chain({p_gadget(tau, p), m_gadget(t, p), p_gadget(tau, p)});
  } else {
    plan.case_tag = CaseTag::Case3_Sequences;
    plan.phase_times = solve_phase_sequence(theta, p.a_prime);
    std::vector<GadgetCircuit> side;
    cplx ratio = 1.0;
    for (double ti : plan.phase_times) {
      side.push_back(n_gadget(ti, p));
      ratio *= ratio_r(ti, p.a_prime);
    }
    plan.norm_times = solve_norm_sequence(1.0 / std::sqrt(std::abs(ratio)), p.a_prime);
    for (double s : plan.norm_times) {
      side.push_back(n_gadget(s, p));
      side.push_back(n_gadget(-s, p));
    }
    std::vector<GadgetCircuit> all = side;
    all.push_back(m_gadget(t, p));
    all.insert(all.end(), side.begin(), side.end());
    plan.circuit = chain(all);
  }
  plan.residual = inverse_residual(l.raw, plan.circuit.claimed.raw);
  return plan;
}

InversionPlan invert_l2(double t1, double t2, const CanonicalParams& p) {
  require_asymmetric(p);
  const GadgetMatrix l = l2_matrix(t1, t2, p);
  InversionPlan plan;
  const double s1 = (p.d_prime - p.a_prime) * (t1 + t2);
  if (std::abs(e(s1) - 1.0) <= kSingularTol) {
    plan.case_tag = CaseTag::Asym_MOnly;
    plan.circuit = m2_gadget(t1, t2, p);
  } else {
    plan.case_tag = CaseTag::Asym_NMN;
    plan.circuit = chain({n2_gadget(s1, -s1, p), m2_gadget(t1, t2, p), n2_gadget(s1, -s1, p)});
  }
  plan.residual = inverse_residual(l.raw, plan.circuit.claimed.raw);
  return plan;
}

}  // namespace commham
