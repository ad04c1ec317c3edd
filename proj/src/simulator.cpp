#include "commham/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace commham {

std::string_view to_string(OpKind k) {
  switch (k) {
    case OpKind::ApplyU: return "u";
    case OpKind::ApplyUdag: return "udag";
    case OpKind::ApplyD: return "d";
    case OpKind::ApplyD2: return "d2";
    case OpKind::Postselect: return "postselect";
    case OpKind::Measure: return "measure";
    case OpKind::Reset: return "reset";
  }
  return "unknown";
}

GateModel GateModel::from_params(const CanonicalParams& p) {
  GateModel m;
  m.u = p.u;
  if (p.symmetric) {
    m.d << p.a_prime, 1.0, 1.0, p.d_prime;
  } else {
    m.d << p.a_prime, p.b_raw / p.scale, p.c_raw / p.scale, p.d_prime;
    m.h1 = Eigen::Vector4d(p.a_prime, 1.0, 0.0, p.d_prime);
    m.h2 = Eigen::Vector4d(p.a_prime, 0.0, 1.0, p.d_prime);
  }
  return m;
}

GateModel GateModel::from_diagonalization(const LocalDiagonalization& ld) {
  GateModel m;
  m.u = ld.u;
  m.d = ld.eigs;
  return m;
}

CVec4 GateModel::d_phases(double t) const {
  CVec4 ph;
  for (int i = 0; i < 4; ++i) ph(i) = std::exp(kI * (d(i) * t));
  return ph;
}

CVec4 GateModel::d2_phases(double t1, double t2) const {
  if (!h1 || !h2) throw Error(ErrorCode::SymmetricCase, "two-time evolution needs b != c");
  CVec4 ph;
  for (int i = 0; i < 4; ++i) ph(i) = std::exp(kI * ((*h1)(i) * t1 + (*h2)(i) * t2));
  return ph;
}

StateVector::StateVector(int n, const std::vector<int>& bits) : n_(n) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorCode::TooLarge, "qubit count out of range");
  if (static_cast<int>(bits.size()) != n) {
    throw Error(ErrorCode::InvalidCircuit, "initial bitstring length mismatch");
  }
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  std::size_t idx = 0;
  for (int q = 0; q < n; ++q) {
    if (bits[q] != 0 && bits[q] != 1) throw Error(ErrorCode::InvalidCircuit, "bits must be 0 or 1");
    if (bits[q]) idx |= mask(q);
  }
  amps_(static_cast<Eigen::Index>(idx)) = 1.0;
}

StateVector::StateVector(int n, Eigen::VectorXcd amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxQubits) throw Error(ErrorCode::TooLarge, "qubit count out of range");
  if (amps_.size() != static_cast<Eigen::Index>(std::size_t{1} << n)) {
    throw Error(ErrorCode::InvalidCircuit, "amplitude count must be 2^n");
  }
  const double nrm = amps_.norm();
  if (!(nrm > 0)) throw Error(ErrorCode::ZeroProbability, "zero state");
  amps_ /= nrm;
}

void StateVector::check(int q) const {
  if (q < 0 || q >= n_) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
}

void StateVector::apply_1q(int q, const CMat2& m) {
  check(q);
  const std::size_t bit = mask(q);
  const std::size_t dim = static_cast<std::size_t>(amps_.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cplx x0 = amps_(i), x1 = amps_(i | bit);
    amps_(i) = m(0, 0) * x0 + m(0, 1) * x1;
    amps_(i | bit) = m(1, 0) * x0 + m(1, 1) * x1;
  }
}

void StateVector::apply_diag2(int qa, int qb, const CVec4& phases) {
  check(qa);
  check(qb);
  if (qa == qb) throw Error(ErrorCode::IndexOutOfRange, "pair qubits must differ");
  const std::size_t ma = mask(qa), mb = mask(qb);
  const std::size_t dim = static_cast<std::size_t>(amps_.size());
  for (std::size_t i = 0; i < dim; ++i) {
    const int k = ((i & ma) ? 2 : 0) + ((i & mb) ? 1 : 0);
    amps_(i) *= phases(k);
  }
}

double StateVector::prob(int q, int bit) const {
  check(q);
  const std::size_t m = mask(q);
  double p = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (((static_cast<std::size_t>(i) & m) != 0) == (bit != 0)) p += std::norm(amps_(i));
  }
  return p;
}

double StateVector::postselect(int q, int bit) {
  check(q);
  const std::size_t m = mask(q);
  double keep = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (((static_cast<std::size_t>(i) & m) != 0) == (bit != 0)) {
      keep += std::norm(amps_(i));
    } else {
      amps_(i) = 0.0;
    }
  }
  if (keep < 1e-300) throw Error(ErrorCode::ZeroProbability, "postselected outcome has zero probability");
  amps_ /= std::sqrt(keep);
  norm_tracked_ *= keep;
  return keep;
}

void StateVector::reset(int q, int bit) {
  check(q);
  const std::size_t m = mask(q);
  const std::size_t dim = static_cast<std::size_t>(amps_.size());
  cplx overlap = 0.0;
  double n0 = 0.0, n1 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    overlap += std::conj(amps_(i)) * amps_(i | m);
    n0 += std::norm(amps_(i));
    n1 += std::norm(amps_(i | m));
  }
  if (std::abs(n0 * n1 - std::norm(overlap)) > 1e-10) {
    throw Error(ErrorCode::InvalidCircuit, "reset of an entangled qubit");
  }
  const bool from_one = n1 > n0;
  const double nrm = std::sqrt(from_one ? n1 : n0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    const cplx rest = (from_one ? amps_(i | m) : amps_(i)) / nrm;
    amps_(i) = bit ? cplx(0.0) : rest;
    amps_(i | m) = bit ? rest : cplx(0.0);
  }
}

void apply_d(StateVector& s, int qa, int qb, double t, const GateModel& m) {
  s.apply_diag2(qa, qb, m.d_phases(t));
}

void apply_d2(StateVector& s, int qa, int qb, double t1, double t2, const GateModel& m) {
  s.apply_diag2(qa, qb, m.d2_phases(t1, t2));
}

double postselect(StateVector& s, int q, int bit) { return s.postselect(q, bit); }

void validate(const CircuitSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxQubits) throw Error(ErrorCode::TooLarge, "qubit count out of range");
  if (static_cast<int>(spec.initial.size()) != spec.n) {
    throw Error(ErrorCode::InvalidCircuit, "initial bitstring length mismatch");
  }
  auto in_range = [&](int q) { return q >= 0 && q < spec.n; };
  for (const Op& op : spec.ops) {
    if (!in_range(op.q0) || (op.is_diagonal() && (!in_range(op.q1) || op.q1 == op.q0))) {
      throw Error(ErrorCode::IndexOutOfRange, "op qubit index out of range");
    }
    if ((op.kind == OpKind::Postselect || op.kind == OpKind::Reset) && op.bit != 0 && op.bit != 1) {
      throw Error(ErrorCode::InvalidCircuit, "bit must be 0 or 1");
    }
  }
  if (spec.output_qubit && !in_range(*spec.output_qubit)) {
    throw Error(ErrorCode::IndexOutOfRange, "output qubit out of range");
  }
  if (!spec.framed) return;

  enum class Line { Fresh, Open, Closed };
  std::vector<Line> line(static_cast<std::size_t>(spec.n), Line::Fresh);
  auto fail = [](int q, const std::string& why) {
    throw Error(ErrorCode::InvalidCircuit, "line " + std::to_string(q) + ": " + why);
  };
  for (const Op& op : spec.ops) {
    Line& a = line[static_cast<std::size_t>(op.q0)];
    switch (op.kind) {
      case OpKind::ApplyU:
        if (a != Line::Fresh) fail(op.q0, "U must open a line");
        a = Line::Open;
        break;
      case OpKind::ApplyUdag:
        if (a != Line::Open) fail(op.q0, "U† must close an open line");
        a = Line::Closed;
        break;
      case OpKind::ApplyD:
      case OpKind::ApplyD2:
        if (a != Line::Open || line[static_cast<std::size_t>(op.q1)] != Line::Open) {
          fail(op.q0, "diagonal evolution outside a U ... U† window");
        }
        break;
      case OpKind::Postselect:
      case OpKind::Measure:
        if (a == Line::Open) fail(op.q0, "readout before U†");
        break;
      case OpKind::Reset:
        if (a == Line::Open) fail(op.q0, "reset of an open line");
        a = Line::Fresh;
        break;
    }
  }
  for (int q = 0; q < spec.n; ++q) {
    if (line[static_cast<std::size_t>(q)] == Line::Open) fail(q, "line never closed by U†");
  }
}

void apply_op(StateVector& s, const Op& op, const GateModel& m, std::vector<double>* survivals) {
  switch (op.kind) {
    case OpKind::ApplyU: s.apply_1q(op.q0, m.u); break;
    case OpKind::ApplyUdag: s.apply_1q(op.q0, m.u.adjoint()); break;
    case OpKind::ApplyD: apply_d(s, op.q0, op.q1, op.t1, m); break;
    case OpKind::ApplyD2: apply_d2(s, op.q0, op.q1, op.t1, op.t2, m); break;
    case OpKind::Postselect: {
      const double p = s.postselect(op.q0, op.bit);
      if (survivals) survivals->push_back(p);
      break;
    }
    case OpKind::Measure: break;
    case OpKind::Reset: s.reset(op.q0, op.bit); break;
  }
}

RunResult run_from(const CircuitSpec& spec, const GateModel& m, StateVector initial) {
  validate(spec);
  if (initial.n() != spec.n) throw Error(ErrorCode::InvalidCircuit, "initial state size mismatch");
  RunResult r{std::move(initial), {}, 1.0};
  for (const Op& op : spec.ops) apply_op(r.state, op, m, &r.survivals);
  r.norm_tracked = r.state.norm_tracked();
  return r;
}

RunResult run_circuit(const CircuitSpec& spec, const GateModel& m) {
  validate(spec);
  return run_from(spec, m, StateVector(spec.n, spec.initial));
}

Eigen::VectorXd output_distribution(const CircuitSpec& spec, const GateModel& m) {
  if (spec.n > kMaxExactQubits) throw Error(ErrorCode::TooLarge, "exact distribution limited to 14 qubits");
  const RunResult r = run_circuit(spec, m);
  return r.state.amplitudes().cwiseAbs2();
}

std::string bitstring(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (index & (std::uint64_t{1} << (n - 1 - q))) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::vector<std::string> sample(const CircuitSpec& spec, const GateModel& m, int shots,
                                std::uint64_t seed) {
  if (shots < 0) throw Error(ErrorCode::InvalidCircuit, "shots must be non-negative");
  const RunResult r = run_circuit(spec, m);
  const Eigen::VectorXcd& a = r.state.amplitudes();
  std::vector<double> cdf(static_cast<std::size_t>(a.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += std::norm(a(i));
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (int k = 0; k < shots; ++k) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(bitstring(static_cast<std::uint64_t>(it - cdf.begin()), spec.n));
  }
  return out;
}

CVec2 extract_qubit(const StateVector& s, int q, double* product_residual) {
  if (q < 0 || q >= s.n()) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
  const Eigen::VectorXcd& a = s.amplitudes();
  const std::size_t m = std::size_t{1} << (s.n() - 1 - q);
  Eigen::Index best = 0;
  a.cwiseAbs2().maxCoeff(&best);
  const std::size_t base = static_cast<std::size_t>(best) & ~m;
  CVec2 out(a(static_cast<Eigen::Index>(base)), a(static_cast<Eigen::Index>(base | m)));
  out.normalize();
  if (product_residual) {
    double res = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(a.size()); ++i) {
      if (i & m) continue;
      const cplx x0 = a(static_cast<Eigen::Index>(i)), x1 = a(static_cast<Eigen::Index>(i | m));
      const cplx rest = std::conj(out(0)) * x0 + std::conj(out(1)) * x1;
      res += std::norm(x0 - out(0) * rest) + std::norm(x1 - out(1) * rest);
    }
    *product_residual = std::sqrt(res);
  }
  return out;
}

}  // namespace commham
