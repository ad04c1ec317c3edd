#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commham/diagonalizer.hpp"

namespace commham {

/// What the hardware can do: the local basis change U and the eigenvalues of
/// the diagonal evolutions. ApplyD(t) multiplies |jk⟩ by exp(i·d[2j+k]·t);
/// ApplyD2(t1,t2) by exp(i·(h1[2j+k]·t1 + h2[2j+k]·t2)).
struct GateModel {
  CMat2 u = CMat2::Identity();
  Eigen::Vector4d d = Eigen::Vector4d::Zero();
  std::optional<Eigen::Vector4d> h1;
  std::optional<Eigen::Vector4d> h2;

  static GateModel from_params(const CanonicalParams& p);
  static GateModel from_diagonalization(const LocalDiagonalization& ld);

  CVec4 d_phases(double t) const;
  CVec4 d2_phases(double t1, double t2) const;
};

enum class OpKind { ApplyU, ApplyUdag, ApplyD, ApplyD2, Postselect, Measure, Reset };

std::string_view to_string(OpKind k);

struct Op {
  OpKind kind = OpKind::ApplyU;
  int q0 = 0;
  int q1 = 0;
  double t1 = 0.0;
  double t2 = 0.0;
  int bit = 0;

  static Op u(int q) { return {OpKind::ApplyU, q, 0, 0.0, 0.0, 0}; }
  static Op udag(int q) { return {OpKind::ApplyUdag, q, 0, 0.0, 0.0, 0}; }
  static Op d(int a, int b, double t) { return {OpKind::ApplyD, a, b, t, 0.0, 0}; }
  static Op d2(int a, int b, double t1, double t2) { return {OpKind::ApplyD2, a, b, t1, t2, 0}; }
  static Op postselect(int q, int bit) { return {OpKind::Postselect, q, 0, 0.0, 0.0, bit}; }
  static Op measure(int q) { return {OpKind::Measure, q, 0, 0.0, 0.0, 0}; }
  static Op reset(int q, int bit) { return {OpKind::Reset, q, 0, 0.0, 0.0, bit}; }

  bool is_diagonal() const { return kind == OpKind::ApplyD || kind == OpKind::ApplyD2; }
};

struct CircuitSpec {
  int n = 1;
  std::vector<int> initial;  ///< one bit per qubit, qubit 0 first
  std::vector<Op> ops;
  bool framed = false;
  std::optional<int> output_qubit;
};

inline constexpr int kMaxQubits = 24;
inline constexpr int kMaxExactQubits = 14;

class StateVector {
 public:
  StateVector(int n, const std::vector<int>& bits);
  StateVector(int n, Eigen::VectorXcd amplitudes);

  int n() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm_tracked() const { return norm_tracked_; }

  void apply_1q(int q, const CMat2& m);
  void apply_diag2(int qa, int qb, const CVec4& phases);
  double prob(int q, int bit) const;
  /// Projects qubit q onto |bit⟩, renormalizes; returns the survival probability.
  double postselect(int q, int bit);
  /// Requires q to be unentangled with the rest, then sets it to |bit⟩.
  void reset(int q, int bit);

 private:
  std::size_t mask(int q) const { return std::size_t{1} << (n_ - 1 - q); }
  void check(int q) const;

  int n_;
  Eigen::VectorXcd amps_;
  double norm_tracked_ = 1.0;
};

void apply_d(StateVector& s, int qa, int qb, double t, const GateModel& m);
void apply_d2(StateVector& s, int qa, int qb, double t1, double t2, const GateModel& m);
double postselect(StateVector& s, int q, int bit);

struct RunResult {
  StateVector state;
  std::vector<double> survivals;
  double norm_tracked = 1.0;
};

/// Throws IndexOutOfRange for bad qubit indices and InvalidCircuit when, in framed mode,
/// when a line does not have the form U · diagonal ops · U†.
void validate(const CircuitSpec& spec);

void apply_op(StateVector& s, const Op& op, const GateModel& m, std::vector<double>* survivals = nullptr);

RunResult run_circuit(const CircuitSpec& spec, const GateModel& m);
/// Runs the ops of spec from an arbitrary starting state.
RunResult run_from(const CircuitSpec& spec, const GateModel& m, StateVector initial);

Eigen::VectorXd output_distribution(const CircuitSpec& spec, const GateModel& m);

std::vector<std::string> sample(const CircuitSpec& spec, const GateModel& m, int shots,
                                std::uint64_t seed);

std::string bitstring(std::uint64_t index, int n);

/// State of qubit q, assuming the full state is a product of q with the rest.
/// product_residual receives ‖ψ − q⊗rest‖ for the extracted factors.
CVec2 extract_qubit(const StateVector& s, int q, double* product_residual = nullptr);

}  // namespace commham
