#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commham/diagonalizer.hpp"
#include "commham/simulator.hpp"

namespace commham {

struct GadgetMatrix {
  CMat2 raw = CMat2::Identity();
  std::optional<CMat2> normalized;  ///< raw / √det(raw), absent when det(raw) = 0
  bool projective = false;
  std::string domain_note;

  static GadgetMatrix from_raw(const CMat2& raw, std::string note = {});
};

/// Steps act on logical wires; FreshAncilla introduces a new wire in |bit⟩.
enum class StepKind { FreshAncilla, ApplyU, ApplyUdag, ApplyD, ApplyD2, Postselect, Measure };

struct Step {
  StepKind kind = StepKind::ApplyU;
  int w0 = 0;
  int w1 = 0;
  double t1 = 0.0;
  double t2 = 0.0;
  int bit = 0;
};

/// One named gadget application inside a composed circuit.
struct GadgetUse {
  std::string name;  ///< "L", "M", "N", "P", "L2", "M2", "N2"
  double t1 = 0.0;
  double t2 = 0.0;
};

struct GadgetCircuit {
  int wires = 1;
  int input_wire = 0;
  int output_wire = 0;
  std::vector<Step> steps;
  GadgetMatrix claimed;
  std::vector<GadgetUse> uses;  ///< in application order
};

/// Applies circuits left to right: the result realizes last.raw ⋯ first.raw.
GadgetCircuit chain(const std::vector<GadgetCircuit>& in_order);

struct LoweredCircuit {
  CircuitSpec spec;
  int input_qubit = 0;
  int output_qubit = 0;
};

/// Maps logical wires to qubits. With reuse, finished ancillas are recycled via Reset.
/// framed wraps the input line in U and the output line in U†, so every
/// line reads U · diagonal ops · U† and the circuit realizes U† · raw · U.
LoweredCircuit lower(const GadgetCircuit& c, bool reuse_qubits = false, bool framed = false);

// Symmetric case.
GadgetMatrix l_matrix(double t, const CanonicalParams& p);
GadgetMatrix m_matrix(double t, const CanonicalParams& p);
GadgetMatrix n_matrix(double t, const CanonicalParams& p);
/// Requires a′ ∈ {1, −3}; normalized = diag(e^{2it}, e^{−2it}).
GadgetMatrix p_matrix(double t, const CanonicalParams& p);

GadgetCircuit l_gadget(double t, const CanonicalParams& p);
GadgetCircuit m_gadget(double t, const CanonicalParams& p);
GadgetCircuit n_gadget(double t, const CanonicalParams& p);
GadgetCircuit p_gadget(double t, const CanonicalParams& p);

// Asymmetric case.
GadgetMatrix l2_matrix(double t1, double t2, const CanonicalParams& p);
GadgetMatrix m2_matrix(double t1, double t2, const CanonicalParams& p);
GadgetMatrix n2_matrix(double t1, double t2, const CanonicalParams& p);

GadgetCircuit l2_gadget(double t1, double t2, const CanonicalParams& p);
GadgetCircuit m2_gadget(double t1, double t2, const CanonicalParams& p);
GadgetCircuit n2_gadget(double t1, double t2, const CanonicalParams& p);

/// Ratio entry(0,0)/entry(1,1) of a diagonal N gadget in the asymmetric case.
cplx ratio_r2(double t1, double t2, const CanonicalParams& p);

enum class CaseTag { Case1_MEqualsInverse, Case2_PhaseGate, Case3_Sequences, Asym_NMN, Asym_MOnly };
std::string_view to_string(CaseTag c);

struct InversionPlan {
  CaseTag case_tag = CaseTag::Case1_MEqualsInverse;
  std::vector<double> phase_times;  ///< Case 3
  std::vector<double> norm_times;   ///< Case 3, each used as N(s)·N(−s)
  GadgetCircuit circuit;
  double residual = 0.0;  ///< ‖L·L⁻¹ ∓ I‖_op with both factors in SL(2)
  std::size_t gadget_count() const { return circuit.uses.size(); }
};

InversionPlan invert_l(double t, const CanonicalParams& p);
InversionPlan invert_l2(double t1, double t2, const CanonicalParams& p);

/// min over sign of ‖A·B ∓ I‖_op after scaling A and B to det 1.
double inverse_residual(const CMat2& a, const CMat2& b);

/// d(A,B) = min_φ ‖Â − e^{iφ}B̂‖_op with Frobenius-normalized Â, B̂.
double projective_distance(const CMat2& a, const CMat2& b);
double projective_distance(const CVec2& a, const CVec2& b);

/// Runs a gadget circuit on input state ψ and returns the output qubit state,
/// the survival probability and the product-state residual.
struct GadgetRun {
  CVec2 output;
  double survival = 1.0;
  double product_residual = 0.0;
};
GadgetRun simulate_gadget(const GadgetCircuit& c, const GateModel& model, const CVec2& psi,
                          bool reuse_qubits = false);

}  // namespace commham
