#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "commham/classifier.hpp"

namespace commham {

enum class Provenance { GSym, GAsym, HAsym, PPhase, Commutator, Conjugated, Given };

std::string_view to_string(Provenance p);

struct TangentElement {
  CMat2 m = CMat2::Zero();
  Provenance provenance = Provenance::Given;
  double v1 = 0.0;
  double v2 = 0.0;
};

struct LieSpanReport {
  int dimension = 0;
  std::vector<TangentElement> basis;
  int iterations = 0;
  bool used_span = false;
  bool used_commutator = false;
  bool used_conjugation = false;
  std::vector<int> dimension_trace;  ///< dimension after each closure stage
};

using RVec6 = Eigen::Matrix<double, 6, 1>;

/// Real coordinates (Re, Im of m00, m01, m10) of a traceless 2×2 matrix.
RVec6 embed(const CMat2& m);
CMat2 unembed(const RVec6& x);

/// g(v) = L′(v)·L(v)⁻¹ for the SL-normalized symmetric gadget.
TangentElement tangent_g_sym(double v, const CanonicalParams& p);

/// (∂L/∂t₁·L⁻¹, ∂L/∂t₂·L⁻¹) for the SL-normalized asymmetric gadget at (v1, v2).
std::pair<TangentElement, TangentElement> tangent_gh_asym(double v1, double v2,
                                                          const CanonicalParams& p);

inline constexpr double kRankCutoff = 1e-8;

/// Numerical real rank of a set of traceless matrices (cutoff relative to σ_max).
int real_rank(const std::vector<CMat2>& ms, double cutoff = kRankCutoff);

LieSpanReport lie_closure(const std::vector<TangentElement>& generators,
                          const std::vector<CMat2>& conjugators, int max_iter = 8);

/// Case-appropriate generators and conjugators, then closure.
LieSpanReport verify_density(const HamClass& c, std::uint64_t seed = 0);

/// ‖m − Π m‖ / ‖m‖ with Π the real orthogonal projection onto span(basis).
double span_residual(const CMat2& m, const std::vector<CMat2>& basis);

}  // namespace commham
