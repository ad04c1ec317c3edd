#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "commham/diagonalizer.hpp"

namespace commham {

enum class HamKind { NonCommuting, Diagonal, NonEntangling, Exceptional, HardSymmetric, HardAsymmetric };
enum class Subcase { Generic, APlusOne, AMinusOne, AMinusThree };

std::string_view to_string(HamKind k);
std::string_view to_string(Subcase s);

/// Distances to each classification boundary, in the units the thresholds use.
struct Margins {
  double abs_alpha = 0.0;
  double abs_beta = 0.0;
  double b_plus_c = 0.0;      ///< |b + c| / scale
  double b_minus_c = 0.0;     ///< |b − c| / scale
  double a_plus_one = 0.0;    ///< |a′ + 1|
  double a_minus_one = 0.0;   ///< |a′ − 1|
  double a_plus_three = 0.0;  ///< |a′ + 3|
  double alpha_beta_gap = 0.0;  ///< ||α| − |β||
};

struct HamClass {
  HamKind kind = HamKind::NonCommuting;
  std::optional<LocalDiagonalization> diag;
  std::optional<CanonicalParams> params;
  double theta = 0.0;
  Subcase subcase = Subcase::Generic;
  Margins margins;
};

inline constexpr double kClassTol = 1e-8;

HamClass classify(const CMat4& h, double tol = kClassTol);

Subcase subcase_for(double a_prime, double tol = kClassTol);

/// Brute-force entanglement oracle over sampled times and all basis states.
bool is_entangling_bruteforce(const CMat4& h, int samples, std::uint64_t seed);

/// Second Schmidt coefficient of a two-qubit pure state.
double second_schmidt(const CVec4& psi);

}  // namespace commham
