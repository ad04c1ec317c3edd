#pragma once

#include <vector>

#include "commham/pauli.hpp"

namespace commham {

/// r(t) = (e^{it} − e^{ia′t}) / (e^{id′t} − e^{it}) with d′ = −2 − a′.
cplx ratio_r(double t, double a_prime);

/// Real factor ρ(t) with r(t) = ρ(t)·e^{i(a′+1)t}.
double ratio_rho(double t, double a_prime);

/// f(s) = r(s)·r(−s) = (1 − cos((1−a′)s)) / (1 − cos((3+a′)s)).
double f_norm(double s, double a_prime);

/// lim_{s→0} f(s) = ((1−a′)/(3+a′))².
double f_limit(double a_prime);

/// T* = 2π / max(|1−a′|, |3+a′|): on (−T*, T*) \ {0}, ρ keeps the sign of ρ(0⁺)
/// and f is strictly monotone in |s|.
double valid_time_bound(double a_prime);

/// Throws InvalidAPrime for a′ ∈ {1, −1, −3}.
void require_generic(double a_prime);

struct RootLog {
  int bisection_steps = 0;
  std::vector<double> newton_residuals;  ///< |log f(s) − log k| per Newton iterate
};

/// Solves f(s) = k on (0, T*) by bisection until the bracket is narrower than
/// 0.1, then safeguarded Newton on log f.
double solve_f(double k, double a_prime, RootLog* log = nullptr);

/// Times t₁…t_k with arg Π r(tᵢ) ≡ θ (mod 2π). Empty when θ ≡ 0.
std::vector<double> solve_phase_sequence(double theta, double a_prime);

/// Times s₁…s_m with Π f(sⱼ) = c_target². Empty when c_target = 1.
std::vector<double> solve_norm_sequence(double c_target, double a_prime,
                                        std::vector<RootLog>* logs = nullptr);

/// Worst-case length bound for solve_phase_sequence.
int phase_sequence_bound(double a_prime);

}  // namespace commham
