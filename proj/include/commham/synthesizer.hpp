#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commham/diagonalizer.hpp"

namespace commham {

enum class SynthKind { L, L2, P };

std::string_view to_string(SynthKind k);

/// One factor of a synthesized product. L2 uses (t1, t2); L and P use t1.
struct SynthStep {
  SynthKind kind = SynthKind::L;
  double t1 = 0.0;
  double t2 = 0.0;
  int exponent = 1;
};

struct SynthesisResult {
  std::vector<SynthStep> sequence;  ///< applied first to last
  double achieved_error = 0.0;
  long evaluations = 0;
  std::uint64_t seed = 0;
  bool success = false;
};

struct SynthOptions {
  int beam_width = 32;
  int grid_points = 64;
  int beam_depth = 3;
  int sequence_length = 12;
  int lm_iterations = 150;
};

/// Product G_n ⋯ G_1 of the SL-normalized factors.
CMat2 evaluate_sequence(const std::vector<SynthStep>& seq, const CanonicalParams& p);

/// Throws ExceptionalCase for the exceptional class; on budget exhaustion
/// returns the best sequence found with success = false.
SynthesisResult synthesize(const CMat2& target, const CanonicalParams& p, double epsilon,
                           long budget, std::uint64_t seed, const SynthOptions& opts = {});

struct CoverageReport {
  int sequence_length = 0;
  int samples = 0;
  std::size_t products = 0;
  double max_distance = 0.0;
  double mean_distance = 0.0;
  std::vector<double> bin_edges;
  std::vector<int> histogram;
};

/// Nearest-product distance for seeded Haar-random SU(2) points. Products of
/// length ℓ ≤ sequence_length are drawn from nested seeded sets, so the
/// reported maximum is non-increasing in sequence_length.
CoverageReport net_coverage(const CanonicalParams& p, int sequence_length, int samples,
                            std::uint64_t seed, int products_per_length = 2000);

/// The time grid used by the search: (k + 1/2)·π / (grid_points / 2).
std::vector<double> time_grid(int grid_points);

}  // namespace commham
