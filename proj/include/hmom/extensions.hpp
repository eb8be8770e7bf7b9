#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hmom/intervals.hpp"

namespace hmom {

enum class ExtensionMode { lower, upper, central, ball, explicit_list };

std::optional<ExtensionMode> parse_mode(const std::string& text);
std::string to_string(ExtensionMode mode);

struct ExtensionPolicy {
  ExtensionMode mode = ExtensionMode::central;
  int steps = 1;
  // ball: one contraction reused for every step, or one per step.
  // explicit_list: the candidate moments, one per step.
  std::vector<CMatrix> matrices;
};

MomentSequence extend(const MomentSequence& seq, const ExtensionPolicy& policy);

// Seed mapping: std::mt19937_64(seed) drives std::normal_distribution<double> for
// every Gaussian entry (real part then imaginary part, each with variance 1/2) and
// std::uniform_real_distribution<double> for contraction eigenvalues.
MomentSequence random_F(int q, double alpha, double beta, int m, std::uint64_t seed, bool pd,
                        Tolerances tol = {});

struct DegenerateTailReport {
  std::optional<int> m0;           // first index with d ≈ 0
  bool tail_consistent = true;     // s_j = a_{j-1} = b_{j-1} = c_{j-1} for all j > m0
  double max_tail_residual = 0.0;  // relative to the sequence scale
  std::optional<int> hankel_order; // n+1 with n = floor(m0/2), when L_{n+1} is available
  std::optional<bool> hankel_degenerate;
  double threshold = 0.0;
};

DegenerateTailReport degenerate_tail_check(const MomentSequence& seq);

}  // namespace hmom
