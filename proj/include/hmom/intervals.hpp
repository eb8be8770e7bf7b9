#pragma once

#include <optional>
#include <vector>

#include "hmom/classes.hpp"

namespace hmom {

struct SectionInterval {
  int index = 0;
  CMatrix a, b, c, d;
  CMatrix u;                 // s_j - a_{j-1}, with a_{-1} = 0
  std::optional<CMatrix> o;  // b_{j-1} - s_j, j >= 1
  // False when s_0..s_j is not 𝓕-nnd; the matrices are then formal values only.
  bool reliable = true;
};

struct EndpointPair {
  CMatrix a, b;
};

// Left and right endpoint for index j, built from s_0..s_j only.
EndpointPair endpoint_pair(const MomentSequence& seq, int j);

SectionInterval endpoints(const MomentSequence& seq, int j);
std::vector<SectionInterval> all_endpoints(const MomentSequence& seq);

// Tests s_{m+1} := candidate against [a_m, b_m], cross-checked against the
// 𝓕-nnd test of the extended sequence.
ClassVerdict membership(const MomentSequence& seq, const CMatrix& candidate);

struct ParallelIdentityReport {
  double d0_residual = 0.0;
  std::vector<double> residuals;  // index k-1 holds the residual for k
  bool all_in_ps = true;
  double max_residual() const;
};

ParallelIdentityReport verify_parallel_identity(const MomentSequence& seq);

// Right-hand side of the two-step length recursion for d_{j+1}.
CMatrix length_recursion(const MomentSequence& seq, int j);
CMatrix length_recursion(const SectionInterval& sj, const CMatrix& next, double width,
                         const Tolerances& tol);

ClassVerdict is_completely_degenerate(const MomentSequence& seq);

// [A, B] with D = B - A parametrized by contractions 0 <= K <= I.
ClassVerdict is_contraction(const CMatrix& k, const Tolerances& tol);
CMatrix ball_point(const CMatrix& a, const CMatrix& d, const CMatrix& k, const Tolerances& tol);
CMatrix ball_coordinates(const CMatrix& a, const CMatrix& d, const CMatrix& x,
                         const Tolerances& tol);

void require_F_nnd(const MomentSequence& seq, const char* what);

}  // namespace hmom
