#pragma once

#include <optional>
#include <vector>

#include "hmom/matrix_core.hpp"

namespace hmom {

class MomentSequence {
 public:
  MomentSequence(int q, double alpha, double beta, std::vector<CMatrix> moments,
                 Tolerances tol = {});

  int q() const { return q_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double width() const { return beta_ - alpha_; }
  const Tolerances& tol() const { return tol_; }
  // Highest index m; the sequence holds s_0..s_m.
  int last_index() const { return static_cast<int>(moments_.size()) - 1; }
  const std::vector<CMatrix>& moments() const { return moments_; }
  const CMatrix& operator[](int j) const;

  MomentSequence prefix(int ell) const;
  MomentSequence appended(const CMatrix& next) const;
  MomentSequence with_moments(std::vector<CMatrix> moments) const;
  MomentSequence with_interval(double alpha, double beta) const;
  MomentSequence with_tolerances(const Tolerances& tol) const;

 private:
  int q_;
  double alpha_, beta_;
  std::vector<CMatrix> moments_;
  Tolerances tol_;
};

// Scale used for "≈ 0" decisions on derived data: max(1, max_j ‖s_j‖).
double sequence_scale(const MomentSequence& seq);

// Block matrix [s_{j+k+offset}]_{j,k=0..n}.
CMatrix hankel_block(const std::vector<CMatrix>& s, int offset, int n);
// Column (s_l; ...; s_m) and row (s_l, ..., s_m). Empty when l > m.
CMatrix y_block(const std::vector<CMatrix>& s, int l, int m);
CMatrix z_block(const std::vector<CMatrix>& s, int l, int m);

struct HankelView {
  int n = 0;
  CMatrix H;
  std::optional<CMatrix> K;
  std::optional<CMatrix> G;
};

HankelView build_hankel(const MomentSequence& seq, int n);

// Θ_n from raw moments; needs s_0..s_{2n-1}.
CMatrix theta(const std::vector<CMatrix>& s, int q, int n, const Tolerances& tol);
// ref_scale: magnitude of the data the moments were derived from; singular values
// of H_{n-1} below tol.rank_cutoff * ref_scale count as zero.
CMatrix theta(const std::vector<CMatrix>& s, int q, int n, const Tolerances& tol, double ref_scale);

struct SchurChain {
  std::vector<CMatrix> theta, L, M;
  bool range_warning = false;
  std::vector<int> warning_indices;
};

// ref_scale as for theta.
SchurChain schur_chain(const std::vector<CMatrix>& s, int q, int upto_n, const Tolerances& tol,
                       double ref_scale = 0.0);
SchurChain schur_chain(const MomentSequence& seq, int upto_n);
SchurChain schur_chain(const MomentSequence& seq);  // upto_n = floor(m/2)

struct StructuralMatrices {
  CMatrix J, Delta, Nabla;
};
StructuralMatrices structural(int q, int n);

}  // namespace hmom
