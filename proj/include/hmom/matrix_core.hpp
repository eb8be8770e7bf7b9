#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "hmom/error.hpp"

namespace hmom {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-9;
  // Per-dimension factor; the singular value cutoff is rank * max(rows, cols) * sigma_max.
  double rank = 1e-10;
  double range = 1e-8;

  void validate() const;
  double rank_cutoff(Index rows, Index cols) const;
};

enum class Status { inside, boundary, outside };

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view text);

struct ClassVerdict {
  Status status = Status::inside;
  double witness_eig = 0.0;
  std::string detail = "ok";
  std::optional<int> failing_index;

  bool ok() const { return status != Status::outside; }
  bool strictly_inside() const { return status == Status::inside; }
};

// Worst status wins; ties keep the smaller witness.
ClassVerdict conjoin(const ClassVerdict& a, const ClassVerdict& b);
ClassVerdict tag(ClassVerdict v, std::string_view prefix, std::optional<int> index = {});

double spectral_norm(const CMatrix& a);
bool all_finite(const CMatrix& a);
CMatrix hermitian_part(const CMatrix& a);
Eigen::VectorXd singular_values(const CMatrix& a);
Index numerical_rank(const CMatrix& a, const Tolerances& tol);

CMatrix pinv(const CMatrix& a, const Tolerances& tol);
// Also drops singular values at or below an absolute floor.
CMatrix pinv(const CMatrix& a, const Tolerances& tol, double floor);

struct ParallelSum {
  CMatrix value;
  bool in_ps = false;  // R(A) ⊆ R(A+B) and N(A+B) ⊆ N(A)
};
ParallelSum parallel_sum(const CMatrix& a, const CMatrix& b, const Tolerances& tol);

ClassVerdict is_hermitian(const CMatrix& a, const Tolerances& tol);
ClassVerdict is_psd(const CMatrix& a, const Tolerances& tol);
ClassVerdict is_pd(const CMatrix& a, const Tolerances& tol);

CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol);

CMatrix proj_range(const CMatrix& a, const Tolerances& tol);
CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol);

// Tests R(A) ⊆ R(B).
ClassVerdict range_included(const CMatrix& a, const CMatrix& b, const Tolerances& tol);

// Classifies B - A.
ClassVerdict loewner_leq(const CMatrix& a, const CMatrix& b, const Tolerances& tol);

ClassVerdict block_psd(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d,
                       const Tolerances& tol);

// Projector onto R(A) ∩ R(B) for PSD A, B. Uses the range of A∥B when (A,B) ∈ PS,
// otherwise the SVD route below.
CMatrix proj_intersection(const CMatrix& a, const CMatrix& b, const Tolerances& tol);
// Orthonormal-basis intersection: null space of [Qa, -Qb] mapped back through Qa.
CMatrix proj_intersection_svd(const CMatrix& a, const CMatrix& b, const Tolerances& tol);
CMatrix proj_sum(const CMatrix& a, const CMatrix& b, const Tolerances& tol);

}  // namespace hmom
