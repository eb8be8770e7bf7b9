#include "hmom/matrix_core.hpp"

#include <algorithm>
#include <cmath>

namespace hmom {

namespace {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::shape, std::string(what) + ": matrix is not square");
}

Eigen::JacobiSVD<CMatrix> full_svd(const CMatrix& a) {
  return Eigen::JacobiSVD<CMatrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

double scale_of(const CMatrix& a) { return std::max(1.0, spectral_norm(a)); }

ClassVerdict make(Status s, double witness, std::string detail) {
  ClassVerdict v;
  v.status = s;
  v.witness_eig = witness;
  v.detail = std::move(detail);
  return v;
}

int severity(Status s) {
  switch (s) {
    case Status::inside: return 0;
    case Status::boundary: return 1;
    case Status::outside: return 2;
  }
  return 2;
}

}  // namespace

void Tolerances::validate() const {
  for (double t : {herm, psd, rank, range}) {
    if (!(t > 0.0 && t < 1.0))
      throw Error(ErrorKind::argument, "tolerances must lie strictly between 0 and 1");
  }
}

double Tolerances::rank_cutoff(Index rows, Index cols) const {
  return rank * static_cast<double>(std::max<Index>({rows, cols, 1}));
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::inside: return "inside";
    case Status::boundary: return "boundary";
    case Status::outside: return "outside";
  }
  return "outside";
}

std::optional<Status> parse_status(std::string_view text) {
  if (text == "inside") return Status::inside;
  if (text == "boundary") return Status::boundary;
  if (text == "outside") return Status::outside;
  return std::nullopt;
}

ClassVerdict conjoin(const ClassVerdict& a, const ClassVerdict& b) {
  int sa = severity(a.status), sb = severity(b.status);
  if (sa != sb) return sa > sb ? a : b;
  return b.witness_eig < a.witness_eig ? b : a;
}

ClassVerdict tag(ClassVerdict v, std::string_view prefix, std::optional<int> index) {
  if (v.status == Status::inside) return v;
  v.detail = std::string(prefix) + ":" + v.detail;
  if (index && !v.failing_index) v.failing_index = index;
  return v;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::VectorXd sv = singular_values(a);
  return sv.size() ? sv(0) : 0.0;
}

bool all_finite(const CMatrix& a) {
  for (Index i = 0; i < a.size(); ++i) {
    const Complex& z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

CMatrix hermitian_part(const CMatrix& a) {
  require_square(a, "hermitian_part");
  return (a + a.adjoint()) * 0.5;
}

Eigen::VectorXd singular_values(const CMatrix& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<CMatrix>(a).singularValues();
}

Index numerical_rank(const CMatrix& a, const Tolerances& tol) {
  Eigen::VectorXd sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  double cut = tol.rank_cutoff(a.rows(), a.cols()) * sv(0);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

CMatrix pinv(const CMatrix& a, const Tolerances& tol) { return pinv(a, tol, 0.0); }

CMatrix pinv(const CMatrix& a, const Tolerances& tol, double floor) {
  CMatrix out = CMatrix::Zero(a.cols(), a.rows());
  if (a.size() == 0) return out;
  auto svd = full_svd(a);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return out;
  double cut = std::max(tol.rank_cutoff(a.rows(), a.cols()) * sv(0), floor);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cut) break;
    out.noalias() += svd.matrixV().col(i) * (1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

ParallelSum parallel_sum(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::shape, "parallel_sum: shape mismatch");
  CMatrix s = a + b;
  ParallelSum ps;
  ps.value = a * pinv(s, tol) * b;
  // Drop directions that are rounding noise relative to the summands.
  if (ps.value.size()) {
    auto svd = full_svd(ps.value);
    const Eigen::VectorXd& sv = svd.singularValues();
    double cut = tol.rank_cutoff(a.rows(), a.cols()) * (spectral_norm(a) + spectral_norm(b));
    CMatrix kept = CMatrix::Zero(a.rows(), a.cols());
    for (Index i = 0; i < sv.size() && sv(i) > cut; ++i)
      kept.noalias() += svd.matrixU().col(i) * sv(i) * svd.matrixV().col(i).adjoint();
    ps.value = kept;
  }
  ps.in_ps = range_included(a, s, tol).ok() && range_included(a.adjoint(), s.adjoint(), tol).ok();
  return ps;
}

ClassVerdict is_hermitian(const CMatrix& a, const Tolerances& tol) {
  require_square(a, "is_hermitian");
  double scale = scale_of(a);
  double dev = spectral_norm(a - a.adjoint());
  if (dev > tol.herm * scale) return make(Status::outside, -dev, "not_hermitian");
  return make(Status::inside, 0.0, "ok");
}

namespace {

ClassVerdict eig_classify(const CMatrix& a, const Tolerances& tol, const char* what) {
  require_square(a, what);
  if (a.rows() == 0) return make(Status::inside, 0.0, "ok");
  double scale = scale_of(a);
  double dev = spectral_norm(a - a.adjoint());
  CMatrix h = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  if (dev > tol.herm * scale) return make(Status::outside, std::min(lmin, -dev), "not_hermitian");
  double thr = tol.psd * scale;
  if (lmin < -thr) return make(Status::outside, lmin, "negative_eigenvalue");
  if (lmin <= thr) return make(Status::boundary, lmin, "zero_eigenvalue");
  return make(Status::inside, lmin, "ok");
}

}  // namespace

ClassVerdict is_psd(const CMatrix& a, const Tolerances& tol) { return eig_classify(a, tol, "is_psd"); }

// Same thresholds as is_psd: a vanishing eigenvalue is the boundary for both,
// while PD "inside" needs λ_min above +tol_psd·scale.
ClassVerdict is_pd(const CMatrix& a, const Tolerances& tol) { return eig_classify(a, tol, "is_pd"); }

CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol) {
  ClassVerdict v = is_psd(a, tol);
  if (!v.ok()) throw Error(ErrorKind::precondition, "psd_sqrt: matrix is not positive semidefinite");
  if (a.rows() == 0) return a;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  Eigen::VectorXd ev = es.eigenvalues();
  double cut = tol.rank_cutoff(a.rows(), a.cols()) * std::max(0.0, ev.maxCoeff());
  for (Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix proj_range(const CMatrix& a, const Tolerances& tol) { return a * pinv(a, tol); }

CMatrix orthonormal_range_basis(const CMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) return CMatrix::Zero(a.rows(), 0);
  auto svd = full_svd(a);
  Index r = 0;
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() && sv(0) > 0.0) {
    double cut = tol.rank_cutoff(a.rows(), a.cols()) * sv(0);
    while (r < sv.size() && sv(r) > cut) ++r;
  }
  return svd.matrixU().leftCols(r);
}

ClassVerdict range_included(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::shape, "range_included: row count mismatch");
  if (a.size() == 0) return make(Status::inside, 0.0, "ok");
  CMatrix resid = a - b * (pinv(b, tol) * a);
  double r = spectral_norm(resid);
  if (r <= tol.range * scale_of(a)) return make(Status::inside, 0.0, "ok");
  return make(Status::outside, -r, "range_not_included");
}

ClassVerdict loewner_leq(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::shape, "loewner_leq: shape mismatch");
  return is_psd(b - a, tol);
}

ClassVerdict block_psd(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d,
                       const Tolerances& tol) {
  require_square(a, "block_psd");
  require_square(d, "block_psd");
  if (b.rows() != a.rows() || b.cols() != d.rows() || c.rows() != d.rows() || c.cols() != a.cols())
    throw Error(ErrorKind::shape, "block_psd: blocks are not conformable");
  ClassVerdict v = tag(is_psd(a, tol), "A");
  v = conjoin(v, tag(range_included(b, a, tol), "range_B"));
  double cdev = spectral_norm(c - b.adjoint());
  if (cdev > tol.herm * std::max({1.0, spectral_norm(b), spectral_norm(c)}))
    v = conjoin(v, make(Status::outside, -cdev, "C_not_B_adjoint"));
  v = conjoin(v, tag(is_psd(d - c * pinv(a, tol) * b, tol), "schur"));
  return v;
}

CMatrix proj_intersection_svd(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::shape, "proj_intersection: row count mismatch");
  CMatrix qa = orthonormal_range_basis(a, tol);
  CMatrix qb = orthonormal_range_basis(b, tol);
  CMatrix p = CMatrix::Zero(a.rows(), a.rows());
  if (qa.cols() == 0 || qb.cols() == 0) return p;
  // Principal vectors whose cosine is numerically 1 span the intersection.
  Eigen::JacobiSVD<CMatrix> svd(qa.adjoint() * qb, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cut = 1.0 - std::sqrt(tol.range);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < cut) break;
    Eigen::VectorXcd x = qa * svd.matrixU().col(i);
    p.noalias() += x * x.adjoint();
  }
  return p;
}

CMatrix proj_intersection(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  ParallelSum ps = parallel_sum(a, b, tol);
  if (ps.in_ps) return proj_range(ps.value, tol);
  return proj_intersection_svd(a, b, tol);
}

CMatrix proj_sum(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::shape, "proj_sum: row count mismatch");
  CMatrix ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return proj_range(ab, tol);
}

}  // namespace hmom
