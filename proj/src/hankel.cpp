#include "hmom/hankel.hpp"

#include <cmath>
#include <string>

namespace hmom {

MomentSequence::MomentSequence(int q, double alpha, double beta, std::vector<CMatrix> moments,
                               Tolerances tol)
    : q_(q), alpha_(alpha), beta_(beta), moments_(std::move(moments)), tol_(tol) {
  if (q_ < 1) throw Error(ErrorKind::shape, "block size q must be positive");
  if (!std::isfinite(alpha_) || !std::isfinite(beta_) || !(alpha_ < beta_))
    throw Error(ErrorKind::argument, "interval requires finite alpha < beta");
  if (moments_.empty()) throw Error(ErrorKind::shape, "a sequence needs at least s_0");
  for (std::size_t j = 0; j < moments_.size(); ++j) {
    if (moments_[j].rows() != q_ || moments_[j].cols() != q_)
      throw Error(ErrorKind::shape, "moment " + std::to_string(j) + " is not q x q");
    if (!all_finite(moments_[j]))
      throw Error(ErrorKind::argument, "moment " + std::to_string(j) + " has non-finite entries");
  }
  tol_.validate();
}

const CMatrix& MomentSequence::operator[](int j) const {
  if (j < 0 || j > last_index())
    throw Error(ErrorKind::range, "moment index " + std::to_string(j) + " out of range");
  return moments_[static_cast<std::size_t>(j)];
}

MomentSequence MomentSequence::prefix(int ell) const {
  if (ell < 0 || ell > last_index()) throw Error(ErrorKind::range, "prefix index out of range");
  return with_moments({moments_.begin(), moments_.begin() + ell + 1});
}

MomentSequence MomentSequence::appended(const CMatrix& next) const {
  auto m = moments_;
  m.push_back(next);
  return with_moments(std::move(m));
}

MomentSequence MomentSequence::with_moments(std::vector<CMatrix> moments) const {
  return MomentSequence(q_, alpha_, beta_, std::move(moments), tol_);
}

MomentSequence MomentSequence::with_interval(double alpha, double beta) const {
  return MomentSequence(q_, alpha, beta, moments_, tol_);
}

MomentSequence MomentSequence::with_tolerances(const Tolerances& tol) const {
  return MomentSequence(q_, alpha_, beta_, moments_, tol);
}

namespace {

Index block_size(const std::vector<CMatrix>& s) {
  if (s.empty()) throw Error(ErrorKind::shape, "empty moment list");
  return s.front().rows();
}

void need(const std::vector<CMatrix>& s, int index, const char* what) {
  if (index < 0 || index >= static_cast<int>(s.size()))
    throw Error(ErrorKind::range, std::string(what) + ": needs moment s_" + std::to_string(index));
}

}  // namespace

CMatrix hankel_block(const std::vector<CMatrix>& s, int offset, int n) {
  if (n < 0) throw Error(ErrorKind::range, "hankel_block: negative order");
  need(s, 2 * n + offset, "hankel_block");
  Index q = block_size(s);
  CMatrix h(q * (n + 1), q * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) h.block(j * q, k * q, q, q) = s[j + k + offset];
  return h;
}

CMatrix y_block(const std::vector<CMatrix>& s, int l, int m) {
  Index q = block_size(s);
  if (l > m) return CMatrix(0, q);
  need(s, m, "y_block");
  need(s, l, "y_block");
  CMatrix y(q * (m - l + 1), q);
  for (int j = l; j <= m; ++j) y.block((j - l) * q, 0, q, q) = s[j];
  return y;
}

CMatrix z_block(const std::vector<CMatrix>& s, int l, int m) {
  Index q = block_size(s);
  if (l > m) return CMatrix(q, 0);
  need(s, m, "z_block");
  need(s, l, "z_block");
  CMatrix z(q, q * (m - l + 1));
  for (int j = l; j <= m; ++j) z.block(0, (j - l) * q, q, q) = s[j];
  return z;
}

HankelView build_hankel(const MomentSequence& seq, int n) {
  if (n < 0 || 2 * n > seq.last_index())
    throw Error(ErrorKind::range, "build_hankel: H_" + std::to_string(n) + " needs s_" +
                                      std::to_string(2 * n));
  HankelView v;
  v.n = n;
  v.H = hankel_block(seq.moments(), 0, n);
  if (2 * n + 1 <= seq.last_index()) v.K = hankel_block(seq.moments(), 1, n);
  if (2 * n + 2 <= seq.last_index()) v.G = hankel_block(seq.moments(), 2, n);
  return v;
}

double sequence_scale(const MomentSequence& seq) {
  double s = 1.0;
  for (const auto& m : seq.moments()) s = std::max(s, spectral_norm(m));
  return s;
}

CMatrix theta(const std::vector<CMatrix>& s, int q, int n, const Tolerances& tol) {
  return theta(s, q, n, tol, 0.0);
}

CMatrix theta(const std::vector<CMatrix>& s, int q, int n, const Tolerances& tol, double ref_scale) {
  if (n < 0) throw Error(ErrorKind::range, "theta: negative index");
  if (n == 0) return CMatrix::Zero(q, q);
  need(s, 2 * n - 1, "theta");
  Index dim = static_cast<Index>(q) * n;
  CMatrix hp = pinv(hankel_block(s, 0, n - 1), tol, tol.rank_cutoff(dim, dim) * ref_scale);
  return z_block(s, n, 2 * n - 1) * hp * y_block(s, n, 2 * n - 1);
}

SchurChain schur_chain(const std::vector<CMatrix>& s, int q, int upto_n, const Tolerances& tol,
                       double ref_scale) {
  if (upto_n < 0 || 2 * upto_n >= static_cast<int>(s.size()))
    throw Error(ErrorKind::range, "schur_chain: order " + std::to_string(upto_n) + " needs s_" +
                                      std::to_string(2 * upto_n));
  SchurChain c;
  c.theta.push_back(CMatrix::Zero(q, q));
  c.M.push_back(CMatrix::Zero(q, q));
  c.L.push_back(s[0]);
  for (int n = 1; n <= upto_n; ++n) {
    CMatrix h = hankel_block(s, 0, n - 1);
    Index dim = static_cast<Index>(q) * n;
    CMatrix hp = pinv(h, tol, tol.rank_cutoff(dim, dim) * ref_scale);
    CMatrix z = z_block(s, n, 2 * n - 1);
    CMatrix y = y_block(s, n, 2 * n - 1);
    if (!range_included(y, h, tol).ok()) {
      c.range_warning = true;
      c.warning_indices.push_back(n);
    }
    CMatrix th = z * hp * y;
    c.M.push_back(z * hp * y_block(s, n + 1, 2 * n));
    c.L.push_back(s[2 * n] - th);
    c.theta.push_back(std::move(th));
  }
  return c;
}

SchurChain schur_chain(const MomentSequence& seq, int upto_n) {
  return schur_chain(seq.moments(), seq.q(), upto_n, seq.tol(), sequence_scale(seq));
}

SchurChain schur_chain(const MomentSequence& seq) {
  return schur_chain(seq, seq.last_index() / 2);
}

StructuralMatrices structural(int q, int n) {
  if (q < 0 || n < 0) throw Error(ErrorKind::argument, "structural: negative size");
  StructuralMatrices st;
  Index dim = static_cast<Index>(q) * (n + 1);
  Index nq = static_cast<Index>(q) * n;
  st.J = CMatrix::Zero(dim, dim);
  for (int j = 0; j <= n; ++j)
    st.J.block(j * q, j * q, q, q) = CMatrix::Identity(q, q) * (j % 2 == 0 ? 1.0 : -1.0);
  st.Delta = CMatrix::Zero(dim, nq);
  st.Delta.topRows(nq) = CMatrix::Identity(nq, nq);
  st.Nabla = CMatrix::Zero(dim, nq);
  st.Nabla.bottomRows(nq) = CMatrix::Identity(nq, nq);
  return st;
}

}  // namespace hmom
