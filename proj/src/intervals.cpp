#include "hmom/intervals.hpp"

#include "hmom/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hmom {

void require_F_nnd(const MomentSequence& seq, const char* what) {
  ClassVerdict v = is_F_nnd(seq);
  if (!v.ok())
    throw Error(ErrorKind::precondition,
                std::string(what) + ": sequence is not [alpha,beta]-Hausdorff nnd (" + v.detail + ")");
}

EndpointPair endpoint_pair(const MomentSequence& seq, int j) {
  if (j < 0 || j > seq.last_index()) throw Error(ErrorKind::range, "endpoint index out of range");
  MomentSequence p = seq.prefix(j);
  const auto& tol = seq.tol();
  int q = seq.q();
  double al = seq.alpha(), be = seq.beta();
  // Transformed moments can cancel to rounding noise; rank decisions use the parent scale.
  EndpointPair e;
  if (j % 2 == 0) {
    int k = j / 2;
    e.a = al * p[j] + theta(alpha_moments(p), q, k, tol, transform_scale(p, 1));
    e.b = be * p[j] - theta(beta_moments(p), q, k, tol, transform_scale(p, 1));
  } else {
    int k = (j - 1) / 2;
    e.a = theta(p.moments(), q, k + 1, tol, sequence_scale(p));
    e.b = -al * be * p[2 * k] + (al + be) * p[2 * k + 1] -
          theta(ab_moments(p), q, k, tol, transform_scale(p, 2));
  }
  e.a = hermitian_part(e.a);
  e.b = hermitian_part(e.b);
  return e;
}

namespace {

SectionInterval assemble(const MomentSequence& seq, int j, const EndpointPair& cur,
                         const EndpointPair* prev) {
  SectionInterval si;
  si.index = j;
  si.a = cur.a;
  si.b = cur.b;
  si.d = cur.b - cur.a;
  si.c = cur.a + 0.5 * si.d;
  double zero = seq.tol().psd * sequence_scale(seq);
  if (spectral_norm(si.d) <= zero) {
    // Collapsed interval: keep the midpoint, drop the rounding noise in d.
    si.a = si.b = si.c;
    si.d.setZero();
  }
  if (prev) {
    si.u = seq[j] - prev->a;
    si.o = prev->b - seq[j];
    if (spectral_norm(si.u) <= zero) si.u.setZero();
    if (spectral_norm(*si.o) <= zero) si.o->setZero();
  } else {
    si.u = seq[j];
  }
  si.reliable = is_F_nnd(seq.prefix(j)).ok();
  return si;
}

}  // namespace

SectionInterval endpoints(const MomentSequence& seq, int j) {
  EndpointPair cur = endpoint_pair(seq, j);
  if (j == 0) return assemble(seq, 0, cur, nullptr);
  EndpointPair prev = endpoint_pair(seq, j - 1);
  return assemble(seq, j, cur, &prev);
}

std::vector<SectionInterval> all_endpoints(const MomentSequence& seq) {
  std::vector<EndpointPair> pairs;
  for (int j = 0; j <= seq.last_index(); ++j) pairs.push_back(endpoint_pair(seq, j));
  std::vector<SectionInterval> out;
  for (int j = 0; j <= seq.last_index(); ++j)
    out.push_back(assemble(seq, j, pairs[j], j ? &pairs[j - 1] : nullptr));
  return out;
}

namespace {

ClassVerdict interval_route(const EndpointPair& e, const CMatrix& x, const Tolerances& tol) {
  return conjoin(tag(loewner_leq(e.a, x, tol), "above_a"), tag(loewner_leq(x, e.b, tol), "below_b"));
}

ClassVerdict direct_route(const MomentSequence& seq, const CMatrix& x, const Tolerances& tol) {
  return is_F_nnd(seq.with_tolerances(tol).appended(x));
}

}  // namespace

ClassVerdict membership(const MomentSequence& seq, const CMatrix& candidate) {
  if (candidate.rows() != seq.q() || candidate.cols() != seq.q())
    throw Error(ErrorKind::shape, "membership: candidate is not q x q");
  if (!all_finite(candidate)) throw Error(ErrorKind::argument, "membership: non-finite candidate");
  const auto& tol = seq.tol();
  if (!is_hermitian(candidate, tol).ok())
    throw Error(ErrorKind::argument, "membership: candidate is not Hermitian");
  require_F_nnd(seq, "membership");

  EndpointPair e = endpoint_pair(seq, seq.last_index());
  ClassVerdict vi = interval_route(e, candidate, tol);
  ClassVerdict vd = direct_route(seq, candidate, tol);
  if (vi.status == vd.status) return vi;
  if (vi.status == Status::boundary) return vi;
  if (vd.status == Status::boundary) {
    vd.detail = "direct:" + vd.detail;
    return vd;
  }
  // One route says inside, the other outside; tolerate it only within twice the tolerance.
  Tolerances wide = tol;
  wide.psd = std::min(0.5, 2.0 * tol.psd);
  wide.range = std::min(0.5, 2.0 * tol.range);
  ClassVerdict wi = interval_route(e, candidate, wide);
  ClassVerdict wd = direct_route(seq, candidate, wide);
  if (wi.status == Status::boundary || wd.status == Status::boundary || wi.status == wd.status) {
    ClassVerdict b = vi.status == Status::outside ? vi : vd;
    b.status = Status::boundary;
    b.detail = "routes_disagree_within_tolerance";
    return b;
  }
  throw Error(ErrorKind::inconsistent,
              "membership: interval test says " + std::string(to_string(vi.status)) +
                  " but the extended sequence test says " + std::string(to_string(vd.status)));
}

double ParallelIdentityReport::max_residual() const {
  double r = d0_residual;
  for (double x : residuals) r = std::max(r, x);
  return r;
}

ParallelIdentityReport verify_parallel_identity(const MomentSequence& seq) {
  require_F_nnd(seq, "verify_parallel_identity");
  const auto& tol = seq.tol();
  auto iv = all_endpoints(seq);
  double w = seq.width();
  ParallelIdentityReport r;
  r.d0_residual = spectral_norm(iv[0].d - w * seq[0]) / std::max(1.0, spectral_norm(iv[0].d));
  for (std::size_t k = 1; k < iv.size(); ++k) {
    ParallelSum ps = parallel_sum(iv[k].u, *iv[k].o, tol);
    r.all_in_ps = r.all_in_ps && ps.in_ps;
    r.residuals.push_back(spectral_norm(iv[k].d - w * ps.value) /
                          std::max(1.0, spectral_norm(iv[k].d)));
  }
  return r;
}

CMatrix length_recursion(const SectionInterval& sj, const CMatrix& next, double width,
                         const Tolerances& tol) {
  CMatrix dev = next - sj.c;
  return (width / 4.0) * sj.d - width * dev * pinv(sj.d, tol) * dev;
}

CMatrix length_recursion(const MomentSequence& seq, int j) {
  if (j < 0 || j + 1 > seq.last_index())
    throw Error(ErrorKind::range, "length_recursion: needs s_" + std::to_string(j + 1));
  require_F_nnd(seq, "length_recursion");
  return length_recursion(endpoints(seq, j), seq[j + 1], seq.width(), seq.tol());
}

ClassVerdict is_completely_degenerate(const MomentSequence& seq) {
  require_F_nnd(seq, "is_completely_degenerate");
  EndpointPair e = endpoint_pair(seq, seq.last_index());
  double nd = spectral_norm(e.b - e.a);
  double thr = seq.tol().psd * sequence_scale(seq);
  ClassVerdict v;
  if (nd <= thr) {
    v.witness_eig = nd;
    return v;
  }
  v.status = Status::outside;
  v.witness_eig = -nd;
  v.detail = "interval_length_nonzero";
  v.failing_index = seq.last_index();
  return v;
}

ClassVerdict is_contraction(const CMatrix& k, const Tolerances& tol) {
  if (k.rows() != k.cols()) throw Error(ErrorKind::shape, "contraction must be square");
  ClassVerdict v = tag(is_psd(k, tol), "K");
  return conjoin(v, tag(is_psd(CMatrix::Identity(k.rows(), k.cols()) - k, tol), "I_minus_K"));
}

CMatrix ball_point(const CMatrix& a, const CMatrix& d, const CMatrix& k, const Tolerances& tol) {
  if (a.rows() != d.rows() || k.rows() != d.rows() || k.cols() != d.cols())
    throw Error(ErrorKind::shape, "ball_point: shape mismatch");
  CMatrix r = psd_sqrt(d, tol);
  return a + r * k * r;
}

CMatrix ball_coordinates(const CMatrix& a, const CMatrix& d, const CMatrix& x,
                         const Tolerances& tol) {
  if (a.rows() != d.rows() || x.rows() != d.rows() || x.cols() != d.cols())
    throw Error(ErrorKind::shape, "ball_coordinates: shape mismatch");
  CMatrix rp = pinv(psd_sqrt(d, tol), tol);
  return rp * (x - a) * rp;
}

}  // namespace hmom
