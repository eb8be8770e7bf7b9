#include "hmom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hmom {

std::optional<Suite> parse_suite(const std::string& text) {
  if (text == "parallel") return Suite::parallel;
  if (text == "recursion") return Suite::recursion;
  if (text == "reflection") return Suite::reflection;
  if (text == "ranges") return Suite::ranges;
  if (text == "ordering") return Suite::ordering;
  if (text == "hankel-identities") return Suite::hankel_identities;
  return std::nullopt;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::parallel: return "parallel";
    case Suite::recursion: return "recursion";
    case Suite::reflection: return "reflection";
    case Suite::ranges: return "ranges";
    case Suite::ordering: return "ordering";
    case Suite::hankel_identities: return "hankel-identities";
  }
  return "parallel";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{Suite::parallel, Suite::recursion,  Suite::reflection,
                                    Suite::ranges,   Suite::ordering,   Suite::hankel_identities};
  return s;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

double SuiteReport::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

namespace {

// Accumulates the worst residual per named check, in first-seen order.
class Collector {
 public:
  void add(const std::string& name, double residual, double tolerance, int index) {
    auto it = pos_.find(name);
    if (it == pos_.end()) {
      pos_[name] = checks_.size();
      checks_.push_back(Check{name, 0.0, tolerance, std::nullopt, 0});
      it = pos_.find(name);
    }
    Check& c = checks_[it->second];
    ++c.evaluated;
    if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
    if (!c.worst_index || residual > c.residual) {
      c.residual = residual;
      c.worst_index = index;
    }
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::map<std::string, std::size_t> pos_;
  std::vector<Check> checks_;
};

double rel(const CMatrix& diff, const CMatrix& ref) {
  return spectral_norm(diff) / std::max(1.0, spectral_norm(ref));
}

// Negative part of λ_min(B - A), relative to the larger operand.
double order_violation(const CMatrix& lo, const CMatrix& hi) {
  CMatrix h = hermitian_part(hi - lo);
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  double scale = std::max({1.0, spectral_norm(lo), spectral_norm(hi)});
  return std::max(0.0, -es.eigenvalues()(0)) / scale;
}

double psd_violation(const CMatrix& a) { return order_violation(CMatrix::Zero(a.rows(), a.cols()), a); }

void parallel_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  auto pr = verify_parallel_identity(seq);
  out.add("d0_equals_width_s0", pr.d0_residual, opt.identity_tol, 0);
  for (std::size_t k = 0; k < pr.residuals.size(); ++k)
    out.add("d_equals_width_parallel_sum", pr.residuals[k], opt.identity_tol, static_cast<int>(k + 1));
  auto iv = all_endpoints(seq);
  double w = seq.width();
  const auto& tol = seq.tol();
  for (std::size_t j = 1; j < iv.size(); ++j) {
    CMatrix dp = pinv(iv[j - 1].d, tol);
    int idx = static_cast<int>(j);
    out.add("d_equals_u_dpinv_o", rel(iv[j].d - w * iv[j].u * dp * *iv[j].o, iv[j].d),
            opt.identity_tol, idx);
    out.add("d_equals_o_dpinv_u", rel(iv[j].d - w * *iv[j].o * dp * iv[j].u, iv[j].d),
            opt.identity_tol, idx);
  }
}

void recursion_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  require_F_nnd(seq, "recursion suite");
  const auto& tol = seq.tol();
  auto iv = all_endpoints(seq);
  double w = seq.width();
  int m = seq.last_index();
  for (int j = 0; j + 1 <= m; ++j) {
    const auto& cur = iv[static_cast<std::size_t>(j)];
    const auto& nxt = iv[static_cast<std::size_t>(j + 1)];
    CMatrix rhs = length_recursion(cur, seq[j + 1], w, tol);
    out.add("length_recursion", rel(nxt.d - rhs, cur.d), opt.identity_tol, j + 1);
    out.add("length_monotone", order_violation(nxt.d, (w / 4.0) * cur.d), opt.order_tol, j + 1);
  }

  // Recursive Θ formulas against the direct Schur chains.
  if (m < 1) return;
  auto sa = alpha_moments(seq);
  auto sb = beta_moments(seq);
  int q = seq.q();
  double al = seq.alpha(), be = seq.beta();
  CMatrix I = CMatrix::Identity(q, q);
  int nmax = m / 2;
  SchurChain s_ch = schur_chain(seq.moments(), q, nmax, tol, sequence_scale(seq));
  int na = (m - 1) / 2;
  SchurChain a_ch = schur_chain(sa, q, na, tol, transform_scale(seq, 1));
  SchurChain b_ch = schur_chain(sb, q, na, tol, transform_scale(seq, 1));
  for (int n = 1; 2 * n - 1 <= m; ++n) {
    CMatrix th = theta(seq.moments(), q, n, tol, sequence_scale(seq));
    const CMatrix& Lp = s_ch.L[n - 1];
    const CMatrix& Mp = s_ch.M[n - 1];
    CMatrix lp_pinv = pinv(Lp, tol);
    CMatrix via_a = al * seq[2 * n - 1] + a_ch.M[n - 1] + a_ch.L[n - 1] * lp_pinv * (seq[2 * n - 1] - Mp);
    CMatrix via_b =
        be * seq[2 * n - 1] - (b_ch.M[n - 1] + b_ch.L[n - 1] * lp_pinv * (seq[2 * n - 1] - Mp));
    out.add("theta_recursive_alpha", rel(th - via_a, th), opt.identity_tol, n);
    out.add("theta_recursive_beta", rel(th - via_b, th), opt.identity_tol, n);
    if (2 * n > m) continue;
    const CMatrix& Ln = s_ch.L[n];
    const CMatrix& Mn = s_ch.M[n];
    CMatrix tha = theta(sa, q, n, tol, transform_scale(seq, 1));
    CMatrix thb = theta(sb, q, n, tol, transform_scale(seq, 1));
    CMatrix rec_a = -al * seq[2 * n] + Mn +
                    Ln * (al * I + pinv(a_ch.L[n - 1], tol) * (sa[2 * n - 1] - a_ch.M[n - 1]));
    CMatrix rec_b = be * seq[2 * n] -
                    (Mn + Ln * (be * I + pinv(b_ch.L[n - 1], tol) * (sb[2 * n - 1] - b_ch.M[n - 1])));
    out.add("theta_alpha_recursive", rel(tha - rec_a, tha), opt.identity_tol, n);
    out.add("theta_beta_recursive", rel(thb - rec_b, thb), opt.identity_tol, n);
  }
}

void reflection_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  MomentSequence r = reflect_class_dual(seq);
  int q = seq.q();
  int m = seq.last_index();
  for (int n = 0; 2 * n <= m; ++n) {
    StructuralMatrices st = structural(q, n);
    HankelView h = build_hankel(seq, n);
    HankelView hr = build_hankel(r, n);
    out.add("reflect_H", rel(hr.H - st.J * h.H * st.J, h.H), opt.identity_tol, n);
    if (h.K) out.add("reflect_K", rel(*hr.K + st.J * *h.K * st.J, *h.K), opt.identity_tol, n);
    if (h.G) out.add("reflect_G", rel(*hr.G - st.J * *h.G * st.J, *h.G), opt.identity_tol, n);
    double jdev = spectral_norm(st.J * st.J - CMatrix::Identity(st.J.rows(), st.J.cols())) +
                  spectral_norm(st.J - st.J.adjoint());
    out.add("J_involution", jdev, opt.identity_tol, n);
  }
  SchurChain c = schur_chain(seq);
  SchurChain cr = schur_chain(r);
  for (std::size_t n = 0; n < c.theta.size(); ++n) {
    int idx = static_cast<int>(n);
    out.add("reflect_theta", rel(cr.theta[n] - c.theta[n], c.theta[n]), opt.identity_tol, idx);
    out.add("reflect_M", rel(cr.M[n] + c.M[n], c.M[n]), opt.identity_tol, idx);
    out.add("reflect_L", rel(cr.L[n] - c.L[n], c.L[n]), opt.identity_tol, idx);
  }
  for (int ell = 0; ell <= m; ++ell) {
    ClassVerdict f = is_F_nnd(seq.prefix(ell));
    ClassVerdict fr = is_F_nnd(r.prefix(ell));
    out.add("reflect_F_verdict", f.status == fr.status ? 0.0 : 1.0, 0.0, ell);
  }
  MomentSequence rr = reflect_class_dual(r);
  double inv = 0.0;
  for (int j = 0; j <= m; ++j) inv = std::max(inv, spectral_norm(rr[j] - seq[j]));
  inv += std::abs(rr.alpha() - seq.alpha()) + std::abs(rr.beta() - seq.beta());
  out.add("reflect_involution", inv, 0.0, m);
}

// Singular directions below floor are rounding noise of the interval data.
CMatrix denoise(const CMatrix& a, double floor) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  const Eigen::VectorXd& sv = svd.singularValues();
  for (Index i = 0; i < sv.size() && sv(i) > floor; ++i)
    out.noalias() += svd.matrixU().col(i) * sv(i) * svd.matrixV().col(i).adjoint();
  return out;
}

void ranges_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  require_F_nnd(seq, "ranges suite");
  const auto& tol = seq.tol();
  auto iv = all_endpoints(seq);
  double floor = tol.psd * sequence_scale(seq);
  for (auto& si : iv) {
    si.d = denoise(si.d, floor);
    si.u = denoise(si.u, floor);
    if (si.o) si.o = denoise(*si.o, floor);
  }
  std::size_t m = iv.size() - 1;
  for (std::size_t j = 0; j <= m; ++j) {
    CMatrix pd = proj_range(iv[j].d, tol);
    int idx = static_cast<int>(j);
    if (j >= 1) {
      CMatrix pi = proj_intersection_svd(iv[j].u, *iv[j].o, tol);
      out.add("range_d_is_intersection", spectral_norm(pd - pi), opt.projector_tol, idx);
    }
    if (j + 1 <= m) {
      CMatrix ps = proj_sum(iv[j + 1].u, *iv[j + 1].o, tol);
      out.add("range_d_is_sum", spectral_norm(pd - ps), opt.projector_tol, idx);
    }
  }
}

void ordering_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  require_F_nnd(seq, "ordering suite");
  auto iv = all_endpoints(seq);
  double al = seq.alpha(), be = seq.beta();
  int q = seq.q();
  for (const auto& si : iv) {
    int j = si.index;
    CMatrix lo, hi;
    if (j % 2 == 0) {
      lo = al * seq[j];
      hi = be * seq[j];
    } else {
      lo = CMatrix::Zero(q, q);
      hi = -al * be * seq[j - 1] + (al + be) * seq[j];
    }
    double v = std::max({order_violation(lo, si.a), order_violation(si.a, si.c),
                         order_violation(si.c, si.b), order_violation(si.b, hi)});
    out.add("endpoint_chain", v, opt.order_tol, j);
    out.add("u_psd", psd_violation(si.u), opt.order_tol, j);
    if (si.o) out.add("o_psd", psd_violation(*si.o), opt.order_tol, j);
    out.add("d_psd", psd_violation(si.d), opt.order_tol, j);
    out.add("center_is_midpoint",
            rel((si.c - si.a) - 0.5 * si.d, si.d) + rel((si.b - si.c) - 0.5 * si.d, si.d),
            opt.identity_tol, j);
  }
  // Schur complements of the chains stay PSD.
  const auto& tol = seq.tol();
  int q2 = seq.q();
  auto chk = [&](const std::vector<CMatrix>& s, const char* name, int degree) {
    if (s.empty()) return;
    SchurChain c = schur_chain(s, q2, (static_cast<int>(s.size()) - 1) / 2, tol, transform_scale(seq, degree));
    for (std::size_t n = 0; n < c.L.size(); ++n)
      out.add(name, psd_violation(c.L[n]), opt.order_tol, static_cast<int>(n));
  };
  chk(seq.moments(), "L_psd", 0);
  chk(alpha_moments(seq), "L_alpha_psd", 1);
  chk(beta_moments(seq), "L_beta_psd", 1);
  chk(ab_moments(seq), "L_ab_psd", 2);
}

void hankel_suite(const MomentSequence& seq, const VerifyOptions& opt, Collector& out) {
  const auto& tol = seq.tol();
  int m = seq.last_index();
  int q = seq.q();
  double al = seq.alpha(), be = seq.beta(), w = seq.width();
  auto sa = alpha_moments(seq);
  auto sb = beta_moments(seq);
  auto sc = ab_moments(seq);

  for (int j = 0; j + 1 <= m; ++j) {
    out.add("split_moment", rel(w * seq[j] - (sa[j] + sb[j]), seq[j]), opt.identity_tol, j);
    out.add("split_next_moment", rel(w * seq[j + 1] - (be * sa[j] + al * sb[j]), seq[j + 1]),
            opt.identity_tol, j);
  }
  for (int j = 0; j + 2 <= m; ++j) {
    out.add("ab_from_beta", rel(sc[j] - (-al * sb[j] + sb[j + 1]), sc[j]), opt.identity_tol, j);
    out.add("ab_from_alpha", rel(sc[j] - (be * sa[j] - sa[j + 1]), sc[j]), opt.identity_tol, j);
  }

  for (int n = 0; 2 * n + 1 <= m; ++n) {
    CMatrix H = hankel_block(seq.moments(), 0, n);
    CMatrix K = hankel_block(seq.moments(), 1, n);
    CMatrix Ha = hankel_block(sa, 0, n);
    CMatrix Hb = hankel_block(sb, 0, n);
    out.add("Ha_linear", rel(Ha - (-al * H + K), Ha), opt.identity_tol, n);
    out.add("Hb_linear", rel(Hb - (be * H - K), Hb), opt.identity_tol, n);
    out.add("H_split", rel(w * H - (Ha + Hb), H), opt.identity_tol, n);
    out.add("K_split", rel(w * K - (be * Ha + al * Hb), K), opt.identity_tol, n);
    if (2 * n + 2 <= m) {
      CMatrix G = hankel_block(seq.moments(), 2, n);
      CMatrix Hc = hankel_block(sc, 0, n);
      out.add("Hab_linear", rel(Hc - (-al * be * H + (al + be) * K - G), Hc), opt.identity_tol, n);
      StructuralMatrices st = structural(q, n + 1);
      CMatrix H1 = hankel_block(seq.moments(), 0, n + 1);
      CMatrix ta = st.Nabla - al * st.Delta;
      CMatrix tb = be * st.Delta - st.Nabla;
      out.add("Ha_factorization", rel(w * Ha - (ta.adjoint() * H1 * ta + Hc), Ha), opt.identity_tol, n);
      out.add("Hb_factorization", rel(w * Hb - (tb.adjoint() * H1 * tb + Hc), Hb), opt.identity_tol, n);
    }
  }

  // The remaining identities need the class structure.
  if (!is_F_nnd(seq).ok()) return;
  for (int n = 1; 2 * n + 1 <= m; ++n) {
    CMatrix Ha = hankel_block(sa, 0, n);
    CMatrix Hb = hankel_block(sb, 0, n);
    CMatrix Hc = hankel_block(sc, 0, n - 1);
    StructuralMatrices st = structural(q, n);
    CMatrix rhs = w * st.Delta.adjoint() * parallel_sum(Ha, Hb, tol).value * st.Delta;
    out.add("Hab_parallel_sum", rel(Hc - rhs, Hc), opt.identity_tol, n);
  }

  auto iv = all_endpoints(seq);
  SchurChain cs = schur_chain(seq);
  for (std::size_t n = 0; n < cs.L.size(); ++n)
    out.add("u_even_is_L", rel(iv[2 * n].u - cs.L[n], cs.L[n]), opt.identity_tol, static_cast<int>(2 * n));
  if (!sa.empty()) {
    SchurChain ca = schur_chain(sa, q, (static_cast<int>(sa.size()) - 1) / 2, tol, transform_scale(seq, 1));
    SchurChain cb = schur_chain(sb, q, (static_cast<int>(sb.size()) - 1) / 2, tol, transform_scale(seq, 1));
    for (std::size_t n = 0; n < ca.L.size(); ++n) {
      int j = static_cast<int>(2 * n + 1);
      out.add("u_odd_is_L_alpha", rel(iv[j].u - ca.L[n], ca.L[n]), opt.identity_tol, j);
      out.add("o_odd_is_L_beta", rel(*iv[j].o - cb.L[n], cb.L[n]), opt.identity_tol, j);
    }
  }
  if (!sc.empty()) {
    SchurChain cc = schur_chain(sc, q, (static_cast<int>(sc.size()) - 1) / 2, tol, transform_scale(seq, 2));
    for (std::size_t n = 0; n < cc.L.size(); ++n) {
      int j = static_cast<int>(2 * n + 2);
      out.add("o_even_is_L_ab", rel(*iv[j].o - cc.L[n], cc.L[n]), opt.identity_tol, j);
    }
  }
  for (std::size_t j = 0; j + 1 < iv.size(); ++j)
    out.add("d_is_u_plus_o", rel(iv[j].d - (iv[j + 1].u + *iv[j + 1].o), iv[j].d), opt.identity_tol,
            static_cast<int>(j));
}

}  // namespace

SuiteReport run_suite(const MomentSequence& seq, Suite suite, const VerifyOptions& opt) {
  Collector c;
  switch (suite) {
    case Suite::parallel: parallel_suite(seq, opt, c); break;
    case Suite::recursion: recursion_suite(seq, opt, c); break;
    case Suite::reflection: reflection_suite(seq, opt, c); break;
    case Suite::ranges: ranges_suite(seq, opt, c); break;
    case Suite::ordering: ordering_suite(seq, opt, c); break;
    case Suite::hankel_identities: hankel_suite(seq, opt, c); break;
  }
  return SuiteReport{suite, c.take()};
}

}  // namespace hmom
