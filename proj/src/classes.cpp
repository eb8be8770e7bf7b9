#include "hmom/classes.hpp"

#include <algorithm>
#include <cmath>

namespace hmom {

namespace {

ClassVerdict psd_or_pd(const CMatrix& a, const Tolerances& tol, bool strict) {
  return strict ? is_pd(a, tol) : is_psd(a, tol);
}

// Extendability is a set membership question: a PSD face still belongs to the set,
// so only a violated layer carries over.
ClassVerdict membership_only(ClassVerdict v) {
  if (v.status == Status::boundary) {
    v.status = Status::inside;
    v.detail = "ok";
    v.failing_index.reset();
  }
  return v;
}

std::vector<CMatrix> schur_L(const std::vector<CMatrix>& s, int q, int n, const Tolerances& tol,
                             double ref_scale) {
  return schur_chain(s, q, n, tol, ref_scale).L;
}

// Shared body of the 𝓚 and 𝓛 tests; `shifted` is s_α or s_β.
ClassVerdict stieltjes(const MomentSequence& seq, const std::vector<CMatrix>& shifted,
                       const char* name) {
  const auto& tol = seq.tol();
  int m = seq.last_index();
  const auto& s = seq.moments();
  if (m % 2 == 1) {
    int n = (m - 1) / 2;
    ClassVerdict v = tag(is_psd(hankel_block(s, 0, n), tol), "H", n);
    return conjoin(v, tag(is_psd(hankel_block(shifted, 0, n), tol), name, n));
  }
  int n = m / 2;
  ClassVerdict v = tag(is_psd(hankel_block(s, 0, n), tol), "H", n);
  if (n >= 1) v = conjoin(v, tag(is_psd(hankel_block(shifted, 0, n - 1), tol), name, n - 1));
  return v;
}

ClassVerdict stieltjes_extendable(const MomentSequence& seq, const std::vector<CMatrix>& shifted,
                                  const char* name) {
  ClassVerdict v = membership_only(stieltjes(seq, shifted, name));
  int m = seq.last_index();
  if (m == 0 || !v.ok()) return v;
  const auto& tol = seq.tol();
  int q = seq.q();
  if (m % 2 == 1) {
    int n = (m - 1) / 2;
    auto L = schur_L(seq.moments(), q, n, tol, sequence_scale(seq));
    auto Ls = schur_L(shifted, q, n, tol, transform_scale(seq, 1));
    return conjoin(v, tag(range_included(Ls[n], L[n], tol), std::string("L_") + name, n));
  }
  int n = m / 2;
  auto L = schur_L(seq.moments(), q, n, tol, sequence_scale(seq));
  auto Ls = schur_L(shifted, q, n - 1, tol, transform_scale(seq, 1));
  return conjoin(v, tag(range_included(L[n], Ls[n - 1], tol), "L", n));
}

ClassVerdict hausdorff(const MomentSequence& seq, bool strict) {
  const auto& tol = seq.tol();
  int m = seq.last_index();
  if (m % 2 == 1) {
    int n = (m - 1) / 2;
    ClassVerdict v = tag(psd_or_pd(hankel_block(alpha_moments(seq), 0, n), tol, strict), "Ha", n);
    return conjoin(v, tag(psd_or_pd(hankel_block(beta_moments(seq), 0, n), tol, strict), "Hb", n));
  }
  int n = m / 2;
  ClassVerdict v = tag(psd_or_pd(hankel_block(seq.moments(), 0, n), tol, strict), "H", n);
  if (n >= 1)
    v = conjoin(v, tag(psd_or_pd(hankel_block(ab_moments(seq), 0, n - 1), tol, strict), "Hab",
                       n - 1));
  return v;
}

}  // namespace

double transform_scale(const MomentSequence& seq, int degree) {
  double r = 1.0 + std::max(std::abs(seq.alpha()), std::abs(seq.beta()));
  return std::pow(r, degree) * sequence_scale(seq);
}

std::vector<CMatrix> alpha_moments(const MomentSequence& seq) {
  std::vector<CMatrix> out;
  for (int j = 0; j + 1 <= seq.last_index(); ++j) out.push_back(-seq.alpha() * seq[j] + seq[j + 1]);
  return out;
}

std::vector<CMatrix> beta_moments(const MomentSequence& seq) {
  std::vector<CMatrix> out;
  for (int j = 0; j + 1 <= seq.last_index(); ++j) out.push_back(seq.beta() * seq[j] - seq[j + 1]);
  return out;
}

std::vector<CMatrix> ab_moments(const MomentSequence& seq) {
  std::vector<CMatrix> out;
  double a = seq.alpha(), b = seq.beta();
  for (int j = 0; j + 2 <= seq.last_index(); ++j)
    out.push_back(-a * b * seq[j] + (a + b) * seq[j + 1] - seq[j + 2]);
  return out;
}

MomentSequence alpha_transform(const MomentSequence& seq) {
  if (seq.last_index() < 1) throw Error(ErrorKind::range, "s_alpha needs m >= 1");
  return seq.with_moments(alpha_moments(seq));
}

MomentSequence beta_transform(const MomentSequence& seq) {
  if (seq.last_index() < 1) throw Error(ErrorKind::range, "s_beta needs m >= 1");
  return seq.with_moments(beta_moments(seq));
}

MomentSequence ab_transform(const MomentSequence& seq) {
  if (seq.last_index() < 2) throw Error(ErrorKind::range, "s_alphabeta needs m >= 2");
  return seq.with_moments(ab_moments(seq));
}

DerivedSequences derive(const MomentSequence& seq) {
  DerivedSequences d{std::nullopt, std::nullopt, std::nullopt, reflect_class_dual(seq)};
  if (seq.last_index() >= 1) {
    d.s_alpha = alpha_transform(seq);
    d.s_beta = beta_transform(seq);
  }
  if (seq.last_index() >= 2) d.s_c = ab_transform(seq);
  return d;
}

MomentSequence reflect_class_dual(const MomentSequence& seq) {
  std::vector<CMatrix> r;
  for (int j = 0; j <= seq.last_index(); ++j) r.push_back(j % 2 == 0 ? seq[j] : CMatrix(-seq[j]));
  return MomentSequence(seq.q(), -seq.beta(), -seq.alpha(), std::move(r), seq.tol());
}

ClassVerdict is_hankel_nnd(const MomentSequence& seq, int n) {
  return tag(is_psd(build_hankel(seq, n).H, seq.tol()), "H", n);
}

ClassVerdict is_hankel_pd(const MomentSequence& seq, int n) {
  return tag(is_pd(build_hankel(seq, n).H, seq.tol()), "H", n);
}

ClassVerdict is_hankel_nnd_extendable(const MomentSequence& seq) {
  const auto& tol = seq.tol();
  const auto& s = seq.moments();
  int m = seq.last_index();
  if (m == 0) return membership_only(tag(is_psd(s[0], tol), "H", 0));
  if (m % 2 == 1) {
    int n = (m - 1) / 2;
    CMatrix h = hankel_block(s, 0, n);
    ClassVerdict v = membership_only(tag(is_psd(h, tol), "H", n));
    v = conjoin(v, tag(is_hermitian(s[m], tol), "s_last", m));
    return conjoin(v, tag(range_included(y_block(s, n + 1, 2 * n + 1), h, tol), "y", n));
  }
  int n = m / 2;
  ClassVerdict v = membership_only(tag(is_psd(hankel_block(s, 0, n), tol), "H", n));
  if (!v.ok()) return v;
  ClassVerdict by_block =
      tag(range_included(y_block(s, n + 1, 2 * n), hankel_block(s, 0, n - 1), tol), "y", n);
  auto L = schur_L(s, seq.q(), n, tol, sequence_scale(seq));
  ClassVerdict by_schur = tag(range_included(L[n], L[n - 1], tol), "L", n);
  if (by_block.ok() != by_schur.ok()) {
    ClassVerdict b = by_block.ok() ? by_schur : by_block;
    b.status = Status::boundary;
    b.witness_eig = 0.0;
    b.detail = "range_criteria_disagree";
    b.failing_index = n;
    return conjoin(v, b);
  }
  return conjoin(v, by_block);
}

ClassVerdict is_F_nnd(const MomentSequence& seq) { return hausdorff(seq, false); }
ClassVerdict is_F_pd(const MomentSequence& seq) { return hausdorff(seq, true); }

ClassVerdict is_K_nnd(const MomentSequence& seq) { return stieltjes(seq, alpha_moments(seq), "Ha"); }
ClassVerdict is_L_nnd(const MomentSequence& seq) { return stieltjes(seq, beta_moments(seq), "Hb"); }

ClassVerdict is_K_nnd_extendable(const MomentSequence& seq) {
  return stieltjes_extendable(seq, alpha_moments(seq), "Ha");
}

ClassVerdict is_L_nnd_extendable(const MomentSequence& seq) {
  return stieltjes_extendable(seq, beta_moments(seq), "Hb");
}

const std::vector<std::string>& class_names() {
  static const std::vector<std::string> names{"Hnnd", "Hpd",  "Hnnd_ext", "Fnnd",    "Fpd",
                                              "Knnd", "Knnd_ext", "Lnnd", "Lnnd_ext"};
  return names;
}

ClassVerdict evaluate_class(const MomentSequence& seq, const std::string& name) {
  int n = seq.last_index() / 2;
  if (name == "Hnnd") return is_hankel_nnd(seq, n);
  if (name == "Hpd") return is_hankel_pd(seq, n);
  if (name == "Hnnd_ext") return is_hankel_nnd_extendable(seq);
  if (name == "Fnnd") return is_F_nnd(seq);
  if (name == "Fpd") return is_F_pd(seq);
  if (name == "Knnd") return is_K_nnd(seq);
  if (name == "Knnd_ext") return is_K_nnd_extendable(seq);
  if (name == "Lnnd") return is_L_nnd(seq);
  if (name == "Lnnd_ext") return is_L_nnd_extendable(seq);
  throw Error(ErrorKind::argument, "unknown class '" + name + "'");
}

ClassReport class_report(const MomentSequence& seq) {
  ClassReport r;
  for (const auto& name : class_names()) r.verdicts[name] = evaluate_class(seq, name);
  auto& v = r.verdicts;
  auto implies = [&](const std::string& a, const std::string& b) {
    if (v[a].ok() && !v[b].ok()) r.inconsistencies.push_back(a + " holds but " + b + " fails");
  };
  implies("Fnnd", "Knnd_ext");
  implies("Fnnd", "Lnnd_ext");
  implies("Fnnd", "Hnnd_ext");
  implies("Fnnd", "Hnnd");
  implies("Knnd_ext", "Knnd");
  implies("Lnnd_ext", "Lnnd");
  if (v["Fpd"].strictly_inside() && !v["Fnnd"].strictly_inside())
    r.inconsistencies.push_back("Fpd holds strictly but Fnnd is not inside");
  if (v["Hpd"].strictly_inside() && !v["Hnnd"].strictly_inside())
    r.inconsistencies.push_back("Hpd holds strictly but Hnnd is not inside");
  if (seq.last_index() % 2 == 1 && v["Fnnd"].ok() != (v["Knnd"].ok() && v["Lnnd"].ok()))
    r.inconsistencies.push_back("odd order: Fnnd differs from Knnd and Lnnd combined");
  return r;
}

}  // namespace hmom
