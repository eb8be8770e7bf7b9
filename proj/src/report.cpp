#include "report.hpp"

#include <algorithm>

namespace hmom::detail {

json verdict_to_json(const ClassVerdict& v) {
  json j{{"status", std::string(to_string(v.status))}, {"witness_eig", v.witness_eig}, {"detail", v.detail}};
  j["failing_index"] = v.failing_index ? json(*v.failing_index) : json(nullptr);
  return j;
}

namespace {

json fragment() {
  return json{{"verdicts", json::object()}, {"residuals", json::object()}, {"data", json::object()},
              {"status", "pass"}};
}

double min_eig(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

json spectrum(const MomentSequence& seq) {
  json out = json::object();
  int m = seq.last_index();
  auto put = [&](const std::string& name, const std::vector<CMatrix>& s, int n) {
    if (n >= 0 && 2 * n < static_cast<int>(s.size())) out[name + "_" + std::to_string(n)] = min_eig(hankel_block(s, 0, n));
  };
  put("H", seq.moments(), m / 2);
  put("Ha", alpha_moments(seq), (m - 1) / 2);
  put("Hb", beta_moments(seq), (m - 1) / 2);
  put("Hab", ab_moments(seq), (m - 2) / 2);
  return out;
}

}  // namespace

json check_report(const MomentSequence& seq, const std::string& require) {
  const auto& names = class_names();
  if (std::find(names.begin(), names.end(), require) == names.end())
    throw Error(ErrorKind::argument, "unknown class '" + require + "'");
  ClassReport cr = class_report(seq);
  json r = fragment();
  for (const auto& [name, v] : cr.verdicts) r["verdicts"][name] = verdict_to_json(v);
  r["data"]["require"] = require;
  r["data"]["m"] = seq.last_index();
  r["data"]["q"] = seq.q();
  r["data"]["min_eigenvalues"] = spectrum(seq);
  r["data"]["inconsistencies"] = cr.inconsistencies;
  r["status"] = cr.verdicts.at(require).ok() ? "pass" : "fail";
  return r;
}

json interval_report(const MomentSequence& seq, int m) {
  if (m < 0 || m > seq.last_index()) throw Error(ErrorKind::range, "interval index out of range");
  MomentSequence p = seq.prefix(m);
  require_F_nnd(p, "interval");
  SectionInterval si = endpoints(p, m);
  const auto& tol = seq.tol();
  json r = fragment();
  r["verdicts"]["prefix_Fnnd"] = verdict_to_json(is_F_nnd(p));
  r["verdicts"]["d_psd"] = verdict_to_json(is_psd(si.d, tol));
  r["verdicts"]["d_pd"] = verdict_to_json(is_pd(si.d, tol));
  r["verdicts"]["completely_degenerate"] = verdict_to_json(is_completely_degenerate(p));
  json& d = r["data"];
  d["m"] = m;
  d["a"] = matrix_to_json(si.a);
  d["b"] = matrix_to_json(si.b);
  d["c"] = matrix_to_json(si.c);
  d["d"] = matrix_to_json(si.d);
  d["u"] = matrix_to_json(si.u);
  d["o"] = si.o ? matrix_to_json(*si.o) : json(nullptr);
  d["d_rank"] = numerical_rank(si.d, tol);
  d["d_norm"] = spectral_norm(si.d);
  d["d_min_eig"] = min_eig(si.d);
  d["hermitian_deviation"] = spectral_norm(si.a - si.a.adjoint()) + spectral_norm(si.b - si.b.adjoint());
  return r;
}

json membership_report(const MomentSequence& seq, const CMatrix& candidate) {
  ClassVerdict v = membership(seq, candidate);
  json r = fragment();
  r["verdicts"]["membership"] = verdict_to_json(v);
  r["data"]["m"] = seq.last_index();
  r["status"] = v.ok() ? "pass" : "fail";
  return r;
}

json verify_report(const MomentSequence& seq, const std::vector<Suite>& suites) {
  json r = fragment();
  bool ok = true;
  for (Suite s : suites) {
    SuiteReport sr = run_suite(seq, s);
    json checks = json::object();
    for (const auto& c : sr.checks) {
      json cj{{"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed()},
              {"evaluated", c.evaluated}};
      cj["worst_index"] = c.worst_index ? json(*c.worst_index) : json(nullptr);
      checks[c.name] = std::move(cj);
    }
    r["residuals"][to_string(s)] = json{{"max", sr.max_residual()}, {"passed", sr.passed()}, {"checks", checks}};
    ok = ok && sr.passed();
  }
  r["data"]["m"] = seq.last_index();
  r["data"]["q"] = seq.q();
  r["status"] = ok ? "pass" : "fail";
  return r;
}

json degenerate_report(const MomentSequence& seq) {
  DegenerateTailReport d = degenerate_tail_check(seq);
  json r = fragment();
  json& data = r["data"];
  data["m0"] = d.m0 ? json(*d.m0) : json(nullptr);
  data["tail_consistent"] = d.tail_consistent;
  data["hankel_order"] = d.hankel_order ? json(*d.hankel_order) : json(nullptr);
  data["hankel_degenerate"] = d.hankel_degenerate ? json(*d.hankel_degenerate) : json(nullptr);
  data["threshold"] = d.threshold;
  r["residuals"]["tail"] = json{{"max", d.max_tail_residual}, {"passed", d.tail_consistent}};
  r["status"] = d.tail_consistent ? "pass" : "fail";
  return r;
}

}  // namespace hmom::detail
