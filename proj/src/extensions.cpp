#include "hmom/extensions.hpp"

#include <algorithm>
#include <random>

namespace hmom {

std::optional<ExtensionMode> parse_mode(const std::string& text) {
  if (text == "lower") return ExtensionMode::lower;
  if (text == "upper") return ExtensionMode::upper;
  if (text == "central") return ExtensionMode::central;
  if (text == "ball") return ExtensionMode::ball;
  if (text == "explicit") return ExtensionMode::explicit_list;
  return std::nullopt;
}

std::string to_string(ExtensionMode mode) {
  switch (mode) {
    case ExtensionMode::lower: return "lower";
    case ExtensionMode::upper: return "upper";
    case ExtensionMode::central: return "central";
    case ExtensionMode::ball: return "ball";
    case ExtensionMode::explicit_list: return "explicit";
  }
  return "central";
}

MomentSequence extend(const MomentSequence& seq, const ExtensionPolicy& policy) {
  const auto& tol = seq.tol();
  int steps = policy.steps;
  if (policy.mode == ExtensionMode::explicit_list) {
    if (policy.matrices.empty()) throw Error(ErrorKind::argument, "explicit mode needs candidates");
    steps = static_cast<int>(policy.matrices.size());
  }
  if (steps < 1) throw Error(ErrorKind::argument, "steps must be positive");
  if (policy.mode == ExtensionMode::ball) {
    if (policy.matrices.size() != 1 && policy.matrices.size() != static_cast<std::size_t>(steps))
      throw Error(ErrorKind::argument, "ball mode needs one contraction or one per step");
    for (const auto& k : policy.matrices) {
      if (k.rows() != seq.q() || k.cols() != seq.q())
        throw Error(ErrorKind::shape, "contraction is not q x q");
      if (!is_hermitian(k, tol).ok() || !is_contraction(k, tol).ok())
        throw Error(ErrorKind::outside, "ball contraction K is not within [0, I]");
    }
  }
  require_F_nnd(seq, "extend");

  MomentSequence cur = seq;
  for (int step = 0; step < steps; ++step) {
    if (policy.mode == ExtensionMode::explicit_list) {
      const CMatrix& x = policy.matrices[static_cast<std::size_t>(step)];
      if (!membership(cur, x).ok())
        throw Error(ErrorKind::outside,
                    "explicit candidate " + std::to_string(step) + " lies outside [a_m, b_m]");
      cur = cur.appended(x);
      continue;
    }
    EndpointPair e = endpoint_pair(cur, cur.last_index());
    CMatrix d = e.b - e.a;
    CMatrix next;
    if (spectral_norm(d) <= tol.psd * sequence_scale(cur)) {
      // Zero-length interval: the continuation is forced.
      next = e.a + 0.5 * d;
    } else {
      switch (policy.mode) {
        case ExtensionMode::lower: next = e.a; break;
        case ExtensionMode::upper: next = e.b; break;
        case ExtensionMode::central: next = e.a + 0.5 * d; break;
        case ExtensionMode::ball: {
          const CMatrix& k = policy.matrices.size() == 1 ? policy.matrices[0]
                                                         : policy.matrices[static_cast<std::size_t>(step)];
          next = ball_point(e.a, d, k, tol);
          break;
        }
        case ExtensionMode::explicit_list: break;
      }
    }
    cur = cur.appended(hermitian_part(next));
  }
  return cur;
}

namespace {

CMatrix gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re = n(rng);
      double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix random_contraction(std::mt19937_64& rng, int q, double lo, double hi) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, q, q));
  CMatrix u = qr.householderQ() * CMatrix::Identity(q, q);
  std::uniform_real_distribution<double> unif(lo, hi);
  Eigen::VectorXd lam(q);
  for (int i = 0; i < q; ++i) lam(i) = unif(rng);
  CMatrix k = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
  return hermitian_part(k);
}

}  // namespace

MomentSequence random_F(int q, double alpha, double beta, int m, std::uint64_t seed, bool pd,
                        Tolerances tol) {
  if (q < 1) throw Error(ErrorKind::argument, "random_F: q must be positive");
  if (m < 0) throw Error(ErrorKind::argument, "random_F: m must be non-negative");
  if (!(alpha < beta)) throw Error(ErrorKind::argument, "random_F: needs alpha < beta");
  std::mt19937_64 rng(seed);
  CMatrix g = gaussian(rng, q, q);
  CMatrix s0 = hermitian_part(g * g.adjoint() + 0.1 * CMatrix::Identity(q, q));
  MomentSequence cur(q, alpha, beta, {s0}, tol);
  const double margin = pd ? 0.05 : 0.0;
  for (int j = 1; j <= m; ++j) {
    EndpointPair e = endpoint_pair(cur, j - 1);
    CMatrix k = random_contraction(rng, q, margin, 1.0 - margin);
    cur = cur.appended(hermitian_part(ball_point(e.a, e.b - e.a, k, tol)));
  }
  return cur;
}

DegenerateTailReport degenerate_tail_check(const MomentSequence& seq) {
  require_F_nnd(seq, "degenerate_tail_check");
  auto iv = all_endpoints(seq);
  double scale = sequence_scale(seq);
  DegenerateTailReport r;
  r.threshold = seq.tol().psd * scale;
  for (const auto& si : iv) {
    if (spectral_norm(si.d) <= r.threshold) {
      r.m0 = si.index;
      break;
    }
  }
  if (!r.m0) return r;
  int m0 = *r.m0;
  for (int j = m0 + 1; j <= seq.last_index(); ++j) {
    const auto& prev = iv[static_cast<std::size_t>(j - 1)];
    double res = std::max({spectral_norm(seq[j] - prev.a), spectral_norm(seq[j] - prev.b),
                           spectral_norm(seq[j] - prev.c), spectral_norm(iv[j].d)});
    r.max_tail_residual = std::max(r.max_tail_residual, res / scale);
  }
  r.tail_consistent = r.max_tail_residual * scale <= r.threshold;
  int n = m0 / 2;
  if (2 * (n + 1) <= seq.last_index()) {
    r.hankel_order = n + 1;
    SchurChain ch = schur_chain(seq, n + 1);
    r.hankel_degenerate = spectral_norm(ch.L[n + 1]) <= r.threshold;
  }
  return r;
}

}  // namespace hmom
