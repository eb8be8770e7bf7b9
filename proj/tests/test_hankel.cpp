#include <doctest.h>

#include "hmom/classes.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hmom;
using oracle::Mat;

namespace {

MomentSequence scalar(std::vector<double> v, double al = 0.0, double be = 1.0) {
  return MomentSequence(1, al, be, oracle::scalars(v));
}

MomentSequence random_hermitian_sequence(oracle::Rng& rng, int q, int m, double al, double be) {
  std::vector<CMatrix> s;
  for (int j = 0; j <= m; ++j) s.push_back(rng.hermitian(q));
  return MomentSequence(q, al, be, s);
}

double rel(const Mat& a, const Mat& ref) { return oracle::norm2(a) / std::max(1.0, oracle::norm2(ref)); }

}  // namespace

TEST_CASE("sequence invariants") {
  CHECK_THROWS_AS(MomentSequence(1, 1.0, 0.0, oracle::scalars({1})), Error);
  CHECK_THROWS_AS(MomentSequence(1, 0.0, 0.0, oracle::scalars({1})), Error);
  CHECK_THROWS_AS(MomentSequence(1, 0.0, 1.0, {}), Error);
  CHECK_THROWS_AS(MomentSequence(2, 0.0, 1.0, oracle::scalars({1})), Error);
  std::vector<CMatrix> nan{Mat::Constant(1, 1, oracle::cd(std::nan(""), 0))};
  CHECK_THROWS_AS(MomentSequence(1, 0.0, 1.0, nan), Error);
  MomentSequence s = scalar({1, 2, 3});
  CHECK(s.last_index() == 2);
  CHECK(s.prefix(1).last_index() == 1);
  CHECK_THROWS_AS(s[3], Error);
}

TEST_CASE("build_hankel places moments exactly") {
  MomentSequence s = scalar({1, 2, 3});
  HankelView v = build_hankel(s, 1);
  Mat h(2, 2);
  h << 1, 2, 2, 3;
  CHECK(v.H == h);
  CHECK(!v.K);
  HankelView v0 = build_hankel(s, 0);
  REQUIRE(v0.K);
  REQUIRE(v0.G);
  CHECK((*v0.K)(0, 0) == oracle::cd(2));
  CHECK((*v0.G)(0, 0) == oracle::cd(3));
  CHECK_THROWS_AS(build_hankel(s, 2), Error);

  oracle::Rng rng(21);
  MomentSequence s2 = random_hermitian_sequence(rng, 2, 5, 0.0, 1.0);
  HankelView w = build_hankel(s2, 2);
  CHECK(w.H.topLeftCorner(2, 2) == s2[0]);
  CHECK(w.H == oracle::hankel(s2.moments(), 0, 2));
  CHECK(*w.K == oracle::hankel(s2.moments(), 1, 2));
  CHECK(!w.G);
  CHECK(y_block(s2.moments(), 1, 3).rows() == 6);
  CHECK(z_block(s2.moments(), 1, 3).cols() == 6);
  CHECK(y_block(s2.moments(), 3, 2).rows() == 0);
}

TEST_CASE("Schur chain examples") {
  SchurChain c = schur_chain(scalar({1, 0.5, 0.5}), 1);
  CHECK(c.theta[0](0, 0) == oracle::cd(0));
  CHECK(c.theta[1](0, 0).real() == doctest::Approx(0.25));
  CHECK(c.L[1](0, 0).real() == doctest::Approx(0.25));
  CHECK(c.L[0](0, 0).real() == doctest::Approx(1.0));
  SchurChain c2 = schur_chain(scalar({1, 0.5, 0.5, 0.3}), 1);
  CHECK(c2.M[1](0, 0).real() == doctest::Approx(0.25));
  CHECK_THROWS_AS(schur_chain(scalar({1, 0.5}), 1), Error);
  CHECK(!c.range_warning);
  SchurChain w = schur_chain(scalar({0, 1, 1}), 1);
  CHECK(w.range_warning);
  CHECK(w.warning_indices == std::vector<int>{1});
}

TEST_CASE("Schur chain matches direct formulas") {
  oracle::Rng rng(22);
  for (int t = 0; t < 30; ++t) {
    int q = rng.integer(1, 3);
    auto e = corpus::generate(100 + t, q, 6, -1.0, 2.0, 0.0, 0.0);
    SchurChain c = schur_chain(e.seq);
    const auto& s = e.seq.moments();
    for (int n = 1; n <= 3; ++n) {
      Mat hp = oracle::hankel(s, 0, n - 1).completeOrthogonalDecomposition().pseudoInverse();
      Mat z(q, q * n), y(q * n, q), y1(q * n, q);
      for (int j = 0; j < n; ++j) {
        z.block(0, j * q, q, q) = s[n + j];
        y.block(j * q, 0, q, q) = s[n + j];
        y1.block(j * q, 0, q, q) = s[n + 1 + j];
      }
      CHECK(rel(c.theta[n] - z * hp * y, c.theta[n]) < 1e-9);
      CHECK(rel(c.M[n] - z * hp * y1, c.M[n]) < 1e-9);
      CHECK(c.L[n] == s[2 * n] - c.theta[n]);
    }
  }
}

TEST_CASE("structural matrices") {
  StructuralMatrices a = structural(1, 1);
  CHECK(a.J == Eigen::Vector2cd(1, -1).asDiagonal().toDenseMatrix());
  StructuralMatrices b = structural(1, 2);
  CHECK(b.J == Eigen::Vector3cd(1, -1, 1).asDiagonal().toDenseMatrix());
  CHECK(a.Delta == (Mat(2, 1) << 1, 0).finished());
  CHECK(a.Nabla == (Mat(2, 1) << 0, 1).finished());
  for (int q = 1; q <= 3; ++q)
    for (int n = 0; n <= 3; ++n) {
      StructuralMatrices st = structural(q, n);
      Mat id = Mat::Identity(st.J.rows(), st.J.cols());
      CHECK(st.J * st.J == id);
      CHECK(st.J.adjoint() == st.J);
      CHECK(st.Delta.rows() == q * (n + 1));
      CHECK(st.Delta.cols() == q * n);
    }
}

TEST_CASE("linear Hankel relations for random Hermitian sequences") {
  oracle::Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    int q = rng.integer(1, 3), m = rng.integer(3, 7);
    double al = rng.uniform(-2, 1), be = al + rng.uniform(0.2, 3);
    MomentSequence s = random_hermitian_sequence(rng, q, m, al, be);
    MomentSequence sa = alpha_transform(s), sb = beta_transform(s), sc = ab_transform(s);
    for (int n = 0; 2 * n + 1 <= m; ++n) {
      Mat H = oracle::hankel(s.moments(), 0, n), K = oracle::hankel(s.moments(), 1, n);
      Mat Ha = build_hankel(sa, n).H, Hb = build_hankel(sb, n).H;
      CHECK(rel(Ha - (-al * H + K), H) < 1e-12);
      CHECK(rel(Hb - (be * H - K), H) < 1e-12);
      CHECK(rel((be - al) * H - (Ha + Hb), H) < 1e-12);
      CHECK(rel((be - al) * K - (be * Ha + al * Hb), K) < 1e-12);
      if (2 * n + 2 <= m) {
        Mat G = oracle::hankel(s.moments(), 2, n);
        Mat Hc = build_hankel(sc, n).H;
        CHECK(rel(Hc - (-al * be * H + (al + be) * K - G), G) < 1e-12);
        // (β-α)H_α,n = (∇-αΔ)* H_{n+1} (∇-αΔ) + H^αβ_n and the β analogue.
        StructuralMatrices st = structural(q, n + 1);
        Mat H1 = oracle::hankel(s.moments(), 0, n + 1);
        Mat ta = st.Nabla - al * st.Delta, tb = be * st.Delta - st.Nabla;
        CHECK(rel((be - al) * Ha - (ta.adjoint() * H1 * ta + Hc), H1) < 1e-12);
        CHECK(rel((be - al) * Hb - (tb.adjoint() * H1 * tb + Hc), H1) < 1e-12);
      }
    }
  }
}

TEST_CASE("reflection of Hankel blocks and the Schur chain") {
  oracle::Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    int q = rng.integer(1, 3);
    auto e = corpus::generate(300 + t, q, 6, -0.5, 1.5);
    MomentSequence r = reflect_class_dual(e.seq);
    for (int n = 0; n <= 2; ++n) {
      StructuralMatrices st = structural(q, n);
      HankelView h = build_hankel(e.seq, n), hr = build_hankel(r, n);
      CHECK(hr.H == st.J * h.H * st.J);
      CHECK(*hr.K == -(st.J * *h.K * st.J));
      CHECK(*hr.G == st.J * *h.G * st.J);
    }
    SchurChain c = schur_chain(e.seq), cr = schur_chain(r);
    for (std::size_t n = 0; n < c.L.size(); ++n) {
      CHECK(rel(cr.theta[n] - c.theta[n], c.theta[n]) < 1e-9);
      CHECK(rel(cr.M[n] + c.M[n], c.M[n]) < 1e-9);
      CHECK(rel(cr.L[n] - c.L[n], c.L[n]) < 1e-9);
    }
  }
}

TEST_CASE("parallel-sum Hankel identity on generated sequences") {
  for (int t = 0; t < 40; ++t) {
    int q = 1 + t % 3;
    const auto& iv = corpus::intervals()[static_cast<std::size_t>(t) % corpus::intervals().size()];
    auto e = corpus::generate(400 + t, q, 5, iv.alpha, iv.beta, 0.0, 0.2);
    const Tolerances& tol = e.seq.tol();
    MomentSequence sa = alpha_transform(e.seq), sb = beta_transform(e.seq), sc = ab_transform(e.seq);
    for (int n = 1; 2 * n + 1 <= 5; ++n) {
      Mat Ha = build_hankel(sa, n).H, Hb = build_hankel(sb, n).H, Hc = build_hankel(sc, n - 1).H;
      StructuralMatrices st = structural(q, n);
      Mat rhs = (iv.beta - iv.alpha) * st.Delta.adjoint() * parallel_sum(Ha, Hb, tol).value * st.Delta;
      CHECK(rel(Hc - rhs, Hc) < 1e-7);
    }
  }
}
