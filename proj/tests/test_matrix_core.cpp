#include <doctest.h>

#include "hmom/matrix_core.hpp"
#include "support/oracles.hpp"

using namespace hmom;
using oracle::Mat;

namespace {

const Tolerances tol;

Mat diag(std::initializer_list<double> v) {
  Mat d = Mat::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i, i) = x, ++i;
  return d;
}

double penrose_residual(const Mat& a, const Mat& x) {
  double r = oracle::norm2(a * x * a - a);
  r = std::max(r, oracle::norm2(x * a * x - x));
  r = std::max(r, oracle::norm2((a * x).adjoint() - a * x));
  return std::max(r, oracle::norm2((x * a).adjoint() - x * a));
}

}  // namespace

TEST_CASE("pinv examples") {
  CHECK(oracle::norm2(pinv(diag({2, 0}), tol) - diag({0.5, 0})) < 1e-15);
  CHECK(oracle::norm2(pinv(Mat::Identity(3, 3), tol) - Mat::Identity(3, 3)) < 1e-15);
  Mat ones = Mat::Ones(2, 2);
  Mat x = pinv(ones, tol);
  CHECK(oracle::norm2(x - ones / 4.0) < 1e-14);
  CHECK(penrose_residual(ones, x) < 1e-14);
  Mat z = Mat::Zero(2, 3);
  Mat zp = pinv(z, tol);
  CHECK(zp.rows() == 3);
  CHECK(zp.cols() == 2);
  CHECK(zp.norm() == 0.0);
}

TEST_CASE("pinv satisfies the Penrose equations and is an involution") {
  oracle::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    int r = rng.integer(1, 5), c = rng.integer(1, 5), k = rng.integer(0, std::min(r, c));
    Mat a = rng.complex(r, k) * rng.complex(k, c);
    Mat x = pinv(a, tol);
    double na = std::max(1.0, oracle::norm2(a));
    double bound = 10 * tol.rank_cutoff(r, c) * na;
    CHECK(penrose_residual(a, x) <= std::max(bound, 1e-12 * na * na));
    if (k == std::min(r, c)) CHECK(oracle::norm2(pinv(x, tol) - a) <= 1e-8 * na);
  }
}

TEST_CASE("pinv of Hermitian matrices is Hermitian and commutes") {
  oracle::Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    int q = rng.integer(1, 5);
    Mat g = rng.complex(q, rng.integer(1, q));
    Mat a = g * Mat::Identity(g.cols(), g.cols()) * g.adjoint();
    Mat x = pinv(a, tol);
    CHECK(oracle::norm2(x - x.adjoint()) <= 1e-10 * std::max(1.0, oracle::norm2(x)));
    CHECK(oracle::norm2(a * x - x * a) <= 1e-10);
  }
}

TEST_CASE("parallel sum examples") {
  Mat i2 = Mat::Identity(2, 2);
  ParallelSum ps = parallel_sum(i2, i2, tol);
  CHECK(oracle::norm2(ps.value - 0.5 * i2) < 1e-15);
  CHECK(ps.in_ps);
  CHECK(parallel_sum(diag({3, 1}), Mat::Zero(2, 2), tol).value.norm() == doctest::Approx(0.0));
  Mat a = diag({1, 0}), b = diag({0, 1});
  ParallelSum ab = parallel_sum(a, b, tol);
  CHECK(ab.value.norm() < 1e-15);
  CHECK(proj_intersection_svd(a, b, tol).norm() < 1e-15);
  CHECK(proj_intersection(a, b, tol).norm() < 1e-15);
  CHECK_THROWS_AS(parallel_sum(Mat::Zero(2, 2), Mat::Zero(3, 3), tol), Error);
}

TEST_CASE("parallel sum laws on random PSD pairs") {
  oracle::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    int q = rng.integer(1, 4);
    Mat a = rng.psd(q, rng.integer(1, q));
    Mat b = rng.psd(q, rng.integer(1, q));
    ParallelSum ab = parallel_sum(a, b, tol);
    ParallelSum ba = parallel_sum(b, a, tol);
    double s = std::max(1.0, oracle::norm2(a) + oracle::norm2(b));
    REQUIRE(ab.in_ps);
    CHECK(oracle::lambda_min(ab.value) >= -1e-10 * s);
    CHECK(oracle::norm2(ab.value - ba.value) <= 1e-10 * s);
    // (A+B) - 4(A∥B) = (A-B)(A+B)^†(A-B)
    Mat lhs = (a + b) - 4.0 * ab.value;
    Mat rhs = (a - b) * pinv(a + b, tol) * (a - b);
    CHECK(oracle::norm2(lhs - rhs) <= 1e-8 * s);
    // Range of A∥B is R(A) ∩ R(B).
    Mat p1 = proj_range(ab.value, tol);
    Mat p2 = proj_intersection_svd(a, b, tol);
    CHECK(oracle::norm2(p1 - p2) <= tol.range * 100);
    // (A∥B)^† = P (A^† + B^†) P
    Mat pinv_ab = pinv(ab.value, tol);
    Mat via = p2 * (pinv(a, tol) + pinv(b, tol)) * p2;
    CHECK(oracle::norm2(pinv_ab - via) <= 1e-6 * std::max(1.0, oracle::norm2(pinv_ab)));
  }
}

TEST_CASE("PSD predicates") {
  CHECK(is_psd(diag({1, 2}), tol).status == Status::inside);
  CHECK(is_pd(diag({1, 2}), tol).status == Status::inside);
  ClassVerdict v = is_psd(diag({1, -1}), tol);
  CHECK(v.status == Status::outside);
  CHECK(v.witness_eig == doctest::Approx(-1.0));
  // The zero matrix lies on the PSD face: PSD in the membership sense, not PD.
  ClassVerdict z = is_psd(Mat::Zero(2, 2), tol);
  CHECK(z.ok());
  CHECK(z.status == Status::boundary);
  CHECK(!is_pd(Mat::Zero(2, 2), tol).strictly_inside());
  Mat nh(2, 2);
  nh << 1, 1, 0, 1;
  ClassVerdict h = is_psd(nh, tol);
  CHECK(h.status == Status::outside);
  CHECK(h.detail == "not_hermitian");
  CHECK(is_hermitian(nh, tol).status == Status::outside);
  CHECK_THROWS_AS(is_psd(Mat::Zero(2, 3), tol), Error);
}

TEST_CASE("verdict witness respects the tri-state thresholds") {
  oracle::Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    int q = rng.integer(1, 4);
    Mat a = rng.hermitian(q);
    if (t % 3 == 0) a = rng.psd(q, rng.integer(0, q));
    ClassVerdict v = is_psd(a, tol);
    double scale = std::max(1.0, oracle::norm2(a));
    if (v.status == Status::outside) CHECK(v.witness_eig < -tol.psd * scale);
    if (v.status == Status::boundary) CHECK(std::abs(v.witness_eig) <= tol.psd * scale);
    CHECK(v.witness_eig == doctest::Approx(oracle::lambda_min(a)).epsilon(1e-9));
  }
}

TEST_CASE("psd square root") {
  CHECK(oracle::norm2(psd_sqrt(diag({4, 9}), tol) - diag({2, 3})) < 1e-14);
  CHECK(oracle::norm2(psd_sqrt(Mat::Identity(3, 3), tol) - Mat::Identity(3, 3)) < 1e-14);
  oracle::Rng rng(15);
  Mat v = rng.complex(3, 1);
  Mat a = v * v.adjoint();
  Mat r = psd_sqrt(a, tol);
  CHECK(oracle::norm2(r - a / v.norm()) < 1e-12);
  for (int t = 0; t < 50; ++t) {
    int q = rng.integer(1, 4);
    Mat p = rng.psd(q, rng.integer(0, q));
    Mat s = psd_sqrt(p, tol);
    CHECK(oracle::norm2(s * s - p) <= 10 * tol.psd * std::max(1.0, oracle::norm2(p)));
    CHECK(oracle::norm2(s - s.adjoint()) < 1e-12);
  }
  CHECK_THROWS_AS(psd_sqrt(diag({1, -1}), tol), Error);
}

TEST_CASE("range projectors and inclusion") {
  CHECK(oracle::norm2(proj_range(diag({3, 2}), tol) - Mat::Identity(2, 2)) < 1e-14);
  CHECK(proj_range(Mat::Zero(2, 2), tol).norm() == 0.0);
  CHECK(oracle::norm2(proj_range(diag({3, 0}), tol) - diag({1, 0})) < 1e-15);
  CHECK(range_included(diag({1, 0}), Mat::Identity(2, 2), tol).status == Status::inside);
  CHECK(range_included(Mat::Identity(2, 2), diag({1, 0}), tol).status == Status::outside);
  CHECK(range_included(Mat::Zero(2, 2), diag({0, 0}), tol).status == Status::inside);
  CHECK_THROWS_AS(range_included(Mat::Zero(2, 2), Mat::Zero(3, 3), tol), Error);
  oracle::Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    int q = rng.integer(2, 5);
    Mat b = rng.complex(q, rng.integer(1, q));
    Mat p = proj_range(b, tol);
    CHECK(oracle::norm2(p * p - p) < 1e-10);
    CHECK(oracle::norm2(p - p.adjoint()) < 1e-10);
    CHECK(range_included(b * rng.complex(b.cols(), 2), b, tol).status == Status::inside);
  }
}

TEST_CASE("Loewner order") {
  Mat i2 = Mat::Identity(2, 2), z = Mat::Zero(2, 2);
  CHECK(loewner_leq(z, i2, tol).status == Status::inside);
  CHECK(loewner_leq(i2, z, tol).status == Status::outside);
  CHECK(loewner_leq(i2, i2, tol).status == Status::boundary);
}

TEST_CASE("block PSD criterion") {
  Mat i1 = Mat::Identity(1, 1), z1 = Mat::Zero(1, 1);
  CHECK(block_psd(i1, z1, z1, i1, tol).status == Status::inside);
  CHECK(block_psd(z1, i1, i1, i1, tol).status == Status::outside);
  ClassVerdict v = block_psd(i1, i1, i1, i1, tol);
  CHECK(v.status == Status::boundary);
  Mat full(2, 2);
  full << 1, 1, 1, 1;
  CHECK(std::abs(oracle::lambda_min(full)) < 1e-15);
}

TEST_CASE("block PSD agrees with the assembled eigenvalue test") {
  oracle::Rng rng(17);
  int agree = 0, total = 500;
  int seen[3] = {0, 0, 0};
  for (int t = 0; t < total; ++t) {
    int p = rng.integer(1, 3), r = rng.integer(1, 3), n = p + r;
    // Spectrum mixes exact zeros, clearly negative and clearly positive values.
    Mat u = rng.unitary(n);
    Eigen::VectorXd lam(n);
    int kind = t % 3;
    for (int i = 0; i < n; ++i) lam(i) = rng.uniform(0.5, 2.0);
    if (kind == 1) lam(rng.integer(0, n - 1)) = 0.0;
    if (kind == 2) lam(rng.integer(0, n - 1)) = -rng.uniform(0.5, 1.0);
    Mat m = u * lam.cast<oracle::cd>().asDiagonal() * u.adjoint();
    m = (m + m.adjoint()) * 0.5;
    Status direct = is_psd(m, tol).status;
    ClassVerdict v = block_psd(m.topLeftCorner(p, p), m.topRightCorner(p, r), m.bottomLeftCorner(r, p),
                               m.bottomRightCorner(r, r), tol);
    seen[static_cast<int>(direct)]++;
    if (v.status == direct) ++agree;
  }
  CHECK(agree == total);
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("tolerances validation and conjunction") {
  Tolerances bad;
  bad.psd = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.psd = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  ClassVerdict in, bd, out;
  bd.status = Status::boundary;
  out.status = Status::outside;
  CHECK(conjoin(in, bd).status == Status::boundary);
  CHECK(conjoin(bd, out).status == Status::outside);
  CHECK(conjoin(out, in).status == Status::outside);
  CHECK(parse_status("boundary") == Status::boundary);
  CHECK(!parse_status("maybe"));
}
