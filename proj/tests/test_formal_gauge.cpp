#include "doctest.h"
#include "gen.hpp"
#include "operlab/formal_gauge.hpp"

using namespace operlab;
using namespace operlab::gauge;
using lie::LieElement;
using lie::SlAlgebra;
using Q = QComplex;

namespace {

template <class S>
FormalConnection<S> random_connection(const LieElement<S>& v0, int order, bool log = true) {
  FormalConnection<S> v{{v0}, log};
  for (int i = 1; i <= order; ++i) v.coeffs.emplace_back(v0.algebra(), testgen::random_traceless<S>(v0.n()));
  return v;
}

// Random element of SL_N(C[[t]]): unimodular h_0 times exp(t^k u_k) factors.
template <class S>
GaugeSeries<S> random_gauge(int n, int order, bool unit_constant) {
  auto h = GaugeSeries<S>::identity(n, order);
  if (!unit_constant) {
    Matrix<S> up = identity<S>(n), lo = identity<S>(n);
    up(0, 1) = ScalarOps<S>::from_int(testgen::small_int(-2, 2));
    lo(1, 0) = ScalarOps<S>::from_int(testgen::small_int(-1, 1));
    h.coeffs[0] = up * lo;
  }
  for (int k = 1; k <= order; ++k) h = compose(h, exp_monomial<S>(testgen::random_traceless<S>(n), k, order));
  return h;
}

// D(h) = h v - w h, checked through order `upto` without inverting h.
template <class S>
double gauge_equation_residual(const GaugeSeries<S>& h, const FormalConnection<S>& v, const FormalConnection<S>& w,
                               int upto) {
  const int m = v.order();
  double worst = 0.0;
  for (int k = 0; k <= upto; ++k) {
    Matrix<S> dh = v.logarithmic ? Matrix<S>(h.coeffs[k] * ScalarOps<S>::from_int(k))
                                 : (k + 1 <= m ? Matrix<S>(h.coeffs[k + 1] * ScalarOps<S>::from_int(k + 1))
                                               : zeros<S>(h.n(), h.n()));
    Matrix<S> rhs = zeros<S>(h.n(), h.n());
    for (int i = 0; i <= k; ++i) rhs += h.coeffs[i] * v.coeffs[k - i].matrix() - w.coeffs[k - i].matrix() * h.coeffs[i];
    worst = std::max(worst, max_abs<S>(Matrix<S>(dh - rhs)));
  }
  return worst;
}

template <class S>
double connection_distance(const FormalConnection<S>& a, const FormalConnection<S>& b, int upto) {
  double worst = 0.0;
  for (int k = 0; k <= upto; ++k) worst = std::max(worst, max_abs<S>(Matrix<S>(a.coeffs[k].matrix() - b.coeffs[k].matrix())));
  return worst;
}

LieElement<Q> diag_q(std::initializer_list<Q> d) {
  const int n = static_cast<int>(d.size());
  Matrix<Q> m = zeros<Q>(n, n);
  int i = 0;
  for (const auto& x : d) m(i, i) = x, ++i;
  return {SlAlgebra<Q>(n), m};
}

}  // namespace

TEST_CASE("gauge transform agrees with the gauge equation") {
  for (bool log : {true, false})
    for (int n = 2; n <= 3; ++n) {
      const SlAlgebra<Q> alg(n);
      const auto v = random_connection<Q>(LieElement<Q>(alg, testgen::random_traceless<Q>(n)), 5, log);
      const auto h = random_gauge<Q>(n, 5, false);
      const auto w = gauge_transform(h, v);
      // with d/dt the order-M term depends on h_{M+1}
      CHECK(gauge_equation_residual(h, v, w, log ? 5 : 4) == 0.0);
    }
}

TEST_CASE("identity gauge and inverse gauge") {
  const SlAlgebra<Q> alg(2);
  const auto v = random_connection<Q>(LieElement<Q>(alg, testgen::random_traceless<Q>(2)), 6);
  const auto id = GaugeSeries<Q>::identity(2, 6);
  CHECK(connection_distance(gauge_transform(id, v), v, 6) == 0.0);
  const auto h = random_gauge<Q>(2, 6, false);
  const auto back = gauge_transform(inverse(h), gauge_transform(h, v));
  CHECK(connection_distance(back, v, 6) == 0.0);
}

TEST_CASE("gauge by exp(t^n u) of a constant connection") {
  const SlAlgebra<Q> alg(3);
  const LieElement<Q> v0(alg, testgen::random_traceless<Q>(3));
  const LieElement<Q> u(alg, testgen::random_traceless<Q>(3));
  const int n = 2, m = 6;
  const auto w = gauge_transform(exp_monomial<Q>(u.matrix(), n, m), FormalConnection<Q>::constant(v0, m));
  CHECK(w.coeffs[0].matrix() == v0.matrix());
  CHECK(is_zero_matrix<Q>(w.coeffs[1].matrix(), 0));
  const Matrix<Q> expected = -(u.matrix() * Q(n) + lie::bracket(v0, u).matrix());
  CHECK(w.coeffs[n].matrix() == expected);
}

TEST_CASE("gauge action is a group action") {
  for (int n = 2; n <= 3; ++n) {
    const SlAlgebra<Q> alg(n);
    const auto v = random_connection<Q>(LieElement<Q>(alg, testgen::random_traceless<Q>(n)), 5);
    const auto h1 = random_gauge<Q>(n, 5, false), h2 = random_gauge<Q>(n, 5, false);
    CHECK(connection_distance(gauge_transform(h2, gauge_transform(h1, v)), gauge_transform(compose(h2, h1), v), 5) == 0.0);
  }
  // float, d/dt derivation: the truncated product drops t^{M+1}, which the
  // d/dt term at order M would see, so agreement is through order M-1.
  const SlAlgebra<cplx> alg(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto v = random_connection<cplx>(LieElement<cplx>(alg, testgen::random_traceless<cplx>(3)), 6, false);
    const auto h1 = random_gauge<cplx>(3, 6, false), h2 = random_gauge<cplx>(3, 6, false);
    CHECK(connection_distance(gauge_transform(h2, gauge_transform(h1, v)), gauge_transform(compose(h2, h1), v), 5) < 1e-10);
  }
}

TEST_CASE("residue") {
  const auto t = lie::principal_triple<Q>(3);
  CHECK(residue(FormalConnection<Q>::constant(t.q_minus, 4)).matrix() == t.q_minus.matrix());
  const auto v = random_connection<Q>(LieElement<Q>::zero(t.algebra()), 3);
  CHECK(is_zero_matrix<Q>(residue(v).matrix(), 0));
  CHECK_THROWS_AS(residue(FormalConnection<Q>::constant(t.q_minus, 4, false)), std::invalid_argument);
  // covariance: residue(gauge(h, v)) = h_0 v_0 h_0^{-1}
  const SlAlgebra<Q> alg(3);
  const auto w = random_connection<Q>(LieElement<Q>(alg, testgen::random_traceless<Q>(3)), 3);
  const auto h = random_gauge<Q>(3, 3, false);
  const Matrix<Q> expected = h.coeffs[0] * w.coeffs[0].matrix() * *linalg::inverse<Q>(h.coeffs[0]);
  CHECK(residue(gauge_transform(h, w)).matrix() == expected);
}

TEST_CASE("weakly prepared") {
  const auto t = lie::principal_triple<Q>(3);
  CHECK(is_weakly_prepared(t.q_minus));
  CHECK_FALSE(is_weakly_prepared(diag_q({Q::rational(1, 2), Q::rational(-1, 2)})));
  CHECK(is_weakly_prepared(diag_q({Q::rational(1, 3), Q::rational(-1, 3)})));
  const LieElement<cplx> f(SlAlgebra<cplx>(2), to_cplx<Q>(diag_q({Q::rational(1, 2), Q::rational(-1, 2)}).matrix()));
  CHECK_FALSE(is_weakly_prepared(f));
  // non-triangular exact input falls back to floating point with a warning
  Matrix<Q> m = zeros<Q>(2, 2);
  m(0, 1) = Q(1);
  m(1, 0) = Q::rational(1, 4);  // eigenvalues +-1/2
  WarningSink::captured().clear();
  CHECK_FALSE(is_weakly_prepared(LieElement<Q>(SlAlgebra<Q>(2), m)));
  CHECK(WarningSink::captured().size() == 1);
}

TEST_CASE("radius") {
  const auto t = lie::principal_triple<Q>(4);
  CHECK(is_zero_radius(t.q_minus));
  CHECK(is_zero_radius(LieElement<Q>::zero(t.algebra())));
  const auto r = radius(diag_q({Q(1), Q(-1)}));
  REQUIRE(r.char_coeffs.size() == 1);
  CHECK(r.char_coeffs[0] == Q(-1));
  CHECK_FALSE(is_zero_radius(diag_q({Q(1), Q(-1)})));
  // oracle: coefficients from the eigenvalues of a diagonal matrix
  const auto r3 = radius(diag_q({Q(1), Q(2), Q(-3)}));
  // (l-1)(l-2)(l+3) = l^3 - 7l + 6
  CHECK(r3.char_coeffs == std::vector<Q>{Q(-7), Q(6)});
  // gauge invariance
  const SlAlgebra<Q> alg(3);
  const auto v = random_connection<Q>(LieElement<Q>(alg, testgen::random_traceless<Q>(3)), 3);
  const auto w = gauge_transform(random_gauge<Q>(3, 3, false), v);
  CHECK(radius(residue(v)).char_coeffs == radius(residue(w)).char_coeffs);
}

TEST_CASE("normalize_step") {
  const SlAlgebra<Q> alg(2);
  const auto c = FormalConnection<Q>::constant(diag_q({Q::rational(1, 3), Q::rational(-1, 3)}), 4);
  const auto s = normalize_step(c, 2);
  CHECK(s.gauge.coeffs[2] == zeros<Q>(2, 2));
  // v_0 = 0: u = -v_n / n, gauge exp(-t^n u) = 1 + t^n v_n / n + ...
  auto v = FormalConnection<Q>::constant(LieElement<Q>::zero(alg), 4);
  const Matrix<Q> vn = testgen::random_traceless<Q>(2);
  v.coeffs[3] = LieElement<Q>(alg, vn);
  const auto s3 = normalize_step(v, 3);
  CHECK(s3.gauge.coeffs[3] == Matrix<Q>(vn / Q(3)));
  for (int k = 0; k <= 4; ++k) CHECK(is_zero_matrix<Q>(s3.connection.coeffs[k].matrix(), 0));
  // resonance
  auto r = FormalConnection<Q>::constant(diag_q({Q::rational(1, 2), Q::rational(-1, 2)}), 3);
  Matrix<Q> e12 = zeros<Q>(2, 2);
  e12(0, 1) = Q(1);
  r.coeffs[1] = LieElement<Q>(alg, e12);
  try {
    normalize_step(r, 1);
    FAIL("expected WeaklyPreparedViolation");
  } catch (const WeaklyPreparedViolation& e) {
    CHECK(e.order() == 1);
    CHECK(std::abs(e.eigenvalue_pair().first - e.eigenvalue_pair().second + 1.0) < 1e-9);
  }
}

TEST_CASE("normalize") {
  const auto t = lie::principal_triple<Q>(3);
  const auto c = normalize(FormalConnection<Q>::constant(t.q_minus, 6));
  for (int k = 0; k <= 6; ++k) CHECK(c.gauge.coeffs[k] == (k == 0 ? identity<Q>(3) : zeros<Q>(3, 3)));

  const auto z = random_connection<Q>(LieElement<Q>::zero(t.algebra()), 6);
  const auto nz = normalize(z);
  const auto gz = gauge_transform(nz.gauge, z);
  for (int k = 0; k <= 6; ++k) CHECK(is_zero_matrix<Q>(gz.coeffs[k].matrix(), 0));

  const auto v0 = diag_q({Q::rational(1, 3), Q::rational(-1, 3)});
  const auto v = random_connection<Q>(v0, 12);
  const auto nv = normalize(v);
  CHECK(nv.gauge.coeffs[0] == identity<Q>(2));
  const auto gv = gauge_transform(nv.gauge, v);
  CHECK(connection_distance(gv, FormalConnection<Q>::constant(v0, 12), 12) == 0.0);

  // nilpotent residue in sl_3
  const auto w = random_connection<Q>(t.q_minus, 6);
  const auto nw = normalize(w);
  CHECK(connection_distance(gauge_transform(nw.gauge, w), FormalConnection<Q>::constant(t.q_minus, 6), 6) == 0.0);

  // float mode
  const SlAlgebra<cplx> fa(3);
  Matrix<cplx> d = Matrix<cplx>::Zero(3, 3);
  d(0, 0) = 0.2;
  d(1, 1) = 0.15;
  d(2, 2) = -0.35;
  d(0, 2) = 0.7;
  const auto fv = random_connection<cplx>(LieElement<cplx>(fa, d), 12);
  const auto nf = normalize(fv);
  CHECK(connection_distance(gauge_transform(nf.gauge, fv), FormalConnection<cplx>::constant(fv.coeffs[0], 12), 12) < 1e-8);
}

TEST_CASE("local monodromy") {
  CHECK(local_monodromy(CMat(CMat::Zero(3, 3))).isApprox(CMat::Identity(3, 3)));
  const auto t = lie::principal_triple<cplx>(3);
  const CMat m = local_monodromy(t.q_minus);
  const CMat nil = m - CMat::Identity(3, 3);
  CHECK((nil * nil * nil).norm() < 1e-10);
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1.0 / 3;
  d(1, 1) = -1.0 / 3;
  const CMat md = local_monodromy(d);
  CHECK(std::abs(md(0, 0) - std::exp(cplx(0, -2 * std::numbers::pi / 3))) < 1e-12);
  CHECK(std::abs(md(1, 1) - std::exp(cplx(0, 2 * std::numbers::pi / 3))) < 1e-12);
}

TEST_CASE("local monodromy is unipotent iff the radius vanishes") {
  const int n = 3;
  const SlAlgebra<cplx> alg(n);
  auto unipotent = [&](const CMat& m) {
    CMat p = CMat::Identity(n, n);
    for (int k = 0; k < n; ++k) p = p * (m - CMat::Identity(n, n));
    return p.norm() < 1e-8 * std::max(1.0, m.norm());
  };
  for (int rep = 0; rep < 50; ++rep) {
    CMat strict = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) strict(i, j) = testgen::random_cplx();
    CMat g = CMat::Identity(n, n) + 0.3 * CMat::Random(n, n);
    const CMat c = g * strict * g.inverse();
    const LieElement<cplx> ce(alg, c);
    CHECK(is_zero_radius(ce, 1e-9));
    CHECK(unipotent(local_monodromy(ce)));
  }
  for (int rep = 0; rep < 50; ++rep) {
    CMat diag = CMat::Zero(n, n);
    diag(0, 0) = testgen::uniform(0.05, 0.45);
    diag(1, 1) = -testgen::uniform(0.05, 0.45);
    diag(2, 2) = -diag(0, 0) - diag(1, 1);
    const LieElement<cplx> ce(alg, diag);
    CHECK_FALSE(is_zero_radius(ce, 1e-9));
    CHECK_FALSE(unipotent(local_monodromy(ce)));
  }
}

TEST_CASE("normalize equals the composite of normalization steps") {
  for (int n = 2; n <= 3; ++n) {
    const auto t = lie::principal_triple<Q>(n);
    for (int rep = 0; rep < 3; ++rep) {
      const auto v0 = rep == 0 ? t.q_minus : (n == 2 ? diag_q({Q::rational(1, 3), Q::rational(-1, 3)})
                                                     : diag_q({Q::rational(1, 5), Q::rational(2, 7), Q::rational(-17, 35)}));
      const auto v = random_connection<Q>(v0, 8);
      const auto direct = normalize(v);
      const auto steps = normalize_by_steps(v);
      for (int k = 0; k <= 8; ++k) CHECK(direct.gauge.coeffs[k] == steps.gauge.coeffs[k]);
    }
  }
  // a resonant residue with an obstructing first coefficient
  Matrix<Q> e12 = zeros<Q>(2, 2);
  e12(0, 1) = Q(1);
  FormalConnection<Q> bad{{diag_q({Q::rational(1, 2), Q::rational(-1, 2)}), LieElement<Q>(SlAlgebra<Q>(2), e12)}, true};
  CHECK_THROWS_AS(normalize(bad), WeaklyPreparedViolation);
}

TEST_CASE("float normalization stays accurate for nilpotent residues") {
  const int n = 3;
  const auto t = lie::principal_triple<cplx>(n);
  for (int rep = 0; rep < 10; ++rep) {
    const auto v = random_connection<cplx>(t.q_minus, 12);
    const auto r = normalize(v);
    CHECK(connection_distance(gauge_transform(r.gauge, v), FormalConnection<cplx>::constant(t.q_minus, 12), 12) < 1e-10);
  }
}
