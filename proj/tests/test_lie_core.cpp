#include "doctest.h"
#include "gen.hpp"
#include "operlab/lie_core.hpp"

using namespace operlab;
using namespace operlab::lie;
using Q = QComplex;

namespace {

template <class S>
LieElement<S> unit(int n, int i, int j, long v = 1) {
  Matrix<S> m = zeros<S>(n, n);
  m(i, j) = ScalarOps<S>::from_int(v);
  return {SlAlgebra<S>(n), m};
}

// tr(ad x ad y) from explicit ad matrices.
template <class S>
S trace_ad_ad(const LieElement<S>& x, const LieElement<S>& y) {
  const auto& alg = x.algebra();
  const int d = alg.dimension();
  Matrix<S> adx(d, d), ady(d, d);
  for (int b = 0; b < d; ++b) {
    const LieElement<S> e(alg, alg.basis_element(b));
    adx.col(b) = alg.coords(bracket(x, e).matrix());
    ady.col(b) = alg.coords(bracket(y, e).matrix());
  }
  return trace<S>(Matrix<S>(adx * ady));
}

// exp of a nilpotent matrix as a finite sum.
Matrix<Q> exp_nilpotent(const Matrix<Q>& x) {
  const int n = static_cast<int>(x.rows());
  Matrix<Q> acc = identity<Q>(n), term = identity<Q>(n);
  for (int k = 1; k < n + 1; ++k) {
    term = Matrix<Q>(term * x);
    term /= Q(k);
    acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("Killing form examples") {
  CHECK(killing_form(unit<Q>(2, 0, 1), unit<Q>(2, 1, 0)) == Q(4));
  Matrix<Q> h = zeros<Q>(3, 3);
  h(0, 0) = Q(2);
  h(2, 2) = Q(-2);
  const LieElement<Q> hh(SlAlgebra<Q>(3), h);
  CHECK(killing_form(hh, hh) == Q(48));
}

TEST_CASE("Killing form equals trace of ad ad") {
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 5; ++rep) {
      const SlAlgebra<Q> alg(n);
      const LieElement<Q> x(alg, testgen::random_traceless<Q>(n));
      const LieElement<Q> y(alg, testgen::random_traceless<Q>(n));
      CHECK(killing_form(x, y) == trace_ad_ad(x, y));
      CHECK(killing_form(x, y) == killing_form(y, x));
    }
}

TEST_CASE("Killing form is ad-invariant (float)") {
  for (int n = 2; n <= 5; ++n) {
    const SlAlgebra<cplx> alg(n);
    const LieElement<cplx> x(alg, testgen::random_traceless<cplx>(n));
    const LieElement<cplx> y(alg, testgen::random_traceless<cplx>(n));
    const LieElement<cplx> z(alg, testgen::random_traceless<cplx>(n));
    const cplx lhs = killing_form(bracket(x, y), z);
    const cplx rhs = killing_form(x, bracket(y, z));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("trace check and algebra mismatch") {
  Matrix<Q> m = zeros<Q>(2, 2);
  m(0, 0) = Q(1);
  CHECK_THROWS_AS(LieElement<Q>(SlAlgebra<Q>(2), m), std::invalid_argument);
  CHECK_THROWS_AS(bracket(unit<Q>(2, 0, 1), unit<Q>(3, 0, 1)), AlgebraMismatch);
  CHECK_THROWS_AS(SlAlgebra<Q>(1), std::invalid_argument);
}

TEST_CASE("coordinates round trip") {
  for (int n = 2; n <= 4; ++n) {
    const SlAlgebra<Q> alg(n);
    const Matrix<Q> x = testgen::random_traceless<Q>(n);
    CHECK(alg.from_coords(alg.coords(x)) == x);
    for (int b = 0; b < alg.dimension(); ++b) {
      Vector<Q> e = alg.coords(alg.basis_element(b));
      for (int c = 0; c < alg.dimension(); ++c) CHECK(e(c) == Q(b == c ? 1 : 0));
    }
  }
}

TEST_CASE("principal triple relations") {
  const auto t3 = principal_triple<Q>(3);
  CHECK(t3.q_minus.matrix()(1, 0) == Q(2));
  CHECK(t3.q_minus.matrix()(2, 1) == Q(2));
  for (int n = 2; n <= 6; ++n) {
    const auto t = principal_triple<Q>(n);
    CHECK(bracket(t.h, t.q_plus).matrix() == t.q_plus.scaled(Q(2)).matrix());
    CHECK(bracket(t.h, t.q_minus).matrix() == t.q_minus.scaled(Q(-2)).matrix());
    CHECK(bracket(t.q_plus, t.q_minus).matrix() == t.h.matrix());
  }
}

TEST_CASE("grading") {
  const auto t = principal_triple<Q>(3);
  const auto g = grade(unit<Q>(3, 0, 2), t);
  REQUIRE(g.size() == 1);
  CHECK(g.begin()->first == 2);
  for (int n = 2; n <= 5; ++n) {
    const auto tn = principal_triple<Q>(n);
    const LieElement<Q> x(SlAlgebra<Q>(n), testgen::random_traceless<Q>(n));
    LieElement<Q> sum = LieElement<Q>::zero(x.algebra());
    for (const auto& [j, c] : grade(x, tn)) {
      CHECK(bracket(tn.h, c).matrix() == c.scaled(Q(2 * j)).matrix());
      sum = sum + c;
    }
    CHECK(sum.matrix() == x.matrix());
  }
}

TEST_CASE("invariant generators") {
  const auto t3 = principal_triple<Q>(3);
  CHECK(invariants_basis(t3, 2)->matrix() == unit<Q>(3, 0, 2).matrix());
  CHECK_FALSE(invariants_basis(t3, 0).has_value());
  CHECK_FALSE(invariants_basis(t3, 3).has_value());
  for (int n = 2; n <= 6; ++n) {
    const auto t = principal_triple<Q>(n);
    for (int j = 1; j < n; ++j) {
      const auto u = *invariants_basis(t, j);
      CHECK(is_zero_matrix<Q>(bracket(t.q_plus, u).matrix(), 0));
      CHECK(bracket(t.h, u).matrix() == u.scaled(Q(2 * j)).matrix());
      // ad(q_-)^{2j+1} u = 0 and ad(q_-)^{2j} u != 0
      CHECK(is_zero_matrix<Q>(ad_power(t.q_minus, u, 2 * j + 1).matrix(), 0));
      CHECK_FALSE(is_zero_matrix<Q>(ad_power(t.q_minus, u, 2 * j).matrix(), 0));
    }
  }
}

TEST_CASE("Killing identity for powers of ad(q_-)") {
  for (int n = 2; n <= 5; ++n) {
    const auto t = principal_triple<Q>(n);
    for (int j = 1; j < n; ++j)
      for (int jp = 1; jp < n; ++jp) {
        const auto vj = invariants_basis(t, j)->scaled(Q(mpq_class(2), mpq_class(1)));
        const auto vjp = invariants_basis(t, jp)->scaled(Q(mpq_class(-1), mpq_class(3)));
        for (int l = 0; l <= 2 * j; ++l)
          for (int lp = 0; lp <= 2 * jp; ++lp) {
            const auto r = killing_adpower_identity_check(t, j, l, jp, lp, vj, vjp);
            CHECK(r.pass);
            CHECK(r.value == r.expected);
            if (j == jp && l + lp == 2 * j) {
              const auto s = killing_adpower_identity_check(t, j, l, j, lp, vj, vj);
              const Q base = graded_hermitian(t, j, vj, vj);
              CHECK(s.value == (((l - j) % 2 == 0) ? base : -base));
            }
          }
      }
  }
}

TEST_CASE("sym_action is a homomorphism") {
  for (int j = 0; j <= 4; ++j) {
    CHECK(sym_action<Q>(Matrix<Q>(-identity<Q>(2)), j) == identity<Q>(2 * j + 1));
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix<Q> a = testgen::random_sl2z<Q>(), b = testgen::random_sl2z<Q>();
      CHECK(sym_action<Q>(Matrix<Q>(a * b), j) == Matrix<Q>(sym_action<Q>(a, j) * sym_action<Q>(b, j)));
    }
  }
  Matrix<Q> bad = identity<Q>(2);
  bad(0, 0) = Q(2);
  CHECK_THROWS_AS(sym_action<Q>(bad, 1), NotUnimodular);
}

TEST_CASE("sym_power matches polynomial substitution") {
  // P(x, y) = x^2 y at (x, y) -> (ax + cy, bx + dy), checked by evaluation.
  const CMat m = testgen::random_sl2c();
  const CMat s = sym_power<cplx>(m, 3);
  const cplx x = {0.3, -0.7}, y = {1.1, 0.2};
  const cplx xx = m(0, 0) * x + m(1, 0) * y, yy = m(0, 1) * x + m(1, 1) * y;
  const cplx direct = xx * xx * yy;
  cplx via = 0;
  for (int k = 0; k <= 3; ++k) via += s(k, 1) * std::pow(x, 3 - k) * std::pow(y, k);
  CHECK(std::abs(direct - via) < 1e-12);
}

TEST_CASE("principal embedding") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(iota_G<Q>(identity<Q>(2), n) == identity<Q>(n));
    const auto t = principal_triple<Q>(n);
    Matrix<Q> e = zeros<Q>(2, 2), f = zeros<Q>(2, 2);
    e(0, 1) = Q(1);
    f(1, 0) = Q(1);
    CHECK(iota_G<Q>(exp_nilpotent(e), n) == exp_nilpotent(t.q_plus.matrix()));
    CHECK(iota_G<Q>(exp_nilpotent(f), n) == exp_nilpotent(t.q_minus.matrix()));
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix<Q> a = testgen::random_sl2z<Q>(), b = testgen::random_sl2z<Q>();
      CHECK(iota_G<Q>(Matrix<Q>(a * b), n) == Matrix<Q>(iota_G<Q>(a, n) * iota_G<Q>(b, n)));
    }
  }
  const Matrix<Q> m = testgen::random_sl2z<Q>();
  CHECK(iota_G<Q>(m, 2) == m);
}

TEST_CASE("varsigma is equivariant") {
  for (int n = 2; n <= 4; ++n) {
    const auto t = principal_triple<Q>(n);
    const SlAlgebra<Q> alg(n);
    for (int j = 1; j < n; ++j) {
      const auto u = *invariants_basis(t, j);
      const Matrix<Q> vs = varsigma_matrix(t, j, u);
      for (int rep = 0; rep < 3; ++rep) {
        const Matrix<Q> m = testgen::random_sl2z<Q>();
        const Matrix<Q> g = iota_G<Q>(m, n);
        const Matrix<Q> ginv = *linalg::inverse<Q>(g);
        const Matrix<Q> lhs = vs * sym_action<Q>(m, j);
        const Matrix<Q> rhs = adjoint_matrix(alg, g, ginv) * vs;
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("invariant form on V_2j") {
  for (int j = 1; j <= 3; ++j) {
    const CMat b = sym_invariant_form(j);
    for (int rep = 0; rep < 3; ++rep) {
      const CMat s = sym_action<cplx>(testgen::random_sl2c(), j);
      CHECK((s.transpose() * b * s - b).norm() < 1e-9 * b.norm());
    }
    CHECK(invariant_norm(j) != doctest::Approx(0.0));
  }
}
