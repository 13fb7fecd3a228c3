#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "operlab/surface_group.hpp"

using namespace operlab;
using namespace operlab::surface;

namespace {

const char* kFixtures[] = {"once_punctured_torus", "gamma0_4", "genus2_closed"};

template <class T>
ModuleAction<T> trivial_action(const SurfacePresentation& p, int d) {
  std::vector<Matrix<T>> g(static_cast<std::size_t>(p.generator_count()), Matrix<T>::Identity(d, d));
  return {p, g};
}

// Joint fixed space of the generators, computed directly.
template <class T>
int fixed_dimension(const ModuleAction<T>& act) {
  return static_cast<int>(linalg::nullspace_svd<Matrix<T>>(coboundary_map(act)).first.cols());
}

Word random_word(const SurfacePresentation& p, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({testgen::small_int(0, p.generator_count() - 1), testgen::small_int(0, 1) ? 1 : -1});
  return w;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Size of the terms summed when z is extended to w: sum_m |P_{m-1}| |z(y_m)|.
template <class T>
double rounding_scale(const ModuleAction<T>& act, const Vector<T>& z, const Word& w) {
  double total = 1.0;
  Matrix<T> prefix = Matrix<T>::Identity(act.dim, act.dim);
  for (const auto& l : w) {
    total += prefix.norm() * act.letter(l).norm() * z.segment(static_cast<Eigen::Index>(l.gen) * act.dim, act.dim).norm();
    prefix = prefix * act.letter(l);
  }
  return total;
}

// dimension of H^1_P for the adjoint module: 2(g-1) dim G + r (dim G - rank G)
int adjoint_expected(const SurfacePresentation& p, int n) {
  const int dim = n * n - 1, rk = n - 1;
  return 2 * (p.g - 1) * dim + p.r * (dim - rk);
}

int sym_expected(const SurfacePresentation& p, int j) { return 2 * std::max(0, (2 * j + 1) * (p.g - 1) + j * p.r); }

}  // namespace

TEST_CASE("presentation basics") {
  const SurfacePresentation p(2, 1);
  CHECK(p.generator_count() == 5);
  CHECK(p.name(0) == "A1");
  CHECK(p.name(3) == "B2");
  CHECK(p.name(4) == "T1");
  CHECK(p.relator().size() == 9);
  CHECK_THROWS_AS(p.index("C1"), UnknownGenerator);
  CHECK_THROWS_AS(SurfacePresentation(1, 0), std::invalid_argument);
  const Word w = p.parse_word("A1 b2 T1^-1");
  CHECK(w.size() == 3);
  CHECK(w[1].gen == 3);
  CHECK(w[1].exp == -1);
  CHECK(w[2].exp == -1);
}

TEST_CASE("evaluate words") {
  const auto rep = testfx::rep("once_punctured_torus");
  const auto& p = rep.presentation;
  CHECK(rep.evaluate({}) == RMat::Identity(2, 2));
  CHECK((rep.evaluate(p.parse_word("A1 a1")) - RMat::Identity(2, 2)).norm() < 1e-14);
  CHECK(rep.evaluate(p.parse_word("A1 B1 a1 b1")).trace() == doctest::Approx(-2.0));
  for (const char* name : kFixtures) CHECK_NOTHROW(testfx::rep(name).validate());
}

TEST_CASE("relator map") {
  const SurfacePresentation p(1, 1);
  const auto triv = trivial_action<double>(p, 3);
  const RMat rel = cocycle_relator_map(triv);
  // z(relator) = z(T1)
  CHECK(rel.leftCols(6).norm() == 0.0);
  CHECK((rel.rightCols(3) - RMat::Identity(3, 3)).norm() == 0.0);
  CHECK(cocycle_space(triv).dim() == 6);

  for (const char* name : {"once_punctured_torus", "gamma0_4"}) {
    const auto rep = testfx::rep(name);
    const auto& pp = rep.presentation;
    std::vector<ModuleAction<double>> acts{adjoint_action<double>(rep, 2), adjoint_action<double>(rep, 3),
                                           sym_module<double>(rep, 1), sym_module<double>(rep, 2),
                                           trivial_action<double>(pp, 2)};
    for (const auto& act : acts) {
      // free group on 2g + r - 1 letters: dim Z^1 = (2g + r - 1) d and
      // dim H^1 = dim Z^1 - dim B^1 = (2g + r - 2) d + dim H^0
      const int z1 = cocycle_space(act).dim();
      CHECK(z1 == (pp.generator_count() - 1) * act.dim);
      CHECK(z1 - coboundary_space(act).dim() == (pp.generator_count() - 2) * act.dim + fixed_dimension(act));
      const RMat r = cocycle_relator_map(act);
      const RMat b = coboundary_map(act);
      CHECK((r * b).norm() < 1e-9 * std::max(1.0, b.norm()));
    }
  }
  // inconsistent action
  auto bad = adjoint_action<double>(testfx::rep("once_punctured_torus"), 2);
  bad.gens[0] = RMat::Identity(3, 3) * 2.0;
  bad.inverses[0] = RMat::Identity(3, 3) * 0.5;
  CHECK_THROWS_AS(cocycle_relator_map(bad), InconsistentAction);
}

TEST_CASE("parabolic subspace and coboundaries") {
  const auto g2 = testfx::rep("genus2_closed");
  const auto act2 = adjoint_action<double>(g2, 2);
  CHECK(parabolic_subspace(act2).dim() == cocycle_space(act2).dim());

  const SurfacePresentation p(1, 1);
  const auto triv = trivial_action<double>(p, 2);
  const auto zp = parabolic_subspace(triv);
  CHECK(zp.dim() == 4);
  CHECK(zp.basis.bottomRows(2).norm() < 1e-12);
  CHECK(coboundary_space(triv).dim() == 0);

  const auto torus = testfx::rep("once_punctured_torus");
  const auto ad = adjoint_action<double>(torus, 2);
  CHECK(coboundary_space(ad).dim() == 3);
  CHECK(parabolic_subspace(ad).dim() == coboundary_space(ad).dim() + 2);
  // x in the joint fixed space of the trivial action gives the zero coboundary
  CHECK((coboundary_map(triv) * RVec::Ones(2)).norm() == 0.0);
}

TEST_CASE("H^1_P dimensions on the fixtures") {
  for (const char* name : kFixtures) {
    const auto rep = testfx::rep(name);
    const auto& p = rep.presentation;
    for (int n = 2; n <= 3; ++n) {
      const auto c = h1p_basis(adjoint_action<double>(rep, n));
      CAPTURE(name);
      CAPTURE(n);
      CHECK(c.h1p_dim() == adjoint_expected(p, n));
      CHECK(c.min_gap() > 1e3);
      CHECK(h1p_dimension(adjoint_action<cplx>(rep, n)) == adjoint_expected(p, n));
    }
    for (int j = 1; j <= 3; ++j) {
      CAPTURE(name);
      CAPTURE(j);
      CHECK(h1p_dimension(sym_module<double>(rep, j)) == sym_expected(p, j));
      CHECK(h1p_dimension(sym_module<cplx>(rep, j)) == sym_expected(p, j));
    }
  }
}

TEST_CASE("adjoint sl3 splits as V2 + V4 on the torus") {
  const auto rep = testfx::rep("once_punctured_torus");
  CHECK(h1p_dimension(adjoint_action<double>(rep, 3)) ==
        h1p_dimension(sym_module<double>(rep, 1)) + h1p_dimension(sym_module<double>(rep, 2)));
}

TEST_CASE("parabolic cocycles satisfy the cocycle identity on words") {
  for (const char* name : kFixtures) {
    const auto rep = testfx::rep(name);
    const auto act = sym_module<double>(rep, 2);
    const auto zp = parabolic_subspace(act);
    for (int k = 0; k < zp.dim(); ++k) {
      const RVec z = zp.basis.col(k);
      for (int rep_i = 0; rep_i < 50; ++rep_i) {
        const Word a = random_word(act.presentation, testgen::small_int(1, 4));
        const Word b = random_word(act.presentation, testgen::small_int(1, 4));
        const RVec lhs = cocycle_value(act, z, concat(a, b));
        const RVec za = cocycle_value(act, z, a), azb = act.evaluate(a) * cocycle_value(act, z, b);
        CHECK((lhs - za - azb).norm() < 1e-9 * rounding_scale(act, z, concat(a, b)));
      }
      // the relator is sent to zero
      CHECK(cocycle_value(act, z, act.presentation.relator()).norm() < 1e-9);
    }
  }
}

TEST_CASE("restriction to punctures") {
  for (const char* name : {"once_punctured_torus", "gamma0_4"}) {
    const auto rep = testfx::rep(name);
    const auto act = adjoint_action<double>(rep, 2);
    const auto& p = act.presentation;
    const auto c = h1p_basis(act);
    for (int k = 0; k < c.z1p.dim(); ++k)
      for (int i = 0; i < p.r; ++i) CHECK(restriction_to_puncture(act, RVec(c.z1p.basis.col(k)), i).norm() < 1e-9);
    for (int k = 0; k < c.b1.dim(); ++k)
      for (int i = 0; i < p.r; ++i) CHECK(restriction_to_puncture(act, RVec(c.b1.basis.col(k)), i).norm() < 1e-9);
    // cocycles outside Z^1_P restrict nontrivially, and the kernel of the
    // total restriction on Z^1 is exactly Z^1_P
    REQUIRE(c.z1.dim() > c.z1p.dim());
    RMat outside = c.z1.basis - c.z1p.basis * (c.z1p.basis.transpose() * c.z1.basis);
    const auto [out_basis, info] = linalg::column_space<RMat>(outside);
    CHECK(out_basis.cols() == c.z1.dim() - c.z1p.dim());
    double smallest = 1e300;
    for (int k = 0; k < out_basis.cols(); ++k) {
      double total = 0.0;
      for (int i = 0; i < p.r; ++i) total += restriction_to_puncture(act, RVec(out_basis.col(k)), i).norm();
      smallest = std::min(smallest, total);
    }
    CHECK(smallest > 1e-6);
    RMat restr(0, c.z1.dim());
    for (int i = 0; i < p.r; ++i) {
      RMat block(0, c.z1.dim());
      for (int k = 0; k < c.z1.dim(); ++k) {
        const RVec v = restriction_to_puncture(act, RVec(c.z1.basis.col(k)), i);
        if (block.rows() == 0) block.resize(v.size(), c.z1.dim());
        block.col(k) = v;
      }
      RMat stacked(restr.rows() + block.rows(), c.z1.dim());
      stacked << restr, block;
      restr = stacked;
    }
    CHECK(c.z1.dim() - linalg::rank_info(restr).rank == c.z1p.dim());
  }
}
