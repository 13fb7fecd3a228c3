#include "doctest.h"
#include "gen.hpp"
#include "operlab/pairing.hpp"

using namespace operlab;
using namespace operlab::pairing;
using namespace operlab::fuchsian;

namespace {

CVec random_vec(Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = testgen::random_cplx();
  return v;
}

std::vector<PairingModule<cplx>> modules(const Fixture& fx) {
  std::vector<PairingModule<cplx>> out;
  out.push_back(adjoint_pairing_module<cplx>(fx.rep, 2));
  out.push_back(adjoint_pairing_module<cplx>(fx.rep, 3));
  for (int j = 1; j <= 3; ++j) out.push_back(sym_pairing_module<cplx>(fx.rep, j));
  return out;
}

}  // namespace

TEST_CASE("verdicts combine with FAIL dominating") {
  CHECK(combine({Verdict::pass, Verdict::pass}) == Verdict::pass);
  CHECK(combine({Verdict::pass, Verdict::inconclusive}) == Verdict::inconclusive);
  CHECK(combine({Verdict::inconclusive, Verdict::fail}) == Verdict::fail);
  CHECK(std::string(verdict_name(Verdict::inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("cup product is skew and descends to cohomology") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto fx = fixture_group(name);
    for (const auto& mod : modules(fx)) {
      CAPTURE(mod.act.label);
      const auto coh = surface::h1p_basis(mod.act);
      const CMat z = coh.z1p.basis;
      const CMat cob = surface::coboundary_map(mod.act);
      for (int trial = 0; trial < 20; ++trial) {
        const CVec a = z * random_vec(z.cols()), b = z * random_vec(z.cols());
        const CVec x = random_vec(mod.act.dim);
        const CVec dx = cob * x;
        const double scale = goldman_rounding_scale(mod, a, b) + goldman_rounding_scale(mod, b, a);
        CHECK(std::abs(goldman_pairing(mod, a, b) + goldman_pairing(mod, b, a)) < 1e-10 * scale);
        CHECK(std::abs(goldman_pairing(mod, a, a)) < 1e-10 * goldman_rounding_scale(mod, a, a));
        CHECK(std::abs(goldman_pairing(mod, a, dx)) < 1e-9 * goldman_rounding_scale(mod, a, dx));
        CHECK(std::abs(goldman_pairing(mod, dx, a)) < 1e-9 * goldman_rounding_scale(mod, dx, a));
      }
    }
  }
}

TEST_CASE("cup product is exactly skew in rational arithmetic") {
  for (const char* name : {"once_punctured_torus", "gamma0_4"}) {
    CAPTURE(name);
    const auto fx = fixture_group(name);
    for (int n : {2, 3}) {
      const auto mod = exact_adjoint_module(fx.rep, n);
      const Matrix<QComplex> z = exact_parabolic_cocycles(mod);
      CHECK(z.cols() > 0);
      for (Eigen::Index a = 0; a < z.cols(); ++a)
        for (Eigen::Index b = 0; b < z.cols(); ++b) {
          const QComplex ab = goldman_pairing<QComplex>(mod, z.col(a), z.col(b));
          const QComplex ba = goldman_pairing<QComplex>(mod, z.col(b), z.col(a));
          CHECK((ab + ba).is_zero());
        }
      // coboundaries pair to zero exactly
      Vector<QComplex> x = zeros<QComplex>(mod.act.dim, 1);
      for (int i = 0; i < mod.act.dim; ++i) x(i) = QComplex(testgen::small_int(-3, 3));
      Vector<QComplex> dx(static_cast<Eigen::Index>(mod.act.presentation.generator_count()) * mod.act.dim);
      for (int g = 0; g < mod.act.presentation.generator_count(); ++g)
        dx.segment(static_cast<Eigen::Index>(g) * mod.act.dim, mod.act.dim) = (mod.act.gens[g] - identity<QComplex>(mod.act.dim)) * x;
      CHECK(goldman_pairing<QComplex>(mod, z.col(0), dx).is_zero());
    }
  }
}

TEST_CASE("real cocycles give real pairings and are isotropic") {
  const auto fx = fixture_group("once_punctured_torus");
  const auto rmod = adjoint_pairing_module<double>(fx.rep, 2);
  const auto cmod = adjoint_pairing_module<cplx>(fx.rep, 2);
  const auto coh = surface::h1p_basis(rmod.act);
  for (Eigen::Index a = 0; a < coh.h1p.cols(); ++a) {
    const CVec v = coh.h1p.col(a).cast<cplx>();
    CHECK(std::abs(hermitian_pairing(cmod, v, v)) < 1e-10);
    for (Eigen::Index b = 0; b < coh.h1p.cols(); ++b) {
      const double g = goldman_pairing<double>(rmod, coh.h1p.col(a), coh.h1p.col(b));
      CHECK(std::abs(goldman_pairing<cplx>(cmod, v, coh.h1p.col(b).cast<cplx>()) - g) < 1e-10);
    }
  }
}

TEST_CASE("hermitian pairing is hermitian") {
  const auto fx = fixture_group("gamma0_4");
  const auto mod = sym_pairing_module<cplx>(fx.rep, 2);
  const CMat z = surface::h1p_basis(mod.act).z1p.basis;
  for (int trial = 0; trial < 20; ++trial) {
    const CVec a = z * random_vec(z.cols()), b = z * random_vec(z.cols());
    const double scale = goldman_rounding_scale(mod, a, CVec(b.conjugate()));
    CHECK(std::abs(hermitian_pairing(mod, a, b) - std::conj(hermitian_pairing(mod, b, a))) < 1e-10 * scale);
  }
}

TEST_CASE("non-parabolic cocycles are rejected") {
  const auto fx = fixture_group("gamma0_4");
  const auto mod = sym_pairing_module<cplx>(fx.rep, 1);
  const CMat z1 = surface::cocycle_space(mod.act).basis;
  const auto coh = surface::h1p_basis(mod.act);
  // some cocycle outside Z^1_P
  CVec bad;
  for (Eigen::Index c = 0; c < z1.cols(); ++c) {
    const CVec v = z1.col(c);
    if ((v - coh.z1p.basis * (coh.z1p.basis.adjoint() * v)).norm() > 1e-3) {
      bad = v;
      break;
    }
  }
  REQUIRE(bad.size() > 0);
  CHECK_THROWS_AS(goldman_pairing(mod, bad, bad), NonParabolicCocycle);
  CHECK_THROWS_AS(goldman_gram(mod, CMat(bad)), NonParabolicCocycle);
}

TEST_CASE("pairing is nondegenerate on H1_P") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto fx = fixture_group(name);
    for (const auto& mod : modules(fx)) {
      CAPTURE(mod.act.label);
      const auto coh = surface::h1p_basis(mod.act);
      const CMat g = goldman_gram(mod, coh.h1p);
      CHECK(g == goldman_gram_serial(mod, coh.h1p));
      const auto rep = make_gram_report(g, GramReport::Symmetry::skew, {});
      CHECK(rep.nondegenerate == Verdict::pass);
      double scale = 0.0;
      for (Eigen::Index a = 0; a < coh.h1p.cols(); ++a)
        for (Eigen::Index b = 0; b < coh.h1p.cols(); ++b)
          scale = std::max(scale, goldman_rounding_scale(mod, CVec(coh.h1p.col(a)), CVec(coh.h1p.col(b))));
      if (g.size() > 0) CHECK((g + g.transpose()).cwiseAbs().maxCoeff() < 1e-10 * scale);
    }
  }
}

TEST_CASE("Petersson integral") {
  const auto fx = fixture_group("gamma0_4");
  const auto f = fixture_forms(fx, 6).at(0);
  const cplx p = petersson_integral(f, f, 2, fx.domain);
  CHECK(p.real() > 0.0);
  CHECK(std::abs(p.imag()) < 1e-12 * p.real());
  CuspForm zero = f.form();
  std::fill(zero.coeffs.begin(), zero.coeffs.end(), cplx(0.0));
  CHECK(petersson_integral(f, ModularForm(zero, fx), 2, fx.domain) == cplx(0.0));
  CuspForm twice = f.form();
  for (auto& c : twice.coeffs) c *= 2.0;
  CHECK(std::abs(petersson_integral(ModularForm(twice, fx), f, 2, fx.domain) - 2.0 * p) < 1e-10 * p.real());
  const auto torus = fixture_group("once_punctured_torus");
  const auto fs = fixture_forms(torus, 6);
  const cplx ab = petersson_integral(fs[0], fs[1], 2, torus.domain);
  const cplx ba = petersson_integral(fs[1], fs[0], 2, torus.domain);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-8);
}

TEST_CASE("developing map grid reproduces the canonical map") {
  const auto fx = fixture_group("gamma0_4");
  const auto f = fixture_forms(fx, 6).at(0);
  std::vector<cplx> d, dd;
  const int nx = 3, ny = 3;
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < ny; ++k) {
      d.emplace_back(-2.0 + 2.0 * i, 0.001 + 5.0 * k);
      dd.emplace_back(1.0);
    }
  // bilinear interpolation is exact for the identity
  const auto dev = DevelopingMapData::from_grid(-2.0, 2.0, 0.001, 10.001, nx, ny, d, dd);
  CHECK(std::abs(dev.delta(cplx(0.3, 1.7)) - cplx(0.3, 1.7)) < 1e-14);
  QuadratureOptions opt;
  opt.max_level = 3;
  const cplx a = petersson_integral(f, f, 2, fx.domain, {}, opt), b = petersson_integral(f, f, 2, fx.domain, dev, opt);
  CHECK(std::abs(a - b) < 1e-9 * a.real());
  dd[4] = 0.0;
  CHECK_THROWS(DevelopingMapData::from_grid(-2.0, 2.0, 0.001, 10.001, nx, ny, d, dd));
}

TEST_CASE("cross validation finds a single real constant") {
  struct Case {
    const char* fixture;
    int j;
  };
  std::vector<cplx> constants;
  for (const auto& c : {Case{"gamma0_4", 2}, Case{"once_punctured_torus", 1}, Case{"once_punctured_torus", 2}}) {
    CAPTURE(c.fixture);
    CAPTURE(c.j);
    const auto fx = fixture_group(c.fixture);
    const auto forms = fixture_forms(fx, 2 * c.j + 2);
    const auto cv = cross_validate(forms, fx, c.j);
    CHECK(cv.verdict == Verdict::pass);
    CHECK(cv.residual < 1e-3);
    CHECK(cv.constant.real() > 0.0);
    CHECK(std::abs(cv.constant.imag()) < 1e-8);
    constants.push_back(cv.constant);
    const auto gram = make_gram_report(cv.cocycle_gram, GramReport::Symmetry::hermitian, {});
    CHECK(gram.positive_definite == Verdict::pass);
  }
  for (const auto& c : constants) CHECK(std::abs(c - constants.front()) < 1e-3 * std::abs(constants.front()));
  // scaling the form leaves c unchanged
  const auto fx = fixture_group("gamma0_4");
  CuspForm twice = fixture_forms(fx, 6).at(0).form();
  for (auto& a : twice.coeffs) a *= 2.0;
  const auto cv2 = cross_validate({ModularForm(twice, fx)}, fx, 2);
  CHECK(std::abs(cv2.constant - constants.front()) < 1e-6);
  CHECK(cross_validate({}, fx, 2).verdict == Verdict::pass);
}

TEST_CASE("transversality of real and holomorphic classes") {
  const auto fx = fixture_group("once_punctured_torus");
  for (int n : {2, 3}) {
    CAPTURE(n);
    const CMat holo = holomorphic_adjoint_cocycles(fx, n);
    const auto rep = transversality_check(adjoint_pairing_module<double>(fx.rep, n), adjoint_pairing_module<cplx>(fx.rep, n), holo);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.real_dim == (n == 2 ? 2 : 6));
    CHECK(rep.holo_dim == (n == 2 ? 1 : 3));
    CHECK(rep.stacked_rank == 2 * rep.complex_dim);
    CHECK(rep.gap > 1e2);
  }
  // a real class offered as holomorphic intersects the real subspace
  const auto rmod = adjoint_pairing_module<double>(fx.rep, 2);
  const auto real_coh = surface::h1p_basis(rmod.act);
  const CMat fake = real_coh.h1p.leftCols(1).cast<cplx>();
  const auto bad = transversality_check(rmod, adjoint_pairing_module<cplx>(fx.rep, 2), fake);
  CHECK(bad.verdict == Verdict::fail);
}

TEST_CASE("Hodge axioms") {
  const auto fx = fixture_group("gamma0_4");
  const auto forms = fixture_forms(fx, 6);
  const auto rep = hodge_report(forms, fx, 2);
  CHECK(rep.verdict() == Verdict::pass);
  CHECK(rep.axioms.size() == 4);
  for (const auto& a : rep.axioms) {
    CAPTURE(a.name);
    CHECK(a.verdict == Verdict::pass);
    CHECK(a.residual < 1e-8);
  }
  // swapping the two pieces keeps every residual and negates the positivity margin
  const auto mod = sym_pairing_module<cplx>(fx.rep, 2);
  const auto chart = surface::h1p_basis(surface::sym_module<double>(fx.rep, 2));
  const CVec z = es::es_cocycle(forms[0], fx, 2).values;
  const auto swapped = hodge_report(mod, chart, CMat(z.conjugate()), CMat(z));
  CHECK(swapped.axioms[2].verdict == Verdict::fail);
  CHECK(swapped.axioms[2].margin == doctest::Approx(-rep.axioms[2].margin));
  for (int i : {0, 1, 3}) CHECK(swapped.axioms[i].verdict == Verdict::pass);
  // no forms and no cohomology: vacuous
  const auto empty = hodge_report({}, fx, 1);
  CHECK(empty.verdict() == Verdict::pass);
}
