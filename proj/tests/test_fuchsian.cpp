#include "doctest.h"
#include "gen.hpp"
#include "operlab/fuchsian.hpp"
#include "operlab/log.hpp"

#include <numbers>

using namespace operlab;
using namespace operlab::fuchsian;

namespace {

constexpr double kPi = std::numbers::pi;

RMat mat2(double a, double b, double c, double d) {
  RMat m(2, 2);
  m << a, b, c, d;
  return m;
}

cplx random_point() { return {testgen::uniform(-2.0, 2.0), testgen::uniform(0.2, 2.0)}; }

}  // namespace

TEST_CASE("mobius maps act as a homomorphism") {
  CHECK(std::abs(mobius_apply(mat2(0, -1, 1, 0), cplx(0, 1)) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(mobius_apply(mat2(1, 1, 0, 1), cplx(0.5, 2)) - cplx(1.5, 2)) < 1e-15);
  CHECK_THROWS_AS(mobius_apply(mat2(0, -1, 1, 0), cplx(0, 0)), std::domain_error);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testgen::random_sl2z<double>(4), b = testgen::random_sl2z<double>(4);
    const cplx z = random_point();
    const cplx lhs = mobius_apply(RMat(a * b), z), rhs = mobius_apply(a, mobius_apply(b, z));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    CHECK(mobius_apply(a, z).imag() > 0.0);
  }
}

TEST_CASE("ideal triangle map sends the standard triangle to the target") {
  const IdealPoint inf{true, 0.0};
  for (auto [a, b, c] : std::vector<std::array<IdealPoint, 3>>{{IdealPoint{false, -0.5}, IdealPoint{false, 0.0}, inf},
                                                               {IdealPoint{false, 0.0}, IdealPoint{false, 0.5}, IdealPoint{false, 2.0}},
                                                               {inf, IdealPoint{false, -3.0}, IdealPoint{false, 1.0}}}) {
    const RMat m = ideal_triangle_map(a, b, c);
    CHECK(m.determinant() == doctest::Approx(1.0));
    auto image = [&](double x) {
      const double den = m(1, 0) * x + m(1, 1);
      return IdealPoint{std::abs(den) < 1e-12, std::abs(den) < 1e-12 ? 0.0 : (m(0, 0) * x + m(0, 1)) / den};
    };
    auto infinity_image = [&] {
      return IdealPoint{std::abs(m(1, 0)) < 1e-12, std::abs(m(1, 0)) < 1e-12 ? 0.0 : m(0, 0) / m(1, 0)};
    };
    std::vector<IdealPoint> got{image(-1.0), image(1.0), infinity_image()};
    std::vector<IdealPoint> want{a, b, c};
    // orientation may be swapped between the first two vertices
    auto same = [](const IdealPoint& p, const IdealPoint& q) {
      return p.infinite == q.infinite && (p.infinite || std::abs(p.x - q.x) < 1e-12);
    };
    const bool direct = same(got[0], want[0]) && same(got[1], want[1]);
    const bool swapped = same(got[0], want[1]) && same(got[1], want[0]);
    CHECK((direct || swapped));
    CHECK(same(got[2], want[2]));
  }
}

TEST_CASE("fundamental domain areas") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto fx = fixture_group(name);
    const auto res = domain_area(fx.domain, {});
    CHECK(std::abs(res.value.real() - fx.domain.expected_area) < 1e-6);
    CHECK(std::abs(res.value.imag()) < 1e-12);
  }
  const auto torus = fixture_group("once_punctured_torus");
  CHECK(domain_area(torus.domain, {}).value.real() == doctest::Approx(2 * kPi).epsilon(1e-9));
  const auto g2 = fixture_group("genus2_closed");
  CHECK(domain_area(g2.domain, {}).value.real() == doctest::Approx(4 * kPi).epsilon(1e-9));
}

TEST_CASE("parallel quadrature matches the serial reference") {
  const auto fx = fixture_group("gamma0_4");
  auto h = [](cplx z) { return std::exp(cplx(0, 2 * kPi) * z) / (z.imag() * z.imag()) * z.imag(); };
  QuadratureOptions par, ser;
  par.parallel = true;
  ser.parallel = false;
  const auto a = integrate_domain(h, fx.domain, par), b = integrate_domain(h, fx.domain, ser);
  CHECK(a.value == b.value);
  CHECK(a.levels == b.levels);
}

TEST_CASE("quadrature reports failure when it cannot converge") {
  const auto fx = fixture_group("once_punctured_torus");
  QuadratureOptions opt;
  opt.max_level = 1;
  opt.tol = 1e-15;
  opt.order = 2;
  CHECK_THROWS_AS(domain_area(fx.domain, opt), QuadratureFailure);
}

TEST_CASE("cusp form parsing") {
  const auto f = parse_cusp_form("weight 4 width 1 level 1 t\n1 1 0\n2 -24 0\n3 252 0\n4 -1472 0\n5 4830 0\n6 -6048 0\n"
                                 "7 -16744 0\n8 84480 0\n9 -113643 0\n10 -115920 0\n");
  CHECK(f.weight == 4);
  CHECK(f.truncation() == 10);
  CHECK(f.tag == "t");
  CHECK_THROWS_AS(parse_cusp_form("weight 4 width 1 level 1 t\n0 1 0\n1 1 0\n"), FixtureError);
  CHECK_THROWS_AS(parse_cusp_form("weight 3 width 1 level 1 t\n1 1 0\n"), FixtureError);
  CHECK_THROWS_AS(parse_cusp_form("1 1 0\n"), FixtureError);
  WarningSink::captured().clear();
  (void)parse_cusp_form("weight 4 width 1 level 1 t\n1 1 0\n2 1 0\n");
  CHECK(!WarningSink::captured().empty());
}

TEST_CASE("q-series tail bound dominates the truncation error") {
  for (const char* file : {"w4_torus_eta8.qexp", "w6_torus_eta12.qexp", "w6_torus_e4eta4.qexp", "w6_gamma0_4.qexp"}) {
    CAPTURE(file);
    const auto full = load_cusp_form(std::string(OPERLAB_DATA_DIR) + "/forms/" + file);
    for (int cut : {full.truncation() / 4, full.truncation() / 2}) {
      CuspForm part = full;
      part.coeffs.resize(static_cast<std::size_t>(cut));
      for (int trial = 0; trial < 20; ++trial) {
        const cplx z{testgen::uniform(-1.0, 1.0), testgen::uniform(0.3, 2.0) * full.width};
        const auto a = eval_cusp_form(full, z, 1.0), b = eval_cusp_form(part, z, 1.0);
        CHECK(std::abs(a.value - b.value) <= b.tail_bound + a.tail_bound + 1e-14);
      }
    }
  }
}

TEST_CASE("fixture forms are invariant under the group") {
  for (const auto& name : {"once_punctured_torus", "gamma0_4"}) {
    CAPTURE(name);
    const auto fx = fixture_group(name);
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(random_point());
    for (int k : {4, 6}) {
      for (const auto& f : fixture_forms(fx, k)) {
        CAPTURE(f.form().tag);
        CHECK(f.invariance_residual(pts) < 1e-8);
        for (const cplx z : pts) CHECK(f.evaluate(z).tail_bound < 1e-10 * std::max(1.0, std::abs(f.evaluate(z).value)) + 1e-14);
      }
    }
  }
}

TEST_CASE("reduction agrees with the raw series high in the half plane") {
  const auto fx = fixture_group("once_punctured_torus");
  for (const auto& f : fixture_forms(fx, 6)) {
    for (int trial = 0; trial < 10; ++trial) {
      const cplx z{testgen::uniform(-3.0, 3.0), testgen::uniform(1.0, 2.0)};
      const auto raw = eval_cusp_form(f.form(), z, 1.0);
      CHECK(std::abs(f.evaluate(z).value - raw.value) <= 1e-9 * std::max(1.0, std::abs(raw.value)));
    }
  }
}

TEST_CASE("a form that is not invariant is rejected") {
  const auto fx = fixture_group("gamma0_4");
  const auto f = parse_cusp_form("weight 6 width 1 level 4 bad\n1 1 0\n2 1 0\n3 0 0\n4 0 0\n5 0 0\n6 0 0\n7 0 0\n8 0 0\n9 0 0\n10 0 0\n11 0 0\n");
  CHECK_THROWS_AS(ModularForm(f, fx), FixtureError);
}
