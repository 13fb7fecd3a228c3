#include "operlab/eichler_shimura.hpp"

#include "operlab/gauss.hpp"
#include "operlab/linalg.hpp"

#include <cmath>

namespace operlab::es {

namespace {

using fuchsian::ModularForm;

CVec integrand(const ModularForm& f, int j, cplx z) {
  const cplx fz = f.evaluate(z).value;
  CVec v(2 * j + 1);
  // (zx + y)^{2j}: coefficient of x^{2j-s} y^s is binom(2j, s) z^{2j-s}
  double binom = 1.0;
  for (int s = 0; s <= 2 * j; ++s) {
    v(s) = binom * std::pow(z, 2 * j - s) * fz;
    binom = binom * (2 * j - s) / (s + 1);
  }
  return v;
}

struct Piece {
  CVec value;
  double mass;  ///< integral of the componentwise modulus
};

Piece gauss_piece(const ModularForm& f, int j, cplx a, cplx b, const quad::GaussRule& rule) {
  Piece p{CVec::Zero(2 * j + 1), 0.0};
  const cplx h = b - a;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const CVec v = integrand(f, j, a + rule.nodes[i] * h) * (rule.weights[i] * h);
    p.value += v;
    p.mass += v.cwiseAbs().sum();
  }
  return p;
}

void adapt(const ModularForm& f, int j, cplx a, cplx b, const Piece& whole, double budget, int depth,
           const ESConfig& cfg, const quad::GaussRule& rule, CVec& acc) {
  const cplx m = 0.5 * (a + b);
  const Piece left = gauss_piece(f, j, a, m, rule), right = gauss_piece(f, j, m, b, rule);
  const CVec refined = left.value + right.value;
  const double err = (refined - whole.value).cwiseAbs().maxCoeff();
  if (err <= budget) {
    acc += refined;
    return;
  }
  if (depth >= cfg.max_depth) throw fuchsian::QuadratureFailure("period integral did not converge", err);
  adapt(f, j, a, m, left, 0.5 * budget, depth + 1, cfg, rule, acc);
  adapt(f, j, m, b, right, 0.5 * budget, depth + 1, cfg, rule, acc);
}

}  // namespace

CVec segment_integral(const ModularForm& f, int j, cplx a, cplx b, const ESConfig& cfg) {
  if (a.imag() <= 0.0 || b.imag() <= 0.0) throw std::domain_error("period path leaves the upper half plane");
  CVec acc = CVec::Zero(2 * j + 1);
  if (a == b) return acc;
  const auto& rule = quad::gauss_legendre(cfg.order);
  const Piece whole = gauss_piece(f, j, a, b, rule);
  adapt(f, j, a, b, whole, cfg.tol * std::max(whole.mass, 1e-300), 0, cfg, rule, acc);
  return acc;
}

CVec path_integral(const ModularForm& f, int j, const std::vector<cplx>& points, const ESConfig& cfg) {
  CVec acc = CVec::Zero(2 * j + 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) acc += segment_integral(f, j, points[i], points[i + 1], cfg);
  return acc;
}

CVec eichler_integral(const ModularForm& f, int j, const RMat& gamma, const ESConfig& cfg) {
  if (cfg.base_point.imag() <= 0.0) throw std::invalid_argument("base point must lie in the upper half plane");
  if (f.weight() != 2 * j + 2) throw std::invalid_argument("form weight must be 2j + 2");
  return segment_integral(f, j, cfg.base_point, fuchsian::mobius_apply(gamma, cfg.base_point), cfg);
}

double relator_residual(const surface::ModuleAction<cplx>& act, const CVec& z) {
  const CVec r = surface::cocycle_value(act, z, act.presentation.relator());
  return r.cwiseAbs().maxCoeff() / std::max(1.0, z.cwiseAbs().maxCoeff());
}

double parabolicity_residual(const surface::ModuleAction<cplx>& act, const CVec& z) {
  double worst = 0.0;
  for (int i = 0; i < act.presentation.r; ++i)
    worst = std::max(worst, surface::restriction_to_puncture(act, z, i).norm());
  return worst / std::max(1.0, z.cwiseAbs().maxCoeff());
}

namespace {

ESCocycle build(const ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg, bool parallel) {
  const auto& gens = fx.rep.gens;
  const int k = static_cast<int>(gens.size());
  const int d = 2 * j + 1;
  ESCocycle c;
  c.j = j;
  c.form_tag = f.form().tag;
  c.values = CVec::Zero(static_cast<Eigen::Index>(k) * d);
  std::vector<CVec> vals(static_cast<std::size_t>(k));
  std::exception_ptr failure;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < k; ++i) {
      try {
        vals[static_cast<std::size_t>(i)] = eichler_integral(f, j, gens[static_cast<std::size_t>(i)], cfg);
      } catch (...) {
#pragma omp critical
        failure = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < k; ++i) vals[static_cast<std::size_t>(i)] = eichler_integral(f, j, gens[static_cast<std::size_t>(i)], cfg);
  }
  if (failure) std::rethrow_exception(failure);
  for (int i = 0; i < k; ++i) c.values.segment(static_cast<Eigen::Index>(i) * d, d) = vals[static_cast<std::size_t>(i)];
  const auto act = surface::sym_module<cplx>(fx.rep, j);
  c.relator_residual = relator_residual(act, c.values);
  c.parabolicity_residual = parabolicity_residual(act, c.values);
  const double allowed = std::max(cfg.check_tol, 1e2 * cfg.tol);
  if (c.relator_residual > allowed)
    throw ESConsistencyFailure("period cocycle fails the relator identity", c.relator_residual);
  if (c.parabolicity_residual > allowed)
    throw ESConsistencyFailure("period cocycle is not parabolic", c.parabolicity_residual);
  return c;
}

}  // namespace

ESCocycle es_cocycle(const ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg) {
  return build(f, fx, j, cfg, cfg.parallel);
}

ESCocycle es_cocycle_serial(const ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg) {
  return build(f, fx, j, cfg, false);
}

ESCocycle conjugate(const ESCocycle& c) {
  ESCocycle out = c;
  out.values = c.values.conjugate();
  out.holomorphic = !c.holomorphic;
  return out;
}

ESCocycle es_conjugate_cocycle(const ModularForm& f, const fuchsian::Fixture& fx, int j, const ESConfig& cfg) {
  return conjugate(es_cocycle(f, fx, j, cfg));
}

DecompositionReport decomposition_check(const std::vector<ModularForm>& forms, const fuchsian::Fixture& fx, int j,
                                        const ESConfig& cfg, double rank_tol) {
  DecompositionReport rep;
  rep.j = j;
  rep.forms = static_cast<int>(forms.size());
  const auto act = surface::sym_module<cplx>(fx.rep, j);
  const auto coh = surface::h1p_basis(act);
  rep.h1p_dim = coh.h1p_dim();
  rep.coords = CMat::Zero(rep.h1p_dim, 2 * rep.forms);
  for (int k = 0; k < rep.forms; ++k) {
    const auto c = es_cocycle(forms[static_cast<std::size_t>(k)], fx, j, cfg);
    rep.coords.col(k) = coh.class_coords(c.values);
    rep.coords.col(rep.forms + k) = coh.class_coords(c.values.conjugate());
  }
  if (rep.coords.size() > 0) {
    Eigen::JacobiSVD<CMat> svd(rep.coords);
    rep.singular_values = svd.singularValues();
    const double top = rep.singular_values(0);
    for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i)
      if (rep.singular_values(i) > rank_tol * top) ++rep.rank;
    rep.min_ratio = top > 0 ? rep.singular_values(rep.singular_values.size() - 1) / top : 0.0;
  } else {
    rep.min_ratio = 1.0;
  }
  rep.pass = rep.rank == rep.h1p_dim && rep.rank == 2 * rep.forms;
  if (rep.rank < 2 * rep.forms)
    throw DecompositionFailure("holomorphic and antiholomorphic classes are linearly dependent", rep.rank, 2 * rep.forms);
  return rep;
}

}  // namespace operlab::es
