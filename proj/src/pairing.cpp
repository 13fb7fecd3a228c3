#include "operlab/pairing.hpp"

#include "operlab/log.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace operlab::pairing {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Verdict combine(const std::vector<Verdict>& vs) {
  Verdict out = Verdict::pass;
  for (auto v : vs) {
    if (v == Verdict::fail) return Verdict::fail;
    if (v == Verdict::inconclusive) out = Verdict::inconclusive;
  }
  return out;
}

// ------------------------------------------------------------------- exact

PairingModule<QComplex> exact_adjoint_module(const surface::GroupRepresentation& rep, int n) {
  const lie::SlAlgebra<QComplex> alg(n);
  PairingModule<QComplex> mod;
  mod.act.presentation = rep.presentation;
  mod.act.dim = alg.dimension();
  mod.act.label = "adjoint sl" + std::to_string(n) + " (exact)";
  for (const auto& g : rep.gens) {
    Matrix<QComplex> q(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const double v = g(r, c);
        if (v != std::round(v)) throw std::invalid_argument("exact mode needs integer generator matrices");
        q(r, c) = QComplex(static_cast<long>(std::lround(v)));
      }
    const Matrix<QComplex> big = lie::iota_G<QComplex>(q, n);
    const auto big_inv = linalg::inverse<QComplex>(big);
    if (!big_inv) throw std::invalid_argument("singular generator");
    const Matrix<QComplex> ad = lie::adjoint_matrix(alg, big, *big_inv);
    mod.act.gens.push_back(ad);
    mod.act.inverses.push_back(*linalg::inverse<QComplex>(ad));
  }
  const Matrix<QComplex> rel = mod.act.evaluate(mod.act.presentation.relator());
  if (rel != identity<QComplex>(mod.act.dim)) throw surface::InconsistentAction("relator does not act trivially");
  mod.form = lie::killing_gram(alg);
  return mod;
}

Matrix<QComplex> exact_parabolic_cocycles(const PairingModule<QComplex>& mod) {
  const auto& act = mod.act;
  const auto& p = act.presentation;
  const int d = act.dim;
  const Eigen::Index zdim = static_cast<Eigen::Index>(p.generator_count()) * d;
  const Eigen::Index xdim = static_cast<Eigen::Index>(p.r) * d;
  Matrix<QComplex> sys = zeros<QComplex>(d + xdim, zdim + xdim);
  Matrix<QComplex> prefix = identity<QComplex>(d);
  for (const auto& l : p.relator()) {
    auto block = sys.block(0, static_cast<Eigen::Index>(l.gen) * d, d, d);
    if (l.exp > 0)
      block += prefix;
    else
      block -= prefix * act.inverses[l.gen];
    prefix = prefix * act.letter(l);
  }
  for (int i = 0; i < p.r; ++i) {
    const Eigen::Index row = d + static_cast<Eigen::Index>(i) * d;
    sys.block(row, static_cast<Eigen::Index>(p.t(i)) * d, d, d) = identity<QComplex>(d);
    sys.block(row, zdim + static_cast<Eigen::Index>(i) * d, d, d) = identity<QComplex>(d) - act.gens[p.t(i)];
  }
  const Matrix<QComplex> ker = linalg::nullspace_rref<QComplex>(sys);
  // drop directions that only move the slack variables
  const Matrix<QComplex> zpart = ker.topRows(zdim);
  const auto [red, pivots] = linalg::rref<QComplex>(Matrix<QComplex>(zpart.transpose()));
  Matrix<QComplex> out(zdim, static_cast<Eigen::Index>(pivots.size()));
  for (std::size_t r = 0; r < pivots.size(); ++r) out.col(static_cast<Eigen::Index>(r)) = red.row(static_cast<Eigen::Index>(r)).transpose();
  return out;
}

// ---------------------------------------------------------------- pairings

cplx hermitian_pairing(const PairingModule<cplx>& mod, const CVec& z1, const CVec& z2, double tol) {
  return goldman_pairing<cplx>(mod, z1, CVec(z2.conjugate()), tol) / cplx(0.0, 2.0 * kPi);
}

namespace {

// Entries evaluated in parallel; the first exception is rethrown after the loop.
CMat gram_loop(const PairingModule<cplx>& mod, const CMat& left, const CMat& right, double tol) {
  const auto n = left.cols();
  CMat g(n, n);
  std::exception_ptr failure;
#pragma omp parallel for collapse(2)
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      try {
        g(a, b) = goldman_pairing<cplx>(mod, left.col(a), right.col(b), tol);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  if (failure) std::rethrow_exception(failure);
  return g;
}

}  // namespace

CMat goldman_gram(const PairingModule<cplx>& mod, const CMat& cocycles, double tol) {
  return gram_loop(mod, cocycles, cocycles, tol);
}

CMat goldman_gram_serial(const PairingModule<cplx>& mod, const CMat& cocycles, double tol) {
  const auto n = cocycles.cols();
  CMat g(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) g(a, b) = goldman_pairing<cplx>(mod, cocycles.col(a), cocycles.col(b), tol);
  return g;
}

CMat hermitian_gram(const PairingModule<cplx>& mod, const CMat& cocycles, double tol) {
  return gram_loop(mod, cocycles, cocycles.conjugate(), tol) / cplx(0.0, 2.0 * kPi);
}

GramReport make_gram_report(CMat gram, GramReport::Symmetry sym, std::vector<std::string> labels,
                            double nondegeneracy_ratio) {
  GramReport r;
  r.labels = std::move(labels);
  r.symmetry = sym;
  r.gram = std::move(gram);
  const double scale = std::max(r.gram.norm(), 1e-300);
  if (sym == GramReport::Symmetry::skew)
    r.symmetry_residual = (r.gram + r.gram.transpose()).norm() / scale;
  else
    r.symmetry_residual = (r.gram - r.gram.adjoint()).norm() / scale;
  if (r.gram.size() == 0) {
    r.condition_ratio = 1.0;
    r.positive_definite = Verdict::pass;
    return r;
  }
  Eigen::JacobiSVD<CMat> svd(r.gram);
  r.singular_values = svd.singularValues();
  r.condition_ratio = r.singular_values(r.singular_values.size() - 1) / std::max(r.singular_values(0), 1e-300);
  r.nondegenerate = r.condition_ratio > nondegeneracy_ratio ? Verdict::pass : Verdict::fail;
  if (sym == GramReport::Symmetry::hermitian) {
    const CMat h = 0.5 * (r.gram + r.gram.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    r.eigenvalues = es.eigenvalues();
    const double top = r.eigenvalues.cwiseAbs().maxCoeff();
    const double low = r.eigenvalues.minCoeff();
    if (low > nondegeneracy_ratio * top)
      r.positive_definite = Verdict::pass;
    else if (low < -nondegeneracy_ratio * top)
      r.positive_definite = Verdict::fail;
    else
      r.positive_definite = Verdict::inconclusive;
  }
  return r;
}

// --------------------------------------------------------- developing maps

DevelopingMapData DevelopingMapData::from_grid(double x0, double x1, double y0, double y1, int nx, int ny,
                                               std::vector<cplx> delta_values, std::vector<cplx> ddelta_values) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("developing-map grid needs at least 2x2 samples");
  const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  if (delta_values.size() != n || ddelta_values.size() != n) throw std::invalid_argument("developing-map grid size mismatch");
  for (const auto& v : ddelta_values)
    if (std::abs(v) == 0.0) throw std::invalid_argument("developing map has vanishing derivative at a sample");
  auto interp = [=](const std::vector<cplx>& vals) {
    return [=](cplx z) {
      const double fx = std::clamp((z.real() - x0) / (x1 - x0) * (nx - 1), 0.0, nx - 1.0);
      const double fy = std::clamp((z.imag() - y0) / (y1 - y0) * (ny - 1), 0.0, ny - 1.0);
      const int ix = std::min(static_cast<int>(fx), nx - 2), iy = std::min(static_cast<int>(fy), ny - 2);
      const double tx = fx - ix, ty = fy - iy;
      auto at = [&](int a, int b) { return vals[static_cast<std::size_t>(a) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(b)]; };
      return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) + (1 - tx) * ty * at(ix, iy + 1) +
             tx * ty * at(ix + 1, iy + 1);
    };
  };
  DevelopingMapData d;
  d.tag = "grid";
  d.delta = interp(delta_values);
  d.ddelta = interp(ddelta_values);
  return d;
}

cplx petersson_integral(const fuchsian::ModularForm& f1, const fuchsian::ModularForm& f2, int j,
                        const fuchsian::FundamentalDomain& domain, const DevelopingMapData& dev,
                        const fuchsian::QuadratureOptions& opt) {
  if (f1.weight() != 2 * j + 2 || f2.weight() != 2 * j + 2) throw std::invalid_argument("form weight must be 2j + 2");
  double fact = 1.0;
  for (int i = 2; i <= 2 * j; ++i) fact *= i;
  const double pref = std::pow(2.0, 2 * j) / fact / kPi * lie::invariant_norm(j);
  const bool canonical = dev.tag == "canonical";
  auto h = [&](cplx z) -> cplx {
    const cplx a = f1.evaluate(z).value, b = f2.evaluate(z).value;
    if (canonical) return std::pow(z.imag(), 2 * j) * a * std::conj(b);
    const cplx dd = dev.ddelta(z);
    if (std::abs(dd) == 0.0) throw std::domain_error("developing map derivative vanishes");
    return std::pow(dev.delta(z).imag(), 2 * j) * a * std::conj(b) / std::pow(std::abs(dd), 2 * j);
  };
  return pref * fuchsian::integrate_domain(h, domain, opt).value;
}

CrossValidation cross_validate(const std::vector<fuchsian::ModularForm>& forms, const fuchsian::Fixture& fx, int j,
                               const es::ESConfig& cfg, const fuchsian::QuadratureOptions& opt, double threshold) {
  CrossValidation cv;
  const auto n = static_cast<Eigen::Index>(forms.size());
  cv.cocycle_gram = CMat::Zero(n, n);
  cv.petersson_gram = CMat::Zero(n, n);
  if (n == 0) return cv;
  const auto mod = sym_pairing_module<cplx>(fx.rep, j);
  CMat cocycles(static_cast<Eigen::Index>(mod.act.presentation.generator_count()) * mod.act.dim, n);
  for (Eigen::Index k = 0; k < n; ++k) cocycles.col(k) = es::es_cocycle(forms[static_cast<std::size_t>(k)], fx, j, cfg).values;
  cv.cocycle_gram = hermitian_gram(mod, cocycles);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      cv.petersson_gram(a, b) = petersson_integral(forms[static_cast<std::size_t>(a)], forms[static_cast<std::size_t>(b)], j,
                                                   fx.domain, {}, opt);
  const double bb = cv.petersson_gram.squaredNorm();
  if (bb == 0.0) throw std::runtime_error("Petersson Gram matrix is degenerate");
  cv.constant = (cv.petersson_gram.conjugate().cwiseProduct(cv.cocycle_gram)).sum() / bb;
  cv.residual = (cv.cocycle_gram - cv.constant * cv.petersson_gram).norm() / std::max(cv.cocycle_gram.norm(), 1e-300);
  cv.verdict = cv.residual < threshold ? Verdict::pass : Verdict::fail;
  return cv;
}

// ----------------------------------------------------------- transversality

namespace {

// C^n -> R^{2n}
Eigen::MatrixXd realify(const CMat& m) {
  Eigen::MatrixXd out(2 * m.rows(), m.cols());
  out.topRows(m.rows()) = m.real();
  out.bottomRows(m.rows()) = m.imag();
  return out;
}

}  // namespace

TransversalityReport transversality_check(const PairingModule<double>& real_mod, const PairingModule<cplx>& cplx_mod,
                                          const CMat& holo, double rank_tol, double min_gap) {
  TransversalityReport rep;
  const auto coh_c = surface::h1p_basis(cplx_mod.act, rank_tol);
  const auto coh_r = surface::h1p_basis(real_mod.act, rank_tol);
  rep.complex_dim = coh_c.h1p_dim();
  rep.real_dim = coh_r.h1p_dim();
  rep.holo_dim = static_cast<int>(holo.cols());
  rep.ambient_gap = std::min(coh_c.min_gap(), coh_r.min_gap());
  const Eigen::Index cols = rep.real_dim + 2 * rep.holo_dim;
  Eigen::MatrixXd stacked(2 * rep.complex_dim, cols);
  const CMat real_coords = coh_c.h1p.adjoint() * coh_r.h1p.cast<cplx>();
  const CMat holo_coords = coh_c.h1p.adjoint() * holo;
  stacked.leftCols(rep.real_dim) = realify(real_coords);
  stacked.middleCols(rep.real_dim, rep.holo_dim) = realify(holo_coords);
  stacked.rightCols(rep.holo_dim) = realify(cplx(0.0, 1.0) * holo_coords);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const double nrm = stacked.col(c).norm();
    if (nrm > 0.0) stacked.col(c) /= nrm;
  }
  if (cols == 0) {
    rep.gap = std::numeric_limits<double>::infinity();
    rep.verdict = rep.ambient_gap >= min_gap ? Verdict::pass : Verdict::inconclusive;
    return rep;
  }
  const auto info = linalg::rank_info(stacked, rank_tol);
  rep.stacked_rank = info.rank;
  rep.singular_values = Eigen::Map<const Eigen::VectorXd>(info.singular_values.data(),
                                                          static_cast<Eigen::Index>(info.singular_values.size()));
  if (rep.stacked_rank == cols && cols <= stacked.rows())
    rep.gap = rep.singular_values(cols - 1) / std::max(info.threshold, 1e-300);
  else
    rep.gap = info.gap;
  if (rep.gap < min_gap || rep.ambient_gap < min_gap)
    rep.verdict = Verdict::inconclusive;
  else
    rep.verdict = rep.stacked_rank == cols ? Verdict::pass : Verdict::fail;
  return rep;
}

CMat holomorphic_adjoint_cocycles(const fuchsian::Fixture& fx, int n, const es::ESConfig& cfg) {
  const auto triple = lie::principal_triple<cplx>(n);
  const int dim = triple.algebra().dimension();
  const int k = fx.rep.presentation.generator_count();
  std::vector<CVec> cols;
  for (int j = 1; j < n; ++j) {
    const auto u = *lie::invariants_basis(triple, j);
    const CMat s = lie::varsigma_matrix(triple, j, u);
    for (const auto& f : fuchsian::fixture_forms(fx, 2 * j + 2)) {
      const auto z = es::es_cocycle(f, fx, j, cfg);
      CVec out(static_cast<Eigen::Index>(k) * dim);
      for (int g = 0; g < k; ++g) out.segment(static_cast<Eigen::Index>(g) * dim, dim) = s * z.value(g);
      cols.push_back(out);
    }
  }
  CMat m(static_cast<Eigen::Index>(k) * dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = cols[c];
  return m;
}

// -------------------------------------------------------------------- hodge

Verdict HodgeReport::verdict() const {
  std::vector<Verdict> vs;
  for (const auto& a : axioms) vs.push_back(a.verdict);
  return combine(vs);
}

HodgeReport hodge_report(const PairingModule<cplx>& mod, const surface::CohomologySpace<double>& real_chart,
                         const CMat& h10, const CMat& h01, double tol) {
  HodgeReport r;
  r.weight = mod.act.dim - 1;
  r.h10 = static_cast<int>(h10.cols());
  r.h01 = static_cast<int>(h01.cols());
  const CMat chart = real_chart.h1p.cast<cplx>();
  r.h10_coords = chart.adjoint() * h10;
  r.h01_coords = chart.adjoint() * h01;
  CMat all(h10.rows(), h10.cols() + h01.cols());
  all << h10, h01;
  // Q = -(1 / 2 pi) (-,-): real on real classes
  r.polarization = -goldman_gram(mod, all, tol) / (2.0 * kPi);
  const double scale = std::max(r.polarization.norm(), 1e-300);

  AxiomCheck skew{"skew_symmetry"};
  skew.residual = (r.polarization + r.polarization.transpose()).norm() / scale;
  skew.verdict = skew.residual < tol ? Verdict::pass : Verdict::fail;

  AxiomCheck conj{"conjugate_pieces"};
  if (r.h10 != r.h01) {
    conj.residual = std::numeric_limits<double>::infinity();
  } else {
    const double ref = std::max(r.h10_coords.norm(), 1e-300);
    conj.residual = (r.h01_coords - r.h10_coords.conjugate()).norm() / ref;
  }
  conj.verdict = conj.residual < tol ? Verdict::pass : Verdict::fail;

  // <x, y> = i^{p-q} Q(x, conj y), positive on H^{1,0} (p - q = 1) and on H^{0,1} (p - q = -1)
  AxiomCheck pos{"positivity"};
  double low = std::numeric_limits<double>::infinity(), top = 0.0;
  double herm_resid = 0.0;
  for (int piece = 0; piece < 2; ++piece) {
    const CMat& b = piece == 0 ? h10 : h01;
    if (b.cols() == 0) continue;
    const cplx phase = piece == 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    const CMat h = phase * goldman_gram(mod, [&] {
      CMat x(b.rows(), 2 * b.cols());
      x << b, b.conjugate();
      return x;
    }(), tol).topRightCorner(b.cols(), b.cols()) / (-2.0 * kPi);
    herm_resid = std::max(herm_resid, (h - h.adjoint()).norm() / std::max(h.norm(), 1e-300));
    Eigen::SelfAdjointEigenSolver<CMat> es(CMat(0.5 * (h + h.adjoint())));
    low = std::min(low, es.eigenvalues().minCoeff());
    top = std::max(top, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  if (r.h10 + r.h01 == 0) {
    low = 0.0;
    pos.verdict = Verdict::pass;
  } else {
    pos.verdict = low > tol * top && herm_resid < tol ? Verdict::pass : Verdict::fail;
  }
  pos.residual = herm_resid;
  pos.margin = low;

  // Q(H^{1,0}, H^{1,0}) = 0 = Q(H^{0,1}, H^{0,1}): the two pieces are orthogonal for <-, ->
  AxiomCheck orth{"orthogonality"};
  const double q10 = r.polarization.topLeftCorner(r.h10, r.h10).norm();
  const double q01 = r.polarization.bottomRightCorner(r.h01, r.h01).norm();
  orth.residual = std::max(q10, q01) / scale;
  orth.verdict = orth.residual < tol ? Verdict::pass : Verdict::fail;

  r.axioms = {skew, conj, pos, orth};
  return r;
}

HodgeReport hodge_report(const std::vector<fuchsian::ModularForm>& forms, const fuchsian::Fixture& fx, int j,
                         const es::ESConfig& cfg, double tol) {
  const auto mod = sym_pairing_module<cplx>(fx.rep, j);
  const auto chart = surface::h1p_basis(surface::sym_module<double>(fx.rep, j));
  const auto len = static_cast<Eigen::Index>(mod.act.presentation.generator_count()) * mod.act.dim;
  CMat h10(len, static_cast<Eigen::Index>(forms.size()));
  for (std::size_t k = 0; k < forms.size(); ++k) h10.col(static_cast<Eigen::Index>(k)) = es::es_cocycle(forms[k], fx, j, cfg).values;
  return hodge_report(mod, chart, h10, h10.conjugate(), tol);
}

}  // namespace operlab::pairing
