#pragma once

#include "operlab/eichler_shimura.hpp"
#include "operlab/fuchsian.hpp"
#include "operlab/linalg.hpp"
#include "operlab/surface_group.hpp"

#include <Eigen/QR>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace operlab::pairing {

enum class Verdict { pass, fail, inconclusive };
const char* verdict_name(Verdict v);
/// FAIL dominates INCONCLUSIVE, which dominates PASS.
Verdict combine(const std::vector<Verdict>& vs);

class NonParabolicCocycle : public std::runtime_error {
 public:
  NonParabolicCocycle(int puncture, double residual)
      : std::runtime_error("cocycle is not parabolic at puncture " + std::to_string(puncture + 1) + " (residual " +
                           std::to_string(residual) + ")"),
        puncture(puncture),
        residual(residual) {}
  int puncture;
  double residual;
};

/// A module with an invariant symmetric bilinear form.
template <class T>
struct PairingModule {
  surface::ModuleAction<T> act;
  Matrix<T> form;
};

template <class T>
PairingModule<T> adjoint_pairing_module(const surface::GroupRepresentation& rep, int n) {
  auto act = surface::adjoint_action<T>(rep, n);
  const CMat k = lie::killing_gram(lie::SlAlgebra<cplx>(n));
  if constexpr (std::is_same_v<T, double>)
    return {std::move(act), k.real()};
  else
    return {std::move(act), k};
}

template <class T>
PairingModule<T> sym_pairing_module(const surface::GroupRepresentation& rep, int j) {
  auto act = surface::sym_module<T>(rep, j);
  const CMat f = lie::sym_invariant_form(j);
  if constexpr (std::is_same_v<T, double>)
    return {std::move(act), f.real()};
  else
    return {std::move(act), f};
}

/// Exact rational module: Ad(iota_G(mu)) with integer generator matrices.
PairingModule<QComplex> exact_adjoint_module(const surface::GroupRepresentation& rep, int n);
/// Exact parabolic cocycles (columns span Z^1_P).
Matrix<QComplex> exact_parabolic_cocycles(const PairingModule<QComplex>& mod);

namespace detail {

/// Some x with a x = b, or nullopt when b is off the image by more than tol.
template <class T>
std::optional<Vector<T>> solve_consistent(const Matrix<T>& a, const Vector<T>& b, double tol, double& residual) {
  if constexpr (is_exact_v<T>) {
    Matrix<T> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const auto [red, pivots] = linalg::rref<T>(aug);
    residual = 0.0;
    if (!pivots.empty() && pivots.back() == a.cols()) {
      residual = 1.0;
      return std::nullopt;
    }
    Vector<T> x = zeros<T>(a.cols(), 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = red(static_cast<Eigen::Index>(r), a.cols());
    return x;
  } else {
    Eigen::CompleteOrthogonalDecomposition<Matrix<T>> cod(a);
    cod.setThreshold(1e-10);
    const Vector<T> x = cod.solve(b);
    residual = (a * x - b).norm() / std::max(1.0, b.norm());
    if (residual > tol) return std::nullopt;
    return x;
  }
}

template <class T>
T bilinear(const Matrix<T>& form, const Vector<T>& u, const Vector<T>& v) {
  return (u.transpose() * form * v)(0, 0);
}

template <class T>
Vector<T> letter_value(const surface::ModuleAction<T>& act, const Vector<T>& z, const surface::Letter& l) {
  const Vector<T> zx = z.segment(static_cast<Eigen::Index>(l.gen) * act.dim, act.dim);
  if (l.exp > 0) return zx;
  return -(act.inverses[l.gen] * zx);
}

}  // namespace detail

/// Cup product of two parabolic cocycles evaluated on the relative fundamental class.
/// The relator chain sum_m [P_{m-1} | y_m] is closed up with [x | x^-1] for every
/// generator read backwards, and each puncture contributes -B(a_i, z2(T_i)) where
/// (T_i - 1) a_i = z1(T_i).
template <class T>
T goldman_pairing(const PairingModule<T>& mod, const Vector<T>& z1, const Vector<T>& z2, double tol = 1e-8) {
  const auto& act = mod.act;
  const auto& p = act.presentation;
  const int d = act.dim;
  const Matrix<T> id = identity<T>(d);
  if (z1.size() != static_cast<Eigen::Index>(p.generator_count()) * d || z2.size() != z1.size())
    throw std::invalid_argument("cocycle has the wrong length for this module");
  T total = ScalarOps<T>::from_int(0);
  Vector<T> u_prefix = zeros<T>(d, 1);
  Matrix<T> prefix = id;
  std::vector<bool> inverted(static_cast<std::size_t>(p.generator_count()), false);
  for (const auto& l : p.relator()) {
    total += detail::bilinear<T>(mod.form, u_prefix, prefix * detail::letter_value(act, z2, l));
    u_prefix += prefix * detail::letter_value(act, z1, l);
    prefix = prefix * act.letter(l);
    if (l.exp < 0) inverted[static_cast<std::size_t>(l.gen)] = true;
  }
  // [x | x^-1] contributes B(u(x), x v(x^-1)) = -B(u(x), v(x))
  for (int g = 0; g < p.generator_count(); ++g)
    if (inverted[static_cast<std::size_t>(g)]) {
      const auto blk = static_cast<Eigen::Index>(g) * d;
      total += detail::bilinear<T>(mod.form, Vector<T>(z1.segment(blk, d)), Vector<T>(z2.segment(blk, d)));
    }
  for (int i = 0; i < p.r; ++i) {
    const auto blk = static_cast<Eigen::Index>(p.t(i)) * d;
    const Matrix<T> m = act.gens[p.t(i)] - id;
    double res1 = 0.0, res2 = 0.0;
    const auto a = detail::solve_consistent<T>(m, Vector<T>(z1.segment(blk, d)), tol, res1);
    if (!a) throw NonParabolicCocycle(i, res1);
    if (!detail::solve_consistent<T>(m, Vector<T>(z2.segment(blk, d)), tol, res2)) throw NonParabolicCocycle(i, res2);
    total -= detail::bilinear<T>(mod.form, *a, Vector<T>(z2.segment(blk, d)));
  }
  return total;
}

/// Sum of the moduli of the terms goldman_pairing adds up; rounding error is a
/// small multiple of eps times this.
template <class T>
double goldman_rounding_scale(const PairingModule<T>& mod, const Vector<T>& z1, const Vector<T>& z2) {
  const auto& act = mod.act;
  const auto& p = act.presentation;
  const int d = act.dim;
  const double bn = mod.form.norm();
  double total = 0.0, u_prefix = 0.0, prefix = 1.0;
  for (const auto& l : p.relator()) {
    total += u_prefix * bn * prefix * detail::letter_value(act, z2, l).norm();
    u_prefix += prefix * detail::letter_value(act, z1, l).norm();
    prefix *= act.letter(l).norm();
  }
  for (int g = 0; g < p.generator_count(); ++g) {
    const auto blk = static_cast<Eigen::Index>(g) * d;
    total += bn * z1.segment(blk, d).norm() * z2.segment(blk, d).norm();
  }
  return std::max(total, 1e-300);
}

/// <v, w> = (1 / 2 pi i) (v, conj w): hermitian, and zero on real cocycles paired with themselves.
cplx hermitian_pairing(const PairingModule<cplx>& mod, const CVec& z1, const CVec& z2, double tol = 1e-8);

/// Gram matrix of the skew pairing on a list of cocycles (columns).
CMat goldman_gram(const PairingModule<cplx>& mod, const CMat& cocycles, double tol = 1e-8);
/// Serial reference for goldman_gram.
CMat goldman_gram_serial(const PairingModule<cplx>& mod, const CMat& cocycles, double tol = 1e-8);
CMat hermitian_gram(const PairingModule<cplx>& mod, const CMat& cocycles, double tol = 1e-8);

struct GramReport {
  enum class Symmetry { skew, hermitian };
  std::vector<std::string> labels;
  CMat gram;
  Symmetry symmetry = Symmetry::skew;
  double symmetry_residual = 0.0;
  Eigen::VectorXd singular_values;
  Eigen::VectorXd eigenvalues;  ///< hermitian case only
  double condition_ratio = 0.0;  ///< smallest / largest singular value
  Verdict nondegenerate = Verdict::pass;
  Verdict positive_definite = Verdict::inconclusive;  ///< hermitian case only
};

GramReport make_gram_report(CMat gram, GramReport::Symmetry sym, std::vector<std::string> labels,
                            double nondegeneracy_ratio = 1e-6);

/// Sampled developing map. The canonical oper has delta = id.
struct DevelopingMapData {
  std::string tag = "canonical";
  std::function<cplx(cplx)> delta = [](cplx z) { return z; };
  std::function<cplx(cplx)> ddelta = [](cplx) { return cplx(1.0); };

  static DevelopingMapData canonical() { return {}; }
  /// Bilinear interpolation of delta and delta' on a rectangular grid [x0,x1] x [y0,y1];
  /// values are indexed (ix, iy) row-major.
  static DevelopingMapData from_grid(double x0, double x1, double y0, double y1, int nx, int ny,
                                     std::vector<cplx> delta_values, std::vector<cplx> ddelta_values);
};

/// (1/pi) (2^{2j}/(2j)!) <u_j,u_j> int_F Im(delta)^{2j} f1 conj(f2) / |delta'|^{2j} dx dy.
cplx petersson_integral(const fuchsian::ModularForm& f1, const fuchsian::ModularForm& f2, int j,
                        const fuchsian::FundamentalDomain& domain, const DevelopingMapData& dev = {},
                        const fuchsian::QuadratureOptions& opt = {});

struct CrossValidation {
  CMat cocycle_gram;    ///< A: hermitian pairing of eps(f_k)
  CMat petersson_gram;  ///< B
  cplx constant = 0.0;  ///< c minimizing |A - c B|
  double residual = 0.0;  ///< |A - c B| / |A|
  Verdict verdict = Verdict::pass;
};

CrossValidation cross_validate(const std::vector<fuchsian::ModularForm>& forms, const fuchsian::Fixture& fx, int j,
                               const es::ESConfig& cfg = {}, const fuchsian::QuadratureOptions& opt = {},
                               double threshold = 1e-3);

struct TransversalityReport {
  int complex_dim = 0;   ///< dim_C H^1_P of the complexified module
  int real_dim = 0;      ///< dim_R of the real subspace
  int holo_dim = 0;      ///< dim_C of the holomorphic subspace
  int stacked_rank = 0;
  Eigen::VectorXd singular_values;
  double gap = 0.0;
  double ambient_gap = 0.0;  ///< smallest gap among the H^1_P rank decisions
  Verdict verdict = Verdict::inconclusive;
};

/// holo: columns are complex parabolic cocycles of the complexified module.
TransversalityReport transversality_check(const PairingModule<double>& real_mod, const PairingModule<cplx>& cplx_mod,
                                          const CMat& holo, double rank_tol = 1e-8, double min_gap = 10.0);

/// Holomorphic classes in the adjoint module of sl_N: period cocycles of the
/// weight 2j+2 forms pushed through varsigma_j, for j = 1..N-1.
CMat holomorphic_adjoint_cocycles(const fuchsian::Fixture& fx, int n, const es::ESConfig& cfg = {});

struct AxiomCheck {
  std::string name;
  double residual = 0.0;
  double margin = 0.0;  ///< positivity: smallest eigenvalue
  Verdict verdict = Verdict::pass;
};

struct HodgeReport {
  int weight = 0;  ///< 2j
  int h10 = 0, h01 = 0;
  CMat h10_coords, h01_coords;  ///< class coordinates in a real chart of H^1_P
  CMat polarization;            ///< Q on [H^{1,0} | H^{0,1}]
  std::vector<AxiomCheck> axioms;
  Verdict verdict() const;
};

HodgeReport hodge_report(const PairingModule<cplx>& mod, const surface::CohomologySpace<double>& real_chart,
                         const CMat& h10, const CMat& h01, double tol = 1e-8);
HodgeReport hodge_report(const std::vector<fuchsian::ModularForm>& forms, const fuchsian::Fixture& fx, int j,
                         const es::ESConfig& cfg = {}, double tol = 1e-8);

}  // namespace operlab::pairing
