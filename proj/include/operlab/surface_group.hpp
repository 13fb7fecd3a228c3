#pragma once

// Surface groups pi_1 of a genus-g surface with r punctures, their
// representations, and parabolic group cohomology H^1_P(Gamma, module).

#include "operlab/lie_core.hpp"
#include "operlab/linalg.hpp"
#include "operlab/scalar.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace operlab::surface {

class InconsistentAction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A letter: generator index and exponent +1 or -1.
struct Letter {
  int gen = 0;
  int exp = 1;
};
using Word = std::vector<Letter>;

/// Generators A_1..A_g, B_1..B_g, T_1..T_r (in this index order) with the
/// single relator prod_j [A_j, B_j] prod_i T_i, where [A, B] = A B A^-1 B^-1.
struct SurfacePresentation {
  int g = 0;
  int r = 0;

  SurfacePresentation() = default;
  SurfacePresentation(int genus, int punctures);

  int generator_count() const { return 2 * g + r; }
  int a(int j) const { return j; }
  int b(int j) const { return g + j; }
  int t(int i) const { return 2 * g + i; }
  std::string name(int gen) const;
  int index(const std::string& name) const;
  Word relator() const;
  /// Parses words such as "A1 B1 a1 b1" (lower case = inverse) or "A1 B1^-1".
  Word parse_word(const std::string& text) const;
  Word inverse(const Word& w) const;
};

/// Lift to SL2 of a representation into PSL2.
struct GroupRepresentation {
  SurfacePresentation presentation;
  std::vector<RMat> gens;  ///< 2x2 unimodular matrices indexed like the presentation

  void validate(double tol = 1e-9) const;
  RMat evaluate(const Word& w) const;
};

/// Linear action of the surface group on a d-dimensional module.
template <class T>
struct ModuleAction {
  SurfacePresentation presentation;
  int dim = 0;
  std::vector<Matrix<T>> gens;
  std::vector<Matrix<T>> inverses;
  std::string label;

  ModuleAction() = default;
  ModuleAction(SurfacePresentation p, std::vector<Matrix<T>> g, std::string lbl = {})
      : presentation(p), dim(g.empty() ? 0 : static_cast<int>(g.front().rows())), gens(std::move(g)), label(std::move(lbl)) {
    if (static_cast<int>(gens.size()) != presentation.generator_count())
      throw std::invalid_argument("module action needs one matrix per generator");
    for (const auto& m : gens) inverses.push_back(m.inverse());
  }

  const Matrix<T>& letter(const Letter& l) const { return l.exp > 0 ? gens[l.gen] : inverses[l.gen]; }

  Matrix<T> evaluate(const Word& w) const {
    Matrix<T> m = Matrix<T>::Identity(dim, dim);
    for (const auto& l : w) m = m * letter(l);
    return m;
  }

  /// Rounding-error scale of evaluating w left to right:
  /// sum_m |prefix_{m-1}| |y_m| |suffix_{m+1}|.
  double product_error_scale(const Word& w) const {
    std::vector<double> suffix(w.size() + 1, 1.0);
    Matrix<T> s = Matrix<T>::Identity(dim, dim);
    for (std::size_t m = w.size(); m-- > 0;) {
      suffix[m + 1] = s.norm();
      s = letter(w[m]) * s;
    }
    double bound = 0.0;
    Matrix<T> prefix = Matrix<T>::Identity(dim, dim);
    for (std::size_t m = 0; m < w.size(); ++m) {
      bound += prefix.norm() * letter(w[m]).norm() * suffix[m + 1];
      prefix = prefix * letter(w[m]);
    }
    return std::max(1.0, bound);
  }

  /// Relator must act as the identity, up to tol or the rounding scale of the product.
  void check_consistent(double tol = 1e-8) const {
    const Word rel = presentation.relator();
    const double residual = (evaluate(rel) - Matrix<T>::Identity(dim, dim)).cwiseAbs().maxCoeff();
    const double allowed = std::max(tol, 1e3 * std::numeric_limits<double>::epsilon() * product_error_scale(rel));
    if (residual > allowed) throw InconsistentAction("relator does not act as the identity on the module");
  }
};

/// Ad(iota_G(mu(gamma))) on sl_N in the coordinates of SlAlgebra.
template <class T>
ModuleAction<T> adjoint_action(const GroupRepresentation& rep, int n) {
  const lie::SlAlgebra<cplx> alg(n);
  std::vector<Matrix<T>> mats;
  for (const auto& m : rep.gens) {
    const CMat mc = m.cast<cplx>();
    const CMat g = lie::iota_G<cplx>(mc, n);
    const CMat ad = lie::adjoint_matrix(alg, g, CMat(g.inverse()));
    if constexpr (std::is_same_v<T, double>)
      mats.push_back(ad.real());
    else
      mats.push_back(ad);
  }
  return {rep.presentation, std::move(mats), "adjoint sl" + std::to_string(n)};
}

/// Sym^{2j} of mu on V_{2j}.
template <class T>
ModuleAction<T> sym_module(const GroupRepresentation& rep, int j) {
  std::vector<Matrix<T>> mats;
  for (const auto& m : rep.gens) {
    const RMat s = lie::sym_power<double>(m, 2 * j);
    if constexpr (std::is_same_v<T, double>)
      mats.push_back(s);
    else
      mats.push_back(s.cast<cplx>());
  }
  return {rep.presentation, std::move(mats), "V" + std::to_string(2 * j)};
}

/// Cocycle values stacked generator by generator: z = (z(g_0); z(g_1); ...).
template <class T>
Vector<T> cocycle_value(const ModuleAction<T>& act, const Vector<T>& z, const Word& w) {
  // z(y_1...y_L) = sum_m P_{m-1} z(y_m), z(x^-1) = -x^-1 z(x)
  Vector<T> acc = Vector<T>::Zero(act.dim);
  Matrix<T> prefix = Matrix<T>::Identity(act.dim, act.dim);
  for (const auto& l : w) {
    const Vector<T> zx = z.segment(static_cast<Eigen::Index>(l.gen) * act.dim, act.dim);
    if (l.exp > 0)
      acc += prefix * zx;
    else
      acc -= prefix * act.inverses[l.gen] * zx;
    prefix = prefix * act.letter(l);
  }
  return acc;
}

/// Linear map (stacked generator values) -> z(relator); its kernel is Z^1.
template <class T>
Matrix<T> cocycle_relator_map(const ModuleAction<T>& act, double tol = 1e-8) {
  act.check_consistent(tol);
  const int d = act.dim;
  const int k = act.presentation.generator_count();
  Matrix<T> out = Matrix<T>::Zero(d, static_cast<Eigen::Index>(k) * d);
  Matrix<T> prefix = Matrix<T>::Identity(d, d);
  for (const auto& l : act.presentation.relator()) {
    auto block = out.middleCols(static_cast<Eigen::Index>(l.gen) * d, d);
    if (l.exp > 0)
      block += prefix;
    else
      block -= prefix * act.inverses[l.gen];
    prefix = prefix * act.letter(l);
  }
  return out;
}

/// Linear map x -> ((g_k - 1) x)_k; its image is B^1.
template <class T>
Matrix<T> coboundary_map(const ModuleAction<T>& act) {
  const int d = act.dim;
  const int k = act.presentation.generator_count();
  Matrix<T> out(static_cast<Eigen::Index>(k) * d, d);
  for (int i = 0; i < k; ++i) out.middleRows(static_cast<Eigen::Index>(i) * d, d) = act.gens[i] - Matrix<T>::Identity(d, d);
  return out;
}

template <class T>
struct Subspace {
  Matrix<T> basis;  ///< orthonormal columns
  linalg::RankInfo rank;
  int dim() const { return static_cast<int>(basis.cols()); }
};

template <class T>
Subspace<T> cocycle_space(const ModuleAction<T>& act, double rel_tol = 1e-8) {
  auto [basis, info] = linalg::nullspace_svd<Matrix<T>>(cocycle_relator_map(act), rel_tol);
  return {basis, info};
}

/// Z^1_P: cocycles with z(T_i) in the image of (T_i - 1), via slack variables x_i.
template <class T>
Subspace<T> parabolic_subspace(const ModuleAction<T>& act, double rel_tol = 1e-8) {
  const auto& p = act.presentation;
  const int d = act.dim;
  const Eigen::Index zdim = static_cast<Eigen::Index>(p.generator_count()) * d;
  const Eigen::Index xdim = static_cast<Eigen::Index>(p.r) * d;
  Matrix<T> sys = Matrix<T>::Zero(d + xdim, zdim + xdim);
  sys.topLeftCorner(d, zdim) = cocycle_relator_map(act);
  for (int i = 0; i < p.r; ++i) {
    const Eigen::Index row = d + static_cast<Eigen::Index>(i) * d;
    sys.block(row, static_cast<Eigen::Index>(p.t(i)) * d, d, d) = Matrix<T>::Identity(d, d);
    sys.block(row, zdim + static_cast<Eigen::Index>(i) * d, d, d) = -(act.gens[p.t(i)] - Matrix<T>::Identity(d, d));
  }
  auto [ker, kinfo] = linalg::nullspace_svd<Matrix<T>>(sys, rel_tol);
  const Matrix<T> zpart = ker.topRows(zdim);
  auto [basis, info] = linalg::column_space<Matrix<T>>(zpart, rel_tol, 1.0);
  // report the tighter of the two rank decisions
  if (kinfo.gap < info.gap) info.gap = kinfo.gap;
  return {basis, info};
}

template <class T>
Subspace<T> coboundary_space(const ModuleAction<T>& act, double rel_tol = 1e-8) {
  auto [basis, info] = linalg::column_space<Matrix<T>>(coboundary_map(act), rel_tol);
  return {basis, info};
}

template <class T>
struct CohomologySpace {
  Subspace<T> z1;
  Subspace<T> z1p;
  Subspace<T> b1;
  /// Orthonormal basis of the orthogonal complement of B^1 inside Z^1_P.
  Matrix<T> h1p;
  linalg::RankInfo h1p_rank;

  int h1p_dim() const { return static_cast<int>(h1p.cols()); }
  /// Smallest spectral gap among the rank decisions made.
  double min_gap() const { return std::min({z1.rank.gap, z1p.rank.gap, b1.rank.gap, h1p_rank.gap}); }
  /// Coordinates of a parabolic cocycle's class in the h1p basis.
  Vector<T> class_coords(const Vector<T>& z) const { return h1p.adjoint() * z; }
};

template <class T>
CohomologySpace<T> h1p_basis(const ModuleAction<T>& act, double rel_tol = 1e-8) {
  CohomologySpace<T> c;
  c.z1 = cocycle_space(act, rel_tol);
  c.z1p = parabolic_subspace(act, rel_tol);
  c.b1 = coboundary_space(act, rel_tol);
  // Work inside Z^1_P coordinates: the complement is Q N with N spanning the
  // orthogonal complement of Q^* B^1, so its dimension is dim Z^1_P - rank(Q^* B^1).
  const Matrix<T> coords = c.z1p.basis.adjoint() * c.b1.basis;
  auto [n, info] = linalg::nullspace_svd<Matrix<T>>(Matrix<T>(coords.adjoint()), rel_tol);
  if (c.b1.dim() == 0) n = Matrix<T>::Identity(c.z1p.dim(), c.z1p.dim());
  c.h1p = c.z1p.basis * n;
  c.h1p_rank = info;
  if (c.b1.dim() == 0) c.h1p_rank.gap = std::numeric_limits<double>::infinity();
  if (c.h1p_dim() != c.z1p.dim() - c.b1.dim())
    throw std::logic_error("B^1 is not contained in Z^1_P to working precision; rank decisions are unstable");
  return c;
}

template <class T>
int h1p_dimension(const ModuleAction<T>& act, double rel_tol = 1e-8) {
  return h1p_basis(act, rel_tol).h1p_dim();
}

/// Image of z(T_i) in coker(T_i - 1), in an orthonormal basis of the cokernel.
template <class T>
Vector<T> restriction_to_puncture(const ModuleAction<T>& act, const Vector<T>& z, int i, double rel_tol = 1e-8) {
  const auto& p = act.presentation;
  if (i < 0 || i >= p.r) throw std::invalid_argument("puncture index out of range");
  const int d = act.dim;
  const Matrix<T> m = act.gens[p.t(i)] - Matrix<T>::Identity(d, d);
  // cokernel = orthogonal complement of the image = kernel of m^*
  auto [coker, info] = linalg::nullspace_svd<Matrix<T>>(Matrix<T>(m.adjoint()), rel_tol);
  (void)info;
  return coker.adjoint() * z.segment(static_cast<Eigen::Index>(p.t(i)) * d, d);
}

}  // namespace operlab::surface
