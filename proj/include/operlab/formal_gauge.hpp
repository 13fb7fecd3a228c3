#pragma once

// Truncated formal connections v(t) = sum t^i v_i at a marked point, the
// gauge action of G(C[[t]]), and order-by-order normalization to the residue.

#include "operlab/lie_core.hpp"
#include "operlab/linalg.hpp"
#include "operlab/log.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace operlab::gauge {

using lie::LieElement;
using lie::SlAlgebra;

inline constexpr int kDefaultOrder = 12;

class WeaklyPreparedViolation : public std::runtime_error {
 public:
  WeaklyPreparedViolation(int order, cplx lambda_a, cplx lambda_b)
      : std::runtime_error(describe(order, lambda_a, lambda_b)), order_(order), pair_(lambda_a, lambda_b) {}
  int order() const { return order_; }
  std::pair<cplx, cplx> eigenvalue_pair() const { return pair_; }

 private:
  static std::string describe(int n, cplx a, cplx b) {
    std::ostringstream os;
    os << "residue is not weakly prepared: eigenvalues " << a << " and " << b << " differ by " << n;
    return os.str();
  }
  int order_;
  std::pair<cplx, cplx> pair_;
};

template <class S>
struct FormalConnection {
  std::vector<LieElement<S>> coeffs;  ///< v_0 .. v_M
  bool logarithmic = true;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  const SlAlgebra<S>& algebra() const { return coeffs.front().algebra(); }

  static FormalConnection constant(const LieElement<S>& v0, int order, bool log = true) {
    FormalConnection c{{}, log};
    c.coeffs.push_back(v0);
    for (int i = 1; i <= order; ++i) c.coeffs.push_back(LieElement<S>::zero(v0.algebra()));
    return c;
  }

  void validate() const {
    if (coeffs.empty()) throw std::invalid_argument("connection has no coefficients");
    for (const auto& c : coeffs) coeffs.front().same(c);
  }
};

template <class S>
struct GaugeSeries {
  std::vector<Matrix<S>> coeffs;  ///< h_0 .. h_M

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  int n() const { return static_cast<int>(coeffs.front().rows()); }

  static GaugeSeries identity(int n, int order) {
    GaugeSeries g;
    g.coeffs.push_back(operlab::identity<S>(n));
    for (int i = 1; i <= order; ++i) g.coeffs.push_back(zeros<S>(n, n));
    return g;
  }
};

namespace detail {

inline double tol_for(double tol, bool exact) { return exact ? 0.0 : tol; }

/// Product of two matrix series truncated at order m (missing terms are 0).
template <class S>
std::vector<Matrix<S>> series_mul(const std::vector<Matrix<S>>& a, const std::vector<Matrix<S>>& b, int m) {
  const Eigen::Index n = a.front().rows();
  std::vector<Matrix<S>> out(static_cast<std::size_t>(m + 1), zeros<S>(n, n));
  for (int i = 0; i <= m && i < static_cast<int>(a.size()); ++i)
    for (int k = 0; i + k <= m && k < static_cast<int>(b.size()); ++k) out[i + k] += a[i] * b[k];
  return out;
}

/// Inverse of a matrix series through order m; terms of h beyond its length are 0.
template <class S>
std::vector<Matrix<S>> series_inverse(const std::vector<Matrix<S>>& h, int m, double tol) {
  auto h0inv = linalg::inverse<S>(h.front(), tol_for(tol, is_exact_v<S>));
  if (!h0inv) throw std::invalid_argument("gauge series has singular constant term");
  const Eigen::Index n = h.front().rows();
  std::vector<Matrix<S>> g(static_cast<std::size_t>(m + 1), zeros<S>(n, n));
  g[0] = *h0inv;
  for (int k = 1; k <= m; ++k) {
    Matrix<S> acc = zeros<S>(n, n);
    for (int i = 1; i <= k && i < static_cast<int>(h.size()); ++i) acc += h[i] * g[k - i];
    g[k] = -(*h0inv * acc);
  }
  return g;
}

}  // namespace detail

template <class S>
GaugeSeries<S> compose(const GaugeSeries<S>& a, const GaugeSeries<S>& b) {
  if (a.order() != b.order()) throw std::invalid_argument("gauge series have different truncation orders");
  return {detail::series_mul(a.coeffs, b.coeffs, a.order())};
}

template <class S>
GaugeSeries<S> inverse(const GaugeSeries<S>& h, double tol = 1e-12) {
  return {detail::series_inverse(h.coeffs, h.order(), tol)};
}

/// h D(h^{-1}) + h v h^{-1}, D = t d/dt (logarithmic) or d/dt.
/// In the d/dt case the order-M output needs h_{M+1}; we take the scalar
/// h_{M+1} that keeps det h = 1 through t^{M+1}, which amounts to removing the
/// trace of the order-M coefficient.
template <class S>
FormalConnection<S> gauge_transform(const GaugeSeries<S>& h, const FormalConnection<S>& v, double tol = 1e-12) {
  v.validate();
  const int m = v.order();
  if (h.order() != m) throw std::invalid_argument("gauge series and connection have different truncation orders");
  if (h.n() != v.algebra().n()) throw lie::AlgebraMismatch("gauge series size does not match the algebra");
  const auto hinv = detail::series_inverse(h.coeffs, v.logarithmic ? m : m + 1, tol);
  const Eigen::Index n = h.n();
  std::vector<Matrix<S>> dinv(static_cast<std::size_t>(m + 1), zeros<S>(n, n));
  for (int k = 0; k <= m; ++k) {
    if (v.logarithmic)
      dinv[k] = hinv[k] * ScalarOps<S>::from_int(k);
    else
      dinv[k] = hinv[k + 1] * ScalarOps<S>::from_int(k + 1);
  }
  std::vector<Matrix<S>> vm;
  for (const auto& c : v.coeffs) vm.push_back(c.matrix());
  const auto term1 = detail::series_mul(h.coeffs, dinv, m);
  const auto term2 = detail::series_mul(detail::series_mul(h.coeffs, vm, m), hinv, m);
  FormalConnection<S> out{{}, v.logarithmic};
  for (int k = 0; k <= m; ++k) {
    Matrix<S> c = term1[k] + term2[k];
    if (!is_exact_v<S> || (!v.logarithmic && k == m))
      c -= operlab::identity<S>(static_cast<int>(n)) * (trace<S>(c) / ScalarOps<S>::from_int(n));
    out.coeffs.emplace_back(v.algebra(), c);
  }
  return out;
}

template <class S>
LieElement<S> residue(const FormalConnection<S>& v) {
  if (!v.logarithmic) throw std::invalid_argument("residue is only defined for logarithmic connections");
  return v.coeffs.front();
}

/// Eigenvalues of c in float arithmetic.
CVec eigenvalues(const CMat& c);

/// Exact eigenvalues when c is triangular.
template <class S>
std::optional<std::vector<S>> exact_eigenvalues(const Matrix<S>& c) {
  bool upper = true, lower = true;
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (i > j && !ScalarOps<S>::is_zero(c(i, j), 0)) upper = false;
      if (i < j && !ScalarOps<S>::is_zero(c(i, j), 0)) lower = false;
    }
  if (!upper && !lower) return std::nullopt;
  std::vector<S> ev;
  for (Eigen::Index i = 0; i < c.rows(); ++i) ev.push_back(c(i, i));
  return ev;
}

/// First pair of distinct eigenvalues differing by a nonzero integer, if any.
std::optional<std::pair<cplx, cplx>> integer_resonance(const CVec& ev, double tol);

/// True iff no two distinct eigenvalues of c differ by a nonzero integer.
template <class S>
bool is_weakly_prepared(const LieElement<S>& c, double tol = 1e-9) {
  if constexpr (is_exact_v<S>) {
    if (auto ev = exact_eigenvalues<S>(c.matrix())) {
      for (std::size_t a = 0; a < ev->size(); ++a)
        for (std::size_t b = 0; b < ev->size(); ++b) {
          const QComplex d = (*ev)[a] - (*ev)[b];
          if (d.is_zero() || sgn(d.im) != 0) continue;
          if (d.re.get_den() == 1) return false;
        }
      return true;
    }
    warn("is_weakly_prepared: residue is not triangular, falling back to floating-point eigenvalues");
  }
  return !integer_resonance(eigenvalues(to_cplx<S>(c.matrix())), tol).has_value();
}

template <class S>
struct RadiusPoint {
  /// Coefficients of lambda^{N-2}, ..., lambda^0 in det(lambda I - c).
  std::vector<S> char_coeffs;
};

/// Characteristic polynomial via the Faddeev-LeVerrier recursion (exact in exact mode).
template <class S>
RadiusPoint<S> radius(const LieElement<S>& c) {
  const int n = c.n();
  const Matrix<S>& a = c.matrix();
  std::vector<S> coef(static_cast<std::size_t>(n + 1), ScalarOps<S>::from_int(0));  // coef[k] of lambda^k
  coef[n] = ScalarOps<S>::from_int(1);
  Matrix<S> mk = zeros<S>(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = Matrix<S>(a * mk) + operlab::identity<S>(n) * coef[n - k + 1];
    const Matrix<S> am = a * mk;
    coef[n - k] = -(trace<S>(am) / ScalarOps<S>::from_int(k));
  }
  RadiusPoint<S> r;
  for (int k = n - 2; k >= 0; --k) r.char_coeffs.push_back(coef[k]);
  return r;
}

template <class S>
bool is_zero_radius(const LieElement<S>& c, double tol = 1e-9) {
  for (const auto& x : radius(c).char_coeffs)
    if (!ScalarOps<S>::is_zero(x, tol)) return false;
  return true;
}

/// exp(t^n u) as a polynomial truncated at order m.
template <class S>
GaugeSeries<S> exp_monomial(const Matrix<S>& u, int n, int m) {
  auto g = GaugeSeries<S>::identity(static_cast<int>(u.rows()), m);
  Matrix<S> term = operlab::identity<S>(static_cast<int>(u.rows()));
  for (int k = 1; k * n <= m; ++k) {
    term = Matrix<S>(term * u) / ScalarOps<S>::from_int(k);
    g.coeffs[k * n] += term;
  }
  return g;
}

template <class S>
struct StepResult {
  GaugeSeries<S> gauge;
  FormalConnection<S> connection;
};

/// One normalization step: removes the order-n term of v.
/// Solves (n + ad v_0) u = -v_n and gauges by exp(-t^n u).
template <class S>
StepResult<S> normalize_step(const FormalConnection<S>& v, int n, double tol = 1e-12) {
  if (!v.logarithmic) throw std::invalid_argument("normalize_step requires a logarithmic connection");
  if (n < 1 || n > v.order()) throw std::invalid_argument("normalize_step: order out of range");
  const auto& alg = v.algebra();
  const int dn = alg.n();
  const double ztol = detail::tol_for(tol, is_exact_v<S>);
  if (is_zero_matrix<S>(v.coeffs[n].matrix(), ztol)) return {GaugeSeries<S>::identity(dn, v.order()), v};
  const int d = alg.dimension();
  Matrix<S> op(d, d);
  for (int b = 0; b < d; ++b) {
    const Matrix<S> e = alg.basis_element(b);
    const Matrix<S> img = e * ScalarOps<S>::from_int(n) + v.coeffs[0].matrix() * e - e * v.coeffs[0].matrix();
    op.col(b) = alg.coords(img);
  }
  const Vector<S> rhs = -alg.coords(v.coeffs[n].matrix());
  const auto sol = linalg::solve_square<S>(op, rhs, ztol);
  if (!sol) {
    const CVec ev = eigenvalues(to_cplx<S>(v.coeffs[0].matrix()));
    std::pair<cplx, cplx> pair{0.0, 0.0};
    for (Eigen::Index a = 0; a < ev.size(); ++a)
      for (Eigen::Index b = 0; b < ev.size(); ++b)
        if (std::abs(ev(a) - ev(b) + static_cast<double>(n)) < 1e-6) pair = {ev(a), ev(b)};
    throw WeaklyPreparedViolation(n, pair.first, pair.second);
  }
  const Matrix<S> u = alg.from_coords(*sol);
  auto h = exp_monomial<S>(Matrix<S>(-u), n, v.order());
  auto out = gauge_transform(h, v, tol);
  return {std::move(h), std::move(out)};
}

template <class S>
struct NormalizeResult {
  GaugeSeries<S> gauge;
  LieElement<S> normal_form;
};

/// Composite gauge h = h_M ... h_1 built literally from normalize_step.
/// Reference only: in floating point each step re-transforms the whole
/// connection and errors compound.
template <class S>
NormalizeResult<S> normalize_by_steps(const FormalConnection<S>& v, double tol = 1e-12) {
  if (!v.logarithmic) throw std::invalid_argument("normalize requires a logarithmic connection");
  v.validate();
  auto h = GaugeSeries<S>::identity(v.algebra().n(), v.order());
  auto cur = v;
  for (int n = 1; n <= v.order(); ++n) {
    auto step = normalize_step(cur, n, tol);
    h = compose(step.gauge, h);
    cur = std::move(step.connection);
  }
  return {std::move(h), v.coeffs.front()};
}

/// Gauge h with h_0 = 1 taking v to its residue through order M.
/// The composite of the normalization steps is the unique such h, so it is
/// computed directly from the gauge equation order by order:
///   (k + ad v_0)(h_k) = sum_{i<k} h_i v_{k-i}.
template <class S>
NormalizeResult<S> normalize(const FormalConnection<S>& v, double tol = 1e-12) {
  if (!v.logarithmic) throw std::invalid_argument("normalize requires a logarithmic connection");
  v.validate();
  const int n = v.algebra().n();
  const int m = v.order();
  const double ztol = detail::tol_for(tol, is_exact_v<S>);
  const Matrix<S>& v0 = v.coeffs.front().matrix();
  auto h = GaugeSeries<S>::identity(n, m);
  const int d = n * n;
  for (int k = 1; k <= m; ++k) {
    Matrix<S> rhs = zeros<S>(n, n);
    for (int i = 0; i < k; ++i) rhs += h.coeffs[static_cast<std::size_t>(i)] * v.coeffs[static_cast<std::size_t>(k - i)].matrix();
    if (is_zero_matrix<S>(rhs, ztol)) continue;
    Matrix<S> op = zeros<S>(d, d);
    Vector<S> b(d);
    for (int c = 0; c < d; ++c) {
      Matrix<S> e = zeros<S>(n, n);
      e(c / n, c % n) = ScalarOps<S>::from_int(1);
      const Matrix<S> img = e * ScalarOps<S>::from_int(k) + v0 * e - e * v0;
      for (int a = 0; a < d; ++a) op(a, c) = img(a / n, a % n);
      b(c) = rhs(c / n, c % n);
    }
    const auto sol = linalg::solve_square<S>(op, b, ztol);
    if (!sol) {
      const CVec ev = eigenvalues(to_cplx<S>(v0));
      std::pair<cplx, cplx> pair{0.0, 0.0};
      for (Eigen::Index a = 0; a < ev.size(); ++a)
        for (Eigen::Index bb = 0; bb < ev.size(); ++bb)
          if (std::abs(ev(a) - ev(bb) + static_cast<double>(k)) < 1e-6) pair = {ev(a), ev(bb)};
      throw WeaklyPreparedViolation(k, pair.first, pair.second);
    }
    for (int a = 0; a < d; ++a) h.coeffs[static_cast<std::size_t>(k)](a / n, a % n) = (*sol)(a);
  }
  return {std::move(h), v.coeffs.front()};
}

/// exp(-2 pi i c).
CMat local_monodromy(const CMat& c);

template <class S>
CMat local_monodromy(const LieElement<S>& c) {
  return local_monodromy(to_cplx<S>(c.matrix()));
}

}  // namespace operlab::gauge
