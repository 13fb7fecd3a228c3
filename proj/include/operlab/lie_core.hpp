#pragma once

// sl_N arithmetic: bracket, Killing form, the principal sl2-triple, the
// grading by (1/2) ad(h), symmetric-power modules V_{2j} and the maps that tie
// them to sl_N (varsigma_j and the principal embedding iota_G).
//
// Everything is templated on the scalar type: QComplex (exact rational
// complex) or std::complex<double>.

#include "operlab/linalg.hpp"
#include "operlab/scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace operlab::lie {

enum class ScalarMode { exact, floating };

class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotUnimodular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Default tolerance for trace/unimodularity checks in float mode.
inline constexpr double kFloatTol = 1e-9;

template <class S>
class SlAlgebra {
 public:
  explicit SlAlgebra(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("sl_N requires N >= 2");
  }

  int n() const { return n_; }
  int dimension() const { return n_ * n_ - 1; }
  static constexpr ScalarMode mode() { return is_exact_v<S> ? ScalarMode::exact : ScalarMode::floating; }

  /// Basis order: off-diagonal units E_ij (i != j, row-major), then
  /// H_k = E_kk - E_{k+1,k+1} for k = 0..N-2.
  Matrix<S> basis_element(int b) const {
    Matrix<S> m = zeros<S>(n_, n_);
    const int off = n_ * (n_ - 1);
    if (b < off) {
      const auto [i, j] = offdiag_index(b);
      m(i, j) = ScalarOps<S>::from_int(1);
    } else {
      const int k = b - off;
      m(k, k) = ScalarOps<S>::from_int(1);
      m(k + 1, k + 1) = ScalarOps<S>::from_int(-1);
    }
    return m;
  }

  Vector<S> coords(const Matrix<S>& x) const {
    check_size(x);
    Vector<S> c(dimension());
    int b = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) c(b++) = x(i, j);
    S run = ScalarOps<S>::from_int(0);
    for (int k = 0; k < n_ - 1; ++k) {
      run += x(k, k);
      c(b++) = run;
    }
    return c;
  }

  Matrix<S> from_coords(const Vector<S>& c) const {
    if (c.size() != dimension()) throw AlgebraMismatch("coordinate vector has wrong length");
    Matrix<S> m = zeros<S>(n_, n_);
    int b = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) m(i, j) = c(b++);
    for (int k = 0; k < n_ - 1; ++k) {
      m(k, k) += c(b);
      m(k + 1, k + 1) -= c(b);
      ++b;
    }
    return m;
  }

  void check_size(const Matrix<S>& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw AlgebraMismatch("matrix size does not match sl_N");
  }

  friend bool operator==(const SlAlgebra& a, const SlAlgebra& b) { return a.n_ == b.n_; }

 private:
  std::pair<int, int> offdiag_index(int b) const {
    int i = b / (n_ - 1);
    int j = b % (n_ - 1);
    if (j >= i) ++j;
    return {i, j};
  }

  int n_;
};

/// A traceless N x N matrix. The trace check is exact in exact mode.
template <class S>
class LieElement {
 public:
  LieElement(SlAlgebra<S> alg, Matrix<S> entries, double tol = kFloatTol) : alg_(alg), m_(std::move(entries)) {
    alg_.check_size(m_);
    const S tr = trace(m_);
    if (!ScalarOps<S>::is_zero(tr, tol * std::max(1.0, max_abs(m_))))
      throw std::invalid_argument("Lie element must be traceless");
  }

  static LieElement zero(const SlAlgebra<S>& alg) { return LieElement(alg, zeros<S>(alg.n(), alg.n())); }

  const SlAlgebra<S>& algebra() const { return alg_; }
  const Matrix<S>& matrix() const { return m_; }
  int n() const { return alg_.n(); }

  LieElement operator+(const LieElement& o) const { return {alg_, Matrix<S>(m_ + same(o).m_)}; }
  LieElement operator-(const LieElement& o) const { return {alg_, Matrix<S>(m_ - same(o).m_)}; }
  LieElement scaled(const S& s) const { return {alg_, Matrix<S>(m_ * s)}; }
  LieElement conj() const { return {alg_, operlab::conj<S>(m_)}; }

  const LieElement& same(const LieElement& o) const {
    if (!(o.alg_ == alg_)) throw AlgebraMismatch("elements live in different sl_N");
    return o;
  }

 private:
  SlAlgebra<S> alg_;
  Matrix<S> m_;
};

template <class S>
LieElement<S> bracket(const LieElement<S>& x, const LieElement<S>& y) {
  x.same(y);
  return {x.algebra(), Matrix<S>(x.matrix() * y.matrix() - y.matrix() * x.matrix())};
}

/// ad(x)^power (y).
template <class S>
LieElement<S> ad_power(const LieElement<S>& x, LieElement<S> y, int power) {
  for (int p = 0; p < power; ++p) y = bracket(x, y);
  return y;
}

/// Killing form of sl_N in closed form 2N tr(xy).
template <class S>
S killing_form(const LieElement<S>& x, const LieElement<S>& y) {
  x.same(y);
  const Matrix<S> p = x.matrix() * y.matrix();
  return ScalarOps<S>::from_int(2 * x.n()) * trace<S>(p);
}

template <class S>
struct PrincipalTriple {
  LieElement<S> q_minus;
  LieElement<S> h;
  LieElement<S> q_plus;

  const SlAlgebra<S>& algebra() const { return h.algebra(); }
  int n() const { return h.n(); }
};

/// q_plus = sum E_{i,i+1}, h = diag(N-1, N-3, ..., 1-N), q_minus = sum i(N-i) E_{i+1,i}.
template <class S>
PrincipalTriple<S> principal_triple(int n) {
  if (n < 2) throw std::invalid_argument("principal_triple requires N >= 2");
  SlAlgebra<S> alg(n);
  Matrix<S> qp = zeros<S>(n, n), qm = zeros<S>(n, n), h = zeros<S>(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    qp(i, i + 1) = ScalarOps<S>::from_int(1);
    qm(i + 1, i) = ScalarOps<S>::from_int(static_cast<long>(i + 1) * (n - i - 1));
  }
  for (int i = 0; i < n; ++i) h(i, i) = ScalarOps<S>::from_int(n - 1 - 2 * i);
  return {LieElement<S>(alg, qm), LieElement<S>(alg, h), LieElement<S>(alg, qp)};
}

/// Components of x in the eigenspaces g_j of (1/2) ad(h); only nonzero
/// components are returned. Entry (i, k) has grade k - i.
template <class S>
std::map<int, LieElement<S>> grade(const LieElement<S>& x, const PrincipalTriple<S>& triple, double tol = 0.0) {
  triple.h.same(x);
  const int n = x.n();
  std::map<int, LieElement<S>> out;
  for (int j = -(n - 1); j <= n - 1; ++j) {
    Matrix<S> c = zeros<S>(n, n);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      const int k = i + j;
      if (k < 0 || k >= n) continue;
      c(i, k) = x.matrix()(i, k);
      any = any || !ScalarOps<S>::is_zero(c(i, k), tol);
    }
    if (any) out.emplace(j, LieElement<S>(x.algebra(), c));
  }
  return out;
}

/// Generator u_j of the kernel of ad(q_plus) on g_j, normalized so the first
/// nonzero entry (row-major) is 1. Empty when j is outside 1..N-1.
template <class S>
std::optional<LieElement<S>> invariants_basis(const PrincipalTriple<S>& triple, int j) {
  const int n = triple.n();
  if (j < 1 || j > n - 1) return std::nullopt;
  // g_j is spanned by E_{i,i+j}; ad(q_plus) maps it into g_{j+1}.
  const int dim_j = n - j;
  Matrix<S> map = zeros<S>(static_cast<Eigen::Index>(n) * n, dim_j);
  for (int a = 0; a < dim_j; ++a) {
    Matrix<S> e = zeros<S>(n, n);
    e(a, a + j) = ScalarOps<S>::from_int(1);
    const Matrix<S> img = triple.q_plus.matrix() * e - e * triple.q_plus.matrix();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) map(r * n + c, a) = img(r, c);
  }
  const double tol = is_exact_v<S> ? 0.0 : 1e-12;
  const Matrix<S> ker = linalg::nullspace_rref<S>(map, tol);
  if (ker.cols() != 1) throw std::logic_error("invariant space of ad(q_plus) on g_j is not one-dimensional");
  Matrix<S> u = zeros<S>(n, n);
  for (int a = 0; a < dim_j; ++a) u(a, a + j) = ker(a, 0);
  // first nonzero entry in row-major order
  S lead = ScalarOps<S>::from_int(0);
  for (int r = 0; r < n && ScalarOps<S>::is_zero(lead, tol); ++r)
    for (int c = 0; c < n; ++c)
      if (!ScalarOps<S>::is_zero(u(r, c), tol)) {
        lead = u(r, c);
        break;
      }
  u /= lead;
  return LieElement<S>(triple.algebra(), u);
}

/// <v, w>_j := kappa(ad(q_-)^j v, ad(q_-)^j conj(w)).
template <class S>
S graded_hermitian(const PrincipalTriple<S>& triple, int j, const LieElement<S>& v, const LieElement<S>& w) {
  return killing_form(ad_power(triple.q_minus, v, j), ad_power(triple.q_minus, w.conj(), j));
}

template <class S>
struct KillingIdentityResult {
  S value;     ///< kappa(ad(q_-)^l v_j, ad(q_-)^{l'} conj(v_{j'}))
  S expected;  ///< (-1)^{l-j} <v_j, v_j'>_j or 0
  bool pass = false;
  double residual = 0.0;
  double scale = 1.0;  ///< rounding scale: max(1, |expected|, 2N |A|_F |B|_F)
};

/// Same check with a = ad(q_-)^l v_j and b = ad(q_-)^{l'} conj(v_{j'}) already computed.
template <class S>
KillingIdentityResult<S> killing_identity_from_powers(const PrincipalTriple<S>& triple, int j, int l, int jp, int lp,
                                                      const LieElement<S>& vj, const LieElement<S>& vjp,
                                                      const LieElement<S>& a, const LieElement<S>& b,
                                                      double tol = 1e-12) {
  KillingIdentityResult<S> r;
  r.value = killing_form(a, b);
  if (j == jp && j + jp == l + lp) {
    const S base = graded_hermitian(triple, j, vj, vjp);
    r.expected = ((l - j) % 2 == 0) ? base : -base;
  } else {
    r.expected = ScalarOps<S>::from_int(0);
  }
  const S diff = r.value - r.expected;
  r.residual = ScalarOps<S>::magnitude(diff);
  const double cs = 2.0 * triple.n() * frobenius<S>(a.matrix()) * frobenius<S>(b.matrix());
  r.scale = std::max({1.0, ScalarOps<S>::magnitude(r.expected), cs});
  r.pass = ScalarOps<S>::is_zero(diff, tol * r.scale);
  return r;
}

/// Checks the Killing-form identity for invariant vectors under powers of ad(q_-).
template <class S>
KillingIdentityResult<S> killing_adpower_identity_check(const PrincipalTriple<S>& triple, int j, int l, int jp, int lp,
                                                       const LieElement<S>& vj, const LieElement<S>& vjp,
                                                       double tol = 1e-12) {
  return killing_identity_from_powers(triple, j, l, jp, lp, vj, vjp, ad_power(triple.q_minus, vj, l),
                                      ad_power(triple.q_minus, vjp.conj(), lp), tol);
}

template <class S>
void check_unimodular(const Matrix<S>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw NotUnimodular("expected a 2x2 matrix");
  const S det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const S diff = det - ScalarOps<S>::from_int(1);
  const double scale = std::max(1.0, max_abs<S>(m) * max_abs<S>(m));
  if (!ScalarOps<S>::is_zero(diff, kFloatTol * scale)) throw NotUnimodular("matrix is not unimodular");
}

/// Action P(x, y) -> P(ax + cy, bx + dy) on homogeneous polynomials of the
/// given degree, basis x^{degree-s} y^s (column s = image of the s-th monomial).
template <class S>
Matrix<S> sym_power(const Matrix<S>& m, int degree) {
  const S a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  Matrix<S> out = zeros<S>(degree + 1, degree + 1);
  // Polynomials stored by y-exponent.
  for (int s = 0; s <= degree; ++s) {
    std::vector<S> poly{ScalarOps<S>::from_int(1)};
    auto mul = [&](const S& cx, const S& cy) {
      std::vector<S> next(poly.size() + 1, ScalarOps<S>::from_int(0));
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k] * cx;
        next[k + 1] += poly[k] * cy;
      }
      poly = std::move(next);
    };
    for (int t = 0; t < degree - s; ++t) mul(a, c);
    for (int t = 0; t < s; ++t) mul(b, d);
    for (int k = 0; k <= degree; ++k) out(k, s) = poly[static_cast<std::size_t>(k)];
  }
  return out;
}

/// Matrix of the unimodular substitution action on V_{2j}.
template <class S>
Matrix<S> sym_action(const Matrix<S>& m, int j) {
  if (j < 0) throw std::invalid_argument("sym_action: weight index must be nonnegative");
  check_unimodular(m);
  return sym_power(m, 2 * j);
}

/// varsigma_j: x^{2j-s} y^s (x) u_j  ->  ((2j-s)!/(2j)!) ad(q_-)^s (u_j).
template <class S>
LieElement<S> varsigma(const PrincipalTriple<S>& triple, int j, const Vector<S>& poly, const LieElement<S>& u_j) {
  if (j < 1 || j > triple.n() - 1) throw std::invalid_argument("varsigma: j out of range for N");
  if (poly.size() != 2 * j + 1) throw std::invalid_argument("varsigma: module vector has wrong dimension");
  LieElement<S> acc = LieElement<S>::zero(triple.algebra());
  LieElement<S> power = u_j;
  // (2j-s)!/(2j)! = 1 / ((2j)(2j-1)...(2j-s+1))
  S coeff = ScalarOps<S>::from_int(1);
  for (int s = 0; s <= 2 * j; ++s) {
    if (s > 0) {
      power = bracket(triple.q_minus, power);
      coeff = coeff / ScalarOps<S>::from_int(2 * j - s + 1);
    }
    acc = acc + power.scaled(coeff * poly(s));
  }
  return acc;
}

/// Matrix (N^2-1 square) of the linear map varsigma_j in sl_N coordinates;
/// columns indexed by the monomial basis of V_{2j}.
template <class S>
Matrix<S> varsigma_matrix(const PrincipalTriple<S>& triple, int j, const LieElement<S>& u_j) {
  const auto& alg = triple.algebra();
  Matrix<S> out(alg.dimension(), 2 * j + 1);
  for (int s = 0; s <= 2 * j; ++s) {
    Vector<S> e = Vector<S>::Constant(2 * j + 1, ScalarOps<S>::from_int(0));
    e(s) = ScalarOps<S>::from_int(1);
    out.col(s) = alg.coords(varsigma(triple, j, e, u_j).matrix());
  }
  return out;
}

/// Principal embedding: the N-dimensional irreducible representation
/// D sym^{N-1}(m) D^{-1} with D = diag(0!, 1!, ..., (N-1)!), whose
/// differential sends e, f, h to q_plus, q_minus, h.
template <class S>
Matrix<S> iota_G(const Matrix<S>& m, int n) {
  check_unimodular(m);
  Matrix<S> rep = sym_power(m, n - 1);
  std::vector<S> fact(static_cast<std::size_t>(n));
  fact[0] = ScalarOps<S>::from_int(1);
  for (int i = 1; i < n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * ScalarOps<S>::from_int(i);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) rep(r, c) = rep(r, c) * fact[static_cast<std::size_t>(r)] / fact[static_cast<std::size_t>(c)];
  return rep;
}

/// Matrix of Ad(g) on sl_N coordinates.
template <class S>
Matrix<S> adjoint_matrix(const SlAlgebra<S>& alg, const Matrix<S>& g, const Matrix<S>& g_inv) {
  Matrix<S> out(alg.dimension(), alg.dimension());
  for (int b = 0; b < alg.dimension(); ++b) out.col(b) = alg.coords(Matrix<S>(g * alg.basis_element(b) * g_inv));
  return out;
}

/// Gram matrix of the Killing form in sl_N coordinates.
template <class S>
Matrix<S> killing_gram(const SlAlgebra<S>& alg) {
  const int d = alg.dimension();
  Matrix<S> out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Matrix<S> p = alg.basis_element(a) * alg.basis_element(b);
      out(a, b) = ScalarOps<S>::from_int(2 * alg.n()) * trace<S>(p);
    }
  return out;
}

/// Invariant symmetric form on V_{2j}, pulled back from the Killing form of
/// sl_{j+1} along varsigma_j.
Matrix<cplx> sym_invariant_form(int j);

/// <u_j, u_j>_j in sl_{j+1}, the constant that enters the analytic pairing.
double invariant_norm(int j);

}  // namespace operlab::lie
