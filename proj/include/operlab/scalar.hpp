#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace operlab {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Complex number with exact rational real and imaginary parts.
struct QComplex {
  mpq_class re{0};
  mpq_class im{0};

  QComplex() = default;
  QComplex(int v) : re(v) {}  // NOLINT: Eigen needs implicit construction from literals
  QComplex(long v) : re(v) {}  // NOLINT
  QComplex(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {  // NOLINT
    re.canonicalize();
    im.canonicalize();
  }

  static QComplex rational(long num, long den) { return QComplex(mpq_class(num, den)); }

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  QComplex& operator/=(const QComplex& o) {
    mpq_class den = o.re * o.re + o.im * o.im;
    if (den == 0) throw std::domain_error("QComplex: division by zero");
    mpq_class r = (re * o.re + im * o.im) / den;
    mpq_class i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return QComplex(-a.re, -a.im); }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  cplx to_cplx() const { return {re.get_d(), im.get_d()}; }
  QComplex conj() const { return QComplex(re, -im); }
  std::string str() const;
};

inline std::ostream& operator<<(std::ostream& os, const QComplex& q) { return os << q.str(); }

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, QComplex>;

/// Uniform scalar helpers so the algebra code can be written once for both modes.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<cplx> {
  static cplx from_int(long v) { return cplx(static_cast<double>(v), 0.0); }
  static cplx from_ratio(long p, long q) { return cplx(static_cast<double>(p) / static_cast<double>(q), 0.0); }
  static cplx to_cplx(const cplx& v) { return v; }
  static cplx from_cplx(const cplx& v) { return v; }
  static cplx conj(const cplx& v) { return std::conj(v); }
  static double magnitude(const cplx& v) { return std::abs(v); }
  static bool is_zero(const cplx& v, double tol) { return std::abs(v) <= tol; }
};

template <>
struct ScalarOps<double> {
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
  static cplx to_cplx(double v) { return {v, 0.0}; }
  static double from_cplx(const cplx& v) { return v.real(); }
  static double conj(double v) { return v; }
  static double magnitude(double v) { return std::abs(v); }
  static bool is_zero(double v, double tol) { return std::abs(v) <= tol; }
};

template <>
struct ScalarOps<QComplex> {
  static QComplex from_int(long v) { return QComplex(v); }
  static QComplex from_ratio(long p, long q) { return QComplex::rational(p, q); }
  static cplx to_cplx(const QComplex& v) { return v.to_cplx(); }
  static QComplex from_cplx(const cplx& v) { return QComplex(mpq_class(v.real()), mpq_class(v.imag())); }
  static QComplex conj(const QComplex& v) { return v.conj(); }
  static double magnitude(const QComplex& v) { return std::abs(v.to_cplx()); }
  static bool is_zero(const QComplex& v, double /*tol*/) { return v.is_zero(); }
};

template <class S>
Matrix<cplx> to_cplx(const Matrix<S>& m) {
  Matrix<cplx> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarOps<S>::to_cplx(m(i, j));
  return out;
}

template <class S>
Matrix<S> from_cplx(const Matrix<cplx>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarOps<S>::from_cplx(m(i, j));
  return out;
}

template <class S>
Matrix<S> identity(int n) {
  Matrix<S> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = ScalarOps<S>::from_int(i == j ? 1 : 0);
  return m;
}

template <class S>
Matrix<S> zeros(Eigen::Index r, Eigen::Index c) {
  Matrix<S> m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = ScalarOps<S>::from_int(0);
  return m;
}

template <class S>
S trace(const Matrix<S>& m) {
  S t = ScalarOps<S>::from_int(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Largest entry magnitude; zero matrices give 0.
template <class S>
double max_abs(const Matrix<S>& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, ScalarOps<S>::magnitude(m(i, j)));
  return r;
}

/// Frobenius norm in double precision.
template <class S>
double frobenius(const Matrix<S>& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double x = ScalarOps<S>::magnitude(m(i, j));
      r += x * x;
    }
  return std::sqrt(r);
}

template <class S>
bool is_zero_matrix(const Matrix<S>& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!ScalarOps<S>::is_zero(m(i, j), tol)) return false;
  return true;
}

template <class S>
Matrix<S> conj(const Matrix<S>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ScalarOps<S>::conj(m(i, j));
  return out;
}

}  // namespace operlab

namespace Eigen {
template <>
struct NumTraits<operlab::QComplex> : GenericNumTraits<operlab::QComplex> {
  using Real = operlab::QComplex;
  using NonInteger = operlab::QComplex;
  using Literal = operlab::QComplex;
  using Nested = operlab::QComplex;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 50,
    MulCost = 200
  };
  static inline Real epsilon() { return operlab::QComplex(0); }
  static inline Real dummy_precision() { return operlab::QComplex(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
